"""
Lattice points, volumes and polars
==================================

Everything here is exact: coordinates are fractions, volumes are rationals.
"""

from latnum import count, hull, pick_identity, polar, volume
from latnum.bodies import cross, hexagon

# the hexagon with vertices +-e1, +-e2, +-(e1+e2)
H = hexagon()
print("vertices:", [tuple(map(str, v)) for v in H.vertices])
print("lattice points:", count(H))
print("area:", volume(H))

# Pick's formula: area = I + B/2 - 1
print(pick_identity(H))

# the polar of the hexagon is again a hexagon of area 3
Hp = polar(H)
print("polar vertices:", [tuple(map(str, v)) for v in Hp.vertices], "area", volume(Hp))

# a non-lattice body: counts still work, the boundary test is exact
tri = hull([("1/2", "1/3"), ("7/2", 0), (1, "5/2")])
print("rational triangle:", count(tri), "area", volume(tri))

# the stretched crosspolytope conv{+-l e1, +-e2, ..., +-en}
for l in (1, 2, 5):
    C = cross(3, l)
    print(f"l={l}: {count(C).total} points, volume {volume(C)}")
