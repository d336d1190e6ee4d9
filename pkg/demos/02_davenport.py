"""
Davenport's bound through Minkowski sums
========================================

vol(K + t_1[0,z_1] + ... + t_n[0,z_n]) is multilinear in t, and its
coefficients bound the lattice point count of K.
"""

from latnum import ParallelepipedSpec, count, davenport_bound_check, volume_polynomial
from latnum.bodies import cube, hexagon, lattice_box
from latnum.davenport import projection_coefficient

P = ParallelepipedSpec.unit_cell(2)
for name, K in [("hexagon", hexagon()), ("square", cube(2)), ("box 3x2", lattice_box((3, 2), (1, -4)))]:
    d = volume_polynomial(K, P)
    chk = davenport_bound_check(K, P, d)
    print(f"{name}: coefficients {dict((J, str(c)) for J, c in d.coefficients.items())}")
    print(f"   {chk.lhs} <= {chk.rhs}  equality={chk.equality}  predicted={chk.characterized}")

# for the unit cell each coefficient is the volume of a coordinate projection
H = hexagon()
print("c_{2} by projection:", projection_coefficient(H, [1]))

# a coarser parallelepiped gives a weaker bound
P2 = ParallelepipedSpec([[2, 1], [0, 2]])
print("hexagon, index-4 cell:", count(H).total, "<=", davenport_bound_check(H, P2).rhs)
