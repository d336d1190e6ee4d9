"""
Checking the inequality battery
===============================

Each check returns a report with exact sides; products with powers of pi
are compared through certified enclosures of pi.
"""

from latnum import bounds
from latnum.bodies import cross, cube, diamond, hexagon

for name, K in [("hexagon", hexagon()), ("square", cube(2)), ("diamond", diamond(2)), ("C(3,2)", cross(3, 2))]:
    reports, skipped = bounds.run_suite(K)
    print(name)
    for r in reports:
        mark = "=" if r.equality else "<"
        print(f"   {r.name:15s} {r.lhs} {mark}= {r.rhs}")
    for check, why in skipped:
        print(f"   {check:15s} skipped: {why}")

# the constant n! L_n(2) / 2^n and the Gillet-Soule type ratio
for n in range(1, 6):
    print(n, bounds.laguerre_at_2(n), bounds.symmetric_blichfeldt_constant(n))
print("gs ratios:", bounds.gs_ratio(hexagon()), bounds.gs_ratio(cube(2)), bounds.gs_ratio(diamond(2)))
