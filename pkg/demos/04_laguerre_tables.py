"""
Laguerre values, monotonicity of g and crossing tables
======================================================
"""

from latnum import bounds

# the recurrence L_{k+1} = 2 L_k - 2^k (k-1)/(k+1)! against direct summation
for row in bounds.laguerre_recurrence_audit(6):
    print(f"k={row.k}: direct {row.direct}, recurrence {row.stated}, difference {row.discrepancy}")

reps = bounds.g_monotonicity_check(60)
print("g(k+1) <= g(k) certified for k < 60:", all(r.holds for r in reps))

rep = bounds.asymptotic_report(60, 1)
print("first n with L_n(2) <= 2^n:", rep.first_crossing)
print("first n with n! kappa_n^2 L_n(2) / 2^n <= (pi+1)^n:", rep.first_gs_crossing)
for r in rep.rows[:12]:
    print(f"{r.n:3d}  {r.ratio_approx:.6f}  szego {r.szego_approx:.6f}  root {r.gs_root_approx:.4f}")

# the crosspolytope family: (n! vol / count)^(1/n) grows with l
for n in (2, 3, 4):
    s = bounds.crosspolytope_stats(n, 50)
    print(n, [float(x) for x in s.ratio_root])
