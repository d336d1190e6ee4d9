"""
Searching symmetric lattice polytopes
=====================================

Classes up to unimodular equivalence with a representative in [-B, B]^n,
ranked by #(K cap Z^n) vol(K*).  The dimension-3 run takes about half a
minute and can be interrupted: the checkpoint file lets it resume.
"""

import sys

from latnum import classify

res = classify.maximize_gs_product(2, 2)
print(f"dim 2, B=2: {len(res.ranking)} classes")
for r in res.ranking[:5]:
    print(f"   {str(r.value):6s} {r.name or r.form.hash}")

names = sorted(classify.class_name(r.form) for r in classify.enumerate_cs_polytopes(2, 1, 1))
print("one interior point:", names)

if "--dim3" in sys.argv:
    res = classify.maximize_gs_product(3, 1, checkpoint_path="dim3-search.json")
    print(f"dim 3, B=1: {len(res.ranking)} classes, top {res.ranking[0].value} ({res.ranking[0].name})")
