"""
Searching for a border
======================

Look for a one-row border of the Fano plane with ``l = 8`` (so ``beta = 9``)
on a grid of small rationals, then assemble and check it.
"""

from symdesign.border import assemble, construct_search, eliminate, format_certificate
from symdesign.designs import DesignParams, pg2
from symdesign.exactmat import format_matrix, gram_check

params = DesignParams(7, 3, 1)
for bound in (1, 4, 24):
    spec = construct_search(params, l=8, d=1, s=1, bound=bound)
    print(f"height {bound:>2}:", "none" if spec is None else f"c = {spec.c[0]}, A22 = {spec.A22.row(0)}")

print(format_certificate(spec))
C = assemble(pg2(2), spec)
print(format_matrix(C))
print("C C^t = 2I + 9J:", gram_check(C, 2, 9))

t = eliminate(C, 2, 9, 1)
print(t.final_relation, {k: str(v) for k, v in t.witness.items()}, "holds:", t.holds)
print("defect", t.defect, "= row-space residual", t.row_space_residual)
