"""
A bordered matrix over PG(2,5)
==============================

Build the plane of order 5, border it to a 32 x 33 rational matrix with
Gram matrix ``5I + 9J``, and run the substitution procedure on it.
"""

from symdesign.border import assemble, catalog_entry, eliminate, format_trace
from symdesign.designs import incidence_check, pg2
from symdesign.exactmat import gram_check
from symdesign.feasibility import main_theorem_case

A = pg2(5)
print(incidence_check(A).condition, "->", incidence_check(A).status.value)

spec = catalog_entry("plane-5-d1").spec
C = assemble(A, spec)
print("C is", C.shape, "and C C^t = 5I + 9J:", gram_check(C, 5, 9))

# w = 32 = 0 mod 4 and d = 1, so beta must be a perfect square
print(main_theorem_case(32, 1, 5, 9).condition)

###############################################################################
# The substitution triangle.  Each pair identity y_i^2 = f_i^2 holds for the
# computed values, but f is not in the row space of C, and the final relation
# misses by exactly the squared distance of f from that row space.
t = eliminate(C, 5, 9, 1)
print("\n".join(format_trace(t).splitlines()[:20]))
print("defect == |f - (fM)C|^2:", t.defect == t.row_space_residual)
