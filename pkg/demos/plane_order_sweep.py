"""
Sweeping projective plane orders
================================

Run every classical gate and every built-in certificate against the
plane parameters ``(n^2+n+1, n+1, 1)`` for ``n = 2..40``.
"""

from symdesign.feasibility import report_plane
from symdesign.verdict import Status

# one row per order: overall status and the check that decided it
print(f"{'n':>3}  {'status':<12}  deciding check")
for n in range(2, 41):
    r = report_plane(n)
    decisive = next((v for v in r.verdicts if v.failed), None)
    reason = f"{decisive.paper_tag}: {decisive.condition}" if decisive else "all checks pass"
    print(f"{n:>3}  {r.status.value:<12}  {reason}")

###############################################################################
# Obstructions from certificates are conditional: they hold only if the
# certificate's border pattern can be realized over a plane of that order.
print()
print(report_plane(10).summary().evidence["notes"][0])
assert report_plane(6).status is Status.FAIL
