"""
Certificate catalog
===================

Scalar verification and the border-case verdict for every built-in
certificate.  The large certificates (up to 815 rows) are checked without
ever forming a matrix.
"""

import time

from symdesign.border import catalog
from symdesign.feasibility import certificate_verdict

start = time.perf_counter()
for cert in catalog():
    v = certificate_verdict(cert)
    ev = v.evidence
    case = ev.get("case_evidence", {})
    detail = case.get("ternary", {}).get("failing_symbols") or case.get("beta")
    print(f"{cert.name:<20} w={ev['w']:<4} d={ev['d']} alpha={ev['alpha']:<3} beta={ev['beta']:<4} "
          f"case {ev.get('case')}: {v.status.value:<23} {detail}")
print(f"{len(catalog())} certificates in {time.perf_counter() - start:.3f}s")
