"""Necessary conditions for symmetric designs, composed into reports.

Every verdict produced from a border certificate is conditional: it says what
must hold *if* the certificate's border pattern can be realized over a design
with those parameters.  Nothing here asserts that a design does not exist.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterable

from .border import Certificate, case_of, catalog, scalar_verify
from .designs import DesignParams, plane_params, validate_params
from .numtheory import (
    is_perfect_square,
    square_free_part,
    sum_two_squares,
    ternary_analysis,
    ternary_witness_search,
)
from .verdict import Status, Verdict

__all__ = [
    "schutzenberger",
    "brc",
    "bruck_ryser_plane",
    "main_theorem_case",
    "certificate_verdict",
    "Report",
    "report_params",
    "report_plane",
    "CONDITIONAL_NOTE",
]

CONDITIONAL_NOTE = (
    "border-case verdicts are conditional on the certificate's border pattern "
    "being realizable over a design with these parameters"
)


def _params(p: DesignParams | tuple[int, int, int]) -> DesignParams:
    return p if isinstance(p, DesignParams) else DesignParams(*p)


def schutzenberger(params: DesignParams | tuple[int, int, int]) -> Verdict:
    """For even ``v``, ``k - lambda`` must be a perfect square."""
    p = _params(params)
    ev = {"v": p.v, "n": p.n}
    if p.v % 2:
        return Verdict(Status.INAPPLICABLE, "v even implies k - lambda is a square (v is odd)", ev, "schutzenberger")
    ok = is_perfect_square(p.n)
    return Verdict(
        Status.PASS if ok else Status.FAIL,
        f"v = {p.v} even implies k - lambda = {p.n} is a perfect square",
        {**ev, "is_square": ok},
        "schutzenberger",
    )


def brc(params: DesignParams | tuple[int, int, int], oracle_bound: int | None = None) -> Verdict:
    """For odd ``v``, ``x^2 - n y^2 - (-1)^((v-1)/2) lambda z^2 = 0`` must have a nontrivial solution.

    With ``oracle_bound`` the decision is cross-checked against a brute-force
    search; any disagreement is reported in the evidence.
    """
    p = _params(params)
    if p.v % 2 == 0:
        return Verdict(Status.INAPPLICABLE, "odd-v ternary condition (v is even)", {"v": p.v}, "brc")
    sign = -1 if ((p.v - 1) // 2) % 2 else 1
    form = (1, -p.n, -sign * p.lam)
    an = ternary_analysis(form)
    ev: dict[str, Any] = an.as_dict()
    if oracle_bound is not None:
        wit = ternary_witness_search(form, oracle_bound)
        ev["oracle_bound"] = oracle_bound
        ev["oracle_witness"] = list(wit) if wit else None
        ev["oracle_disagrees"] = wit is not None and not an.solvable
    return Verdict(
        Status.PASS if an.solvable else Status.FAIL,
        f"{form[0]}*x^2 + {form[1]}*y^2 + {form[2]}*z^2 = 0 has a nontrivial integer solution",
        ev,
        "brc",
    )


def bruck_ryser_plane(n: int) -> Verdict:
    """A plane of order ``n = 1, 2 (mod 4)`` needs ``n`` to be a sum of two squares."""
    if n < 2:
        raise ValueError(f"plane order must be >= 2, got {n}")
    ev: dict[str, Any] = {"n": n, "n_mod_4": n % 4}
    if n % 4 not in (1, 2):
        return Verdict(Status.PASS, f"n = {n} is 0 or 3 mod 4, so no two-squares requirement", ev, "bruck-ryser")
    ab = sum_two_squares(n)
    ev["two_squares"] = list(ab) if ab else None
    ev["square_free_part"] = square_free_part(n)
    return Verdict(
        Status.PASS if ab else Status.FAIL,
        f"n = {n} is 1 or 2 mod 4, so n must be a sum of two squares",
        ev,
        "bruck-ryser",
    )


def main_theorem_case(w: int, d: int, alpha: int, beta: int) -> Verdict:
    """Condition forced on ``(alpha, beta)`` by a ``w x (w+d)`` rational ``C`` with ``C C^t = alpha I + beta J``.

    ==========  ===================================  ======================
    w mod 4, d  condition                            needs alpha = a^2+b^2
    ==========  ===================================  ======================
    0, 1        beta is a square                     no
    0, 2        beta is a sum of two squares         no
    2, 1        beta is a square                     yes
    2, 2        beta is a sum of two squares         yes
    1, 1        alpha* = beta*                       yes
    1, 2        x^2 - beta y^2 + alpha z^2 = 0       yes
    3, 1        alpha* = beta*                       no
    3, 2        x^2 - beta y^2 + alpha z^2 = 0       no
    ==========  ===================================  ======================
    """
    if alpha < 1 or beta < 1:
        raise ValueError(f"alpha and beta must be positive, got {alpha}, {beta}")
    case = case_of(w, d)
    tag = f"border-case-{case}"
    ev: dict[str, Any] = {"case": case, "w_mod_4": w % 4, "d": d, "alpha": alpha, "beta": beta}
    if case in (3, 4, 5, 6):
        ab = sum_two_squares(alpha)
        ev["alpha_two_squares"] = list(ab) if ab else None
        if ab is None:
            return Verdict(
                Status.INAPPLICABLE,
                f"case {case} needs alpha = {alpha} to be a sum of two squares",
                ev,
                tag,
            )
    if case in (1, 3):
        ok = is_perfect_square(beta)
        ev["beta_is_square"] = ok
        cond = f"beta = {beta} is a perfect square"
    elif case in (2, 4):
        bb = sum_two_squares(beta)
        ev["beta_two_squares"] = list(bb) if bb else None
        ok = bb is not None
        cond = f"beta = {beta} is a sum of two squares"
    elif case in (5, 7):
        a_s, b_s = square_free_part(alpha), square_free_part(beta)
        ev["alpha_star"], ev["beta_star"] = a_s, b_s
        ok = a_s == b_s
        cond = f"alpha* = beta* (alpha = {alpha}, beta = {beta})"
    else:
        an = ternary_analysis((1, -beta, alpha))
        ev["ternary"] = an.as_dict()
        ok = an.solvable
        cond = f"x^2 - {beta}*y^2 + {alpha}*z^2 = 0 has a nontrivial integer solution"
    return Verdict(Status.PASS if ok else Status.FAIL, cond, ev, tag)


def certificate_verdict(cert: Certificate) -> Verdict:
    """Combine scalar verification of a certificate with its border-case condition."""
    spec = cert.spec
    sv = scalar_verify(spec)
    P = spec.params
    subject = f"certificate {cert.name} over a {P} design"
    ev: dict[str, Any] = {
        "certificate": cert.name,
        "provenance": cert.provenance,
        "params": [P.v, P.k, P.lam],
        "w": spec.w,
        "d": spec.d,
        "alpha": spec.alpha,
        "beta": spec.beta,
    }
    if sv.status is not Status.PASS:
        ev["scalar_failures"] = sv.evidence["failures"]
        return Verdict(Status.INVALID, f"{subject}: border identities fail", ev, "border-scalar")
    mt = main_theorem_case(spec.w, spec.d, spec.alpha, spec.beta)
    ev["case"] = mt.evidence["case"]
    ev["case_evidence"] = mt.evidence
    ev["conditional"] = CONDITIONAL_NOTE
    if mt.status is Status.FAIL:
        status = Status.OBSTRUCTION
        cond = (f"{subject}: obstruction, {mt.condition} fails "
                "(conditional on border realizability)")
    elif mt.status is Status.PASS:
        status = Status.CONSISTENT
        cond = f"{subject}: consistent, {mt.condition}"
    else:
        status = Status.INAPPLICABLE
        cond = f"{subject}: {mt.condition}"
    return Verdict(status, cond, ev, mt.paper_tag)


# reports


@dataclass(frozen=True)
class Report:
    subject: str
    verdicts: tuple[Verdict, ...]
    notes: tuple[str, ...] = field(default=())

    @property
    def status(self) -> Status:
        st = [v.status for v in self.verdicts]
        if Status.FAIL in st or Status.INVALID in st:
            return Status.FAIL
        if Status.OBSTRUCTION in st:
            return Status.OBSTRUCTION
        return Status.PASS

    @property
    def exit_code(self) -> int:
        return self.status.exit_code

    def summary(self) -> Verdict:
        return Verdict(
            self.status,
            f"summary for {self.subject}",
            {"checks": len(self.verdicts), "notes": list(self.notes)},
            "report",
        )

    def records(self) -> list[dict[str, Any]]:
        return [v.as_dict() for v in self.verdicts] + [self.summary().as_dict()]

    def to_json_lines(self) -> str:
        return "".join(dumps_record(r) + "\n" for r in self.records())

    def to_text(self) -> str:
        return format_verdicts([*self.verdicts, self.summary()])


def _jsonable(x: Any) -> Any:
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, Status):
        return x.value
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


def dumps_record(record: dict[str, Any]) -> str:
    """One JSON object, keys in the order status, condition, evidence, paper_tag."""
    ordered = {k: _jsonable(record.get(k)) for k in ("status", "condition", "evidence", "paper_tag")}
    return json.dumps(ordered, ensure_ascii=False)


def _flatten(prefix: str, x: Any) -> Iterable[str]:
    if isinstance(x, dict):
        for k, v in x.items():
            yield from _flatten(f"{prefix}.{k}" if prefix else str(k), v)
    else:
        yield f"{prefix} = {json.dumps(_jsonable(x), ensure_ascii=False)}"


def format_verdicts(verdicts: Iterable[Verdict]) -> str:
    out = []
    for v in verdicts:
        out.append(f"[{v.status.value}] {v.paper_tag}: {v.condition}")
        out.extend(f"    {line}" for line in _flatten("", v.evidence))
    return "\n".join(out) + "\n"


def _catalog_for(p: DesignParams) -> list[Certificate]:
    return [c for c in catalog() if c.spec.params == p]


def report_params(v: int, k: int, lam: int, oracle_bound: int | None = None) -> Report:
    """Parameter relations, Schutzenberger, BRC, then any matching catalog certificates."""
    vp = validate_params(v, k, lam)
    if vp.status is not Status.PASS:
        return Report(f"({v},{k},{lam})", (vp,))
    p = DesignParams(v, k, lam)
    classical = [vp, schutzenberger(p), brc(p, oracle_bound)]
    return _compose(str(p), p, classical)


def report_plane(n: int, oracle_bound: int | None = None) -> Report:
    """As :func:`report_params` for ``(n^2+n+1, n+1, 1)``, plus the plane form of Bruck-Ryser."""
    p = plane_params(n)
    classical = [validate_params(p.v, p.k, p.lam), schutzenberger(p), bruck_ryser_plane(n), brc(p, oracle_bound)]
    return _compose(f"projective plane of order {n} {p}", p, classical)


def _compose(subject: str, p: DesignParams, classical: list[Verdict]) -> Report:
    if any(v.failed for v in classical):
        return Report(subject, tuple(classical), ("certificates not consulted: a classical condition fails",))
    certs = [certificate_verdict(c) for c in _catalog_for(p)]
    notes = (CONDITIONAL_NOTE,) if certs else ()
    return Report(subject, tuple(classical + certs), notes)
