"""Command-line interface.

Exit codes: 0 pass / consistent / inapplicable, 1 fail / obstruction /
invalid certificate, 2 usage or input error.  ``--format json`` prints one
JSON object per line with keys ``status, condition, evidence, paper_tag``.
"""

from __future__ import annotations

import argparse
import sys
from typing import Sequence, TextIO

from . import border, designs, exactmat, feasibility, numtheory
from .exactmat import format_rat
from .feasibility import Report, dumps_record, format_verdicts
from .verdict import Status, Verdict


class _Out:
    def __init__(self, fmt: str, stream: TextIO):
        self.fmt = fmt
        self.stream = stream

    def verdicts(self, vs: Sequence[Verdict]) -> int:
        if self.fmt == "json":
            for v in vs:
                self.stream.write(dumps_record(v.as_dict()) + "\n")
        else:
            self.stream.write(format_verdicts(vs))
        return max((v.status.exit_code for v in vs), default=0)

    def report(self, r: Report) -> int:
        self.stream.write(r.to_json_lines() if self.fmt == "json" else r.to_text())
        return r.exit_code


def _design_file(path: str, v: int, k: int, lam: int) -> designs.IncidenceMatrix:
    return designs.IncidenceMatrix(exactmat.read_matrix(path), designs.DesignParams(v, k, lam))


def _trace_evidence(t: border.EliminationTrace) -> dict:
    return {
        "case": t.case_id,
        "w": t.w,
        "d": t.d,
        "alpha": t.alpha,
        "beta": t.beta,
        "bracketing": t.bracketing,
        "block": list(t.block),
        "final_relation": t.final_relation,
        "free_values": [format_rat(x) for x in t.free_values],
        "attempts": t.attempts,
        "witness": {k: format_rat(v) for k, v in t.witness.items()},
        "lhs": format_rat(t.lhs),
        "rhs": format_rat(t.rhs),
        "holds": t.holds,
        "defect": format_rat(t.defect),
        "row_space_residual": format_rat(t.row_space_residual),
        "pairs_match": t.pairs_match,
        "replay_ok": t.replay(),
        "degenerate_beta": t.degenerate_beta,
        "renumberings": list(t.renumberings),
        "triangle": [[[j, format_rat(c)] for j, c in row] for row in t.triangle],
        "self_coefficients": [format_rat(b) for b in t.self_coefficients],
        "signs": list(t.signs),
        "variables": [format_rat(x) for x in t.variables],
        "x": [format_rat(x) for x in t.x],
        "notes": list(t.notes),
    }


def _cmd_params(a, out: _Out) -> int:
    return out.report(feasibility.report_params(a.v, a.k, a.lam, a.bound))


def _cmd_plane(a, out: _Out) -> int:
    return out.report(feasibility.report_plane(a.n, a.bound))


def _cmd_brc(a, out: _Out) -> int:
    return out.verdicts([feasibility.brc((a.v, a.k, a.lam), a.bound)])


def _cmd_schutz(a, out: _Out) -> int:
    return out.verdicts([feasibility.schutzenberger((a.v, a.k, a.lam))])


def _cmd_pg2(a, out: _Out) -> int:
    A = designs.pg2(a.q)
    p = A.params
    text = exactmat.format_matrix(A.matrix, f"PG(2,{a.q}) incidence matrix, design {p}")
    if a.out:
        with open(a.out, "w", encoding="utf-8") as fh:
            fh.write(text)
        return out.verdicts([designs.incidence_check(A)])
    out.stream.write(text)
    return 0


def _cmd_verify_incidence(a, out: _Out) -> int:
    return out.verdicts([designs.incidence_check(_design_file(a.file, a.v, a.k, a.lam))])


def _cmd_ryser_border(a, out: _Out) -> int:
    return out.verdicts([designs.ryser_classical_border(_design_file(a.file, a.v, a.k, a.lam))])


def _cmd_cert_verify(a, out: _Out) -> int:
    cert = border.read_certificate(a.file)
    return out.verdicts([feasibility.certificate_verdict(cert)])


def _cmd_cert_catalog(a, out: _Out) -> int:
    certs = [border.catalog_entry(a.name)] if a.name else border.catalog()
    return out.verdicts([feasibility.certificate_verdict(c) for c in certs])


def _cmd_assemble(a, out: _Out) -> int:
    cert = border.read_certificate(a.certfile)
    P = cert.spec.params
    A = _design_file(a.designfile, P.v, P.k, P.lam)
    C = border.assemble(A, cert.spec)
    exactmat.write_matrix(
        a.out, C, f"bordered matrix of {P}, alpha {cert.spec.alpha}, beta {cert.spec.beta}, d {cert.spec.d}"
    )
    ok = exactmat.gram_check(C, cert.spec.alpha, cert.spec.beta)
    return out.verdicts([Verdict(
        Status.PASS if ok else Status.FAIL,
        f"C C^t = {cert.spec.alpha}I + {cert.spec.beta}J for the assembled {C.nrows}x{C.ncols} matrix",
        {"rows": C.nrows, "cols": C.ncols, "out": a.out},
        "gram",
    )])


def _cmd_eliminate(a, out: _Out) -> int:
    C = exactmat.read_matrix(a.file)
    try:
        t = border.eliminate(C, a.alpha, a.beta, a.d)
    except border.EliminationInapplicableError as e:
        return out.verdicts([Verdict(Status.INAPPLICABLE, str(e), {}, "elimination")])
    if out.fmt == "text":
        out.stream.write(border.format_trace(t))
        return 0 if t.holds else 1
    return out.verdicts([Verdict(
        Status.PASS if t.holds else Status.FAIL,
        f"elimination witness satisfies {t.final_relation}",
        _trace_evidence(t),
        f"border-case-{t.case_id}",
    )])


def _cmd_construct(a, out: _Out) -> int:
    params = designs.DesignParams(a.v, a.k, a.lam)
    spec = border.construct_search(params, a.l, a.d, a.s, a.bound)
    if spec is None:
        return out.verdicts([Verdict(
            Status.FAIL,
            f"no border for {params} with l = {a.l}, d = {a.d}, s = {a.s} within height {a.bound}",
            {"bound": a.bound},
            "construct",
        )])
    cert = border.Certificate(f"constructed-{a.v}-{a.k}-{a.lam}-l{a.l}-d{a.d}-s{a.s}", spec)
    text = border.format_certificate(cert)
    if a.out:
        with open(a.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    elif out.fmt == "text":
        out.stream.write(text)
    v = feasibility.certificate_verdict(cert)
    out.verdicts([Verdict(v.status, v.condition, {**v.evidence, "certificate_text": text}, v.paper_tag)])
    return 0


def _cmd_oracle_ternary(a, out: _Out) -> int:
    form = numtheory.TernaryForm(a.A, a.B, a.C)
    wit = numtheory.ternary_witness_search(form, a.bound)
    an = numtheory.ternary_analysis(form)
    return out.verdicts([Verdict(
        Status.PASS if wit else Status.FAIL,
        f"{form} has a nonzero solution with |x|, |y|, |z| <= {a.bound}",
        {"witness": list(wit) if wit else None, "criterion": an.as_dict(),
         "agrees": wit is None or an.solvable},
        "oracle",
    )])


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    ap = argparse.ArgumentParser(prog="symdesign", description="Feasibility checks for symmetric designs.")
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name: str, fn, help: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, parents=[common], help=help)
        p.set_defaults(fn=fn)
        return p

    def vkl(p):
        p.add_argument("v", type=int)
        p.add_argument("k", type=int)
        p.add_argument("lam", metavar="lambda", type=int)

    p = add("params", _cmd_params, "full report for (v, k, lambda)")
    vkl(p)
    p.add_argument("--bound", type=int, default=None, help="cross-check BRC with a brute-force search")
    p = add("plane", _cmd_plane, "full report for a projective plane of order n")
    p.add_argument("n", type=int)
    p.add_argument("--bound", type=int, default=None)
    p = add("brc", _cmd_brc, "odd-v ternary condition")
    vkl(p)
    p.add_argument("--bound", type=int, default=None)
    vkl(add("schutz", _cmd_schutz, "even-v square condition"))
    p = add("pg2", _cmd_pg2, "incidence matrix of PG(2, q), q prime")
    p.add_argument("q", type=int)
    p.add_argument("--out")
    p = add("verify-incidence", _cmd_verify_incidence, "check A A^t = lambda J + n I")
    p.add_argument("file")
    vkl(p)
    p = add("ryser-border", _cmd_ryser_border, "check the order v+1 border identity")
    p.add_argument("file")
    vkl(p)
    p = add("cert-verify", _cmd_cert_verify, "verify a certificate file")
    p.add_argument("file")
    p = add("cert-catalog", _cmd_cert_catalog, "verdicts for built-in certificates")
    p.add_argument("name", nargs="?")
    p = add("assemble", _cmd_assemble, "assemble a bordered matrix")
    p.add_argument("designfile")
    p.add_argument("certfile")
    p.add_argument("--out", required=True)
    p = add("eliminate", _cmd_eliminate, "run the substitution procedure on a matrix")
    p.add_argument("file")
    p.add_argument("--alpha", type=int, required=True)
    p.add_argument("--beta", type=int, required=True)
    p.add_argument("--d", type=int, choices=(1, 2), required=True)
    p = add("construct", _cmd_construct, "search for a border")
    vkl(p)
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--d", type=int, choices=(1, 2), required=True)
    p.add_argument("--s", type=int, choices=(1, 2), default=1)
    p.add_argument("--bound", type=int, required=True)
    p.add_argument("--out")
    p = add("oracle-ternary", _cmd_oracle_ternary, "brute-force search for Ax^2 + By^2 + Cz^2 = 0")
    for name in ("A", "B", "C"):
        p.add_argument(name, type=int)
    p.add_argument("--bound", type=int, required=True)
    return ap


def run(argv: Sequence[str] | None = None, stdout: TextIO | None = None, stderr: TextIO | None = None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as e:
        return 0 if e.code == 0 else 2
    try:
        return args.fn(args, _Out(args.format, stdout))
    except (OSError, ValueError, KeyError, RuntimeError) as e:
        stderr.write(f"error: {e}\n")
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
