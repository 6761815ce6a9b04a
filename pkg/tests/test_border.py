from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from symdesign import border
from symdesign.border import (
    BorderSpec,
    CertificateParseError,
    DegenerateEliminationError,
    EliminationInapplicableError,
    InvalidSpecError,
    assemble,
    case_of,
    catalog,
    catalog_entry,
    construct_search,
    eliminate,
    format_certificate,
    format_trace,
    parse_certificate,
    rational_grid,
    scalar_verify,
)
from symdesign.designs import DesignParams
from symdesign.exactmat import RatMatrix, gram_check
from symdesign.verdict import Status

from conftest import rationals

F = Fraction

# (name, v, k, lambda, alpha, beta, w, d); alpha/beta as printed with each certificate
CATALOG_TABLE = [
    ("order-10", 111, 11, 1, 10, 101, 112, 1),
    ("order-12", 157, 13, 1, 12, 5, 159, 2),
    ("order-15", 241, 16, 1, 15, 50, 243, 2),
    ("order-18", 343, 19, 1, 18, 37, 344, 1),
    ("order-20", 421, 21, 1, 20, 65, 423, 2),
    ("order-24", 601, 25, 1, 24, 2, 603, 2),
    ("order-26", 703, 27, 1, 26, 10, 704, 1),
    ("order-28", 813, 29, 1, 28, 6, 815, 2),
    ("(49,16,5)", 49, 16, 5, 11, 6, 51, 2),
    ("(154,18,2)", 154, 18, 2, 16, 3, 155, 2),
    ("(115,19,3)", 115, 19, 3, 16, 12, 116, 1),
    ("plane-5-d1", 31, 6, 1, 5, 9, 32, 1),
    ("plane-5-d2", 31, 6, 1, 5, 2, 32, 2),
    ("design-45-12-3-d1", 45, 12, 3, 9, 4, 46, 1),
    ("design-45-12-3-d2", 45, 12, 3, 9, 5, 46, 2),
    ("design-36-15-6-d1", 36, 15, 6, 9, 16, 37, 1),
    ("design-36-15-6-d2", 36, 15, 6, 9, 10, 37, 2),
    ("plane-7-d1", 57, 8, 1, 7, 7, 59, 1),
    ("plane-7-d2", 57, 8, 1, 7, 2, 59, 2),
]


def synthetic(w, d, a, b, c=0):
    """Rows a*e_i + b*e_{w+1} (+ c*e_{w+2}): Gram a^2 I + (b^2 + c^2) J."""
    rows = []
    for i in range(w):
        r = [0] * (w + d)
        r[i] = a
        r[w] = b
        if d == 2:
            r[w + 1] = c
        rows.append(r)
    return RatMatrix(rows)


@pytest.mark.parametrize("row", CATALOG_TABLE, ids=[r[0] for r in CATALOG_TABLE])
def test_catalog_scalar_verify(row):
    name, v, k, lam, alpha, beta, w, d = row
    cert = catalog_entry(name)
    spec = cert.spec
    assert spec.params == DesignParams(v, k, lam)
    assert (spec.alpha, spec.beta, spec.w, spec.d) == (alpha, beta, w, d)
    verdict = scalar_verify(spec)
    assert verdict.status is Status.PASS, verdict.evidence["failures"]
    assert case_of(w, d) == cert.expected_case


def test_catalog_contents():
    names = [c.name for c in catalog()]
    assert names == [r[0] for r in CATALOG_TABLE]
    assert catalog_entry("order-12").spec.A23 == RatMatrix([[F(669, 313), F(669, 313)], [0, 0]])
    assert catalog_entry("order-28").spec.a == (1, 2, 0, 0)
    assert catalog_entry("(49,16,5)").spec.c == (F(1, 3), F(154, 425))
    with pytest.raises(KeyError):
        catalog_entry("order-11")


@pytest.mark.parametrize(
    "name, q, shape, alpha, beta",
    [
        ("plane-5-d1", 5, (32, 33), 5, 9),
        ("plane-5-d2", 5, (32, 34), 5, 2),
        ("plane-7-d1", 7, (59, 60), 7, 7),
        ("plane-7-d2", 7, (59, 61), 7, 2),
    ],
)
def test_assemble_examples(pg2_cache, name, q, shape, alpha, beta):
    C = assemble(pg2_cache(q), catalog_entry(name).spec)
    assert C.shape == shape
    assert gram_check(C, alpha, beta)


def test_assemble_layout(pg2_cache):
    spec = catalog_entry("plane-5-d1").spec
    C = assemble(pg2_cache(5), spec)
    assert C.row(0)[31:] == (2, 2)
    assert C.row(31) == (F(1, 12),) * 31 + (F(7, 12), F(11, 3))


def test_assemble_mismatch(pg2_cache):
    with pytest.raises(InvalidSpecError):
        assemble(pg2_cache(2), catalog_entry("plane-5-d1").spec)


def test_spec_shape_validation():
    with pytest.raises(InvalidSpecError):
        BorderSpec(DesignParams(7, 3, 1), 8, 1, 1, (2, 2), 0, (1, 2), RatMatrix([[1, 1]]), RatMatrix([[]]))
    with pytest.raises(InvalidSpecError):
        BorderSpec(DesignParams(7, 3, 1), 8, 1, 1, (2, 2), 0, (1,), RatMatrix([[1, 1, 1]]), RatMatrix([[]]))


def test_scalar_verify_perturbed_corner():
    spec = catalog_entry("plane-5-d1").spec
    bad = BorderSpec(spec.params, spec.l, spec.d, spec.s, spec.a, 0, spec.c,
                     RatMatrix([[1, F(11, 3)]]), spec.A23)
    v = scalar_verify(bad)
    assert v.status is Status.FAIL
    assert v.evidence["failures"][0]["equation"] == "E3"


def test_scalar_verify_constant_column():
    # column equal to its border constant: a = (1, 0), A22 = (1, ...) would be constant
    spec = BorderSpec(DesignParams(13, 4, 1), 1, 1, 1, (0, 1), 0, (0,), RatMatrix([[0, F(3, 1)]]), RatMatrix([[]]))
    v = scalar_verify(spec)
    assert {"equation": "no constant column", "columns": [13]} in v.evidence["failures"]


def test_scalar_verify_reported_values():
    v = scalar_verify(catalog_entry("order-10").spec)
    assert (v.evidence["alpha"], v.evidence["beta"]) == (10, 101)
    v = scalar_verify(catalog_entry("(115,19,3)").spec)
    assert (v.evidence["alpha"], v.evidence["beta"]) == (16, 12)


def _perturb(spec, which, delta):
    c = list(spec.c)
    A22 = spec.A22.tolist()
    if which == 0:
        c[0] += delta
    else:
        A22[0][(which - 1) % spec.p] += delta
    return BorderSpec(spec.params, spec.l, spec.d, spec.s, spec.a, spec.zero_cols, tuple(c),
                      RatMatrix(A22), spec.A23)


def _identities_hold(spec):
    fails = scalar_verify(spec).evidence["failures"]
    return not [f for f in fails if f["equation"] != "no constant column"]


@given(st.sampled_from(["plane-5-d1", "plane-5-d2"]), st.integers(0, 3), rationals)
@settings(max_examples=40, deadline=None)
def test_scalar_verify_iff_gram(pg2_cache, name, which, delta):
    spec = _perturb(catalog_entry(name).spec, which, delta)
    C = assemble(pg2_cache(5), spec)
    assert _identities_hold(spec) == gram_check(C, spec.alpha, spec.beta)


def test_rational_grid():
    assert rational_grid(1) == [0, 1, -1]
    g = rational_grid(3)
    assert g[:7] == [0, 1, -1, 2, -2, F(1, 2), F(-1, 2)]
    assert len(set(g)) == len(g)
    assert F(2, 3) in g and F(4, 3) not in g


def test_construct_fano():
    spec = construct_search(DesignParams(7, 3, 1), 8, 1, 1, 24)
    assert spec is not None
    assert spec.beta == 9
    assert scalar_verify(spec).status is Status.PASS
    # frozen: first hit in scan order
    assert spec.c == (F(3, 5),)
    assert spec.A22 == RatMatrix([[F(4, 5), F(14, 5)]])


def test_construct_recovers_plane5_border():
    spec = construct_search(DesignParams(31, 6, 1), 8, 1, 1, 16)
    assert spec is not None and scalar_verify(spec).status is Status.PASS
    assert spec == catalog_entry("plane-5-d1").spec


def test_construct_coarse_grid_finds_nothing():
    assert construct_search(DesignParams(7, 3, 1), 8, 1, 1, 1) is None


def test_construct_rejects_bad_l():
    with pytest.raises(ValueError):
        construct_search(DesignParams(7, 3, 1), 3, 1, 1, 5)


@pytest.mark.parametrize("args", [(1, 1, 1, 10), (1, 2, 1, 6), (1, 1, 2, 6), (1, 2, 2, 4)])
def test_construct_outputs_verify(pg2_cache, args):
    l, d, s, bound = args
    spec = construct_search(DesignParams(7, 3, 1), l, d, s, bound)
    assert spec is not None
    assert scalar_verify(spec).status is Status.PASS
    assert gram_check(assemble(pg2_cache(2), spec), spec.alpha, spec.beta)


def test_construct_respects_case_condition():
    # w = 8, d = 1 forces beta to be a square; beta = 1 + 4 = 5 is not
    assert construct_search(DesignParams(7, 3, 1), 4, 1, 1, 8) is None


def test_case_of():
    assert [case_of(w, d) for w in (4, 6, 5, 7) for d in (1, 2)] == [1, 2, 3, 4, 5, 6, 7, 8]
    with pytest.raises(ValueError):
        case_of(4, 3)


def _check_trace(t, C):
    assert t.pairs_match
    assert t.replay()
    assert t.defect == t.row_space_residual
    assert not t.degenerate
    # witness values agree with the recorded vectors
    assert t.witness["z"] == sum(t.x)
    f = list(t.f)
    proj = [sum(t.x[i] * C[i, j] for i in range(C.nrows)) for j in range(C.ncols)]
    assert t.row_space_residual == sum((a - b) ** 2 for a, b in zip(f, proj))


def test_eliminate_plane5(plane5_border):
    t = eliminate(plane5_border, 5, 9, 1)
    assert t.case_id == 1
    assert t.bracketing == "x-side four-square blocks"
    assert t.block == (0, 0, 1, 2)
    assert t.final_relation == "f33^2 = 9*z^2"
    assert t.witness["f33"] == 1 and t.witness["z"] != 0
    _check_trace(t, plane5_border)


def test_eliminate_plane5_defect_is_row_space_distance(plane5_border):
    # the f produced by the triangle leaves the row space of C, and the
    # final relation misses by exactly that squared distance
    t = eliminate(plane5_border, 5, 9, 1)
    assert t.witness["z"] == F(-10302819872, 585929699261)
    assert t.defect == F(342358279600252001078665, 343313612476085903946121)
    assert not t.holds


@pytest.mark.parametrize(
    "name, q, case",
    [("plane-5-d2", 5, 2), ("plane-7-d1", 7, 7), ("plane-7-d2", 7, 8)],
)
def test_eliminate_examples(pg2_cache, name, q, case):
    spec = catalog_entry(name).spec
    C = assemble(pg2_cache(q), spec)
    t = eliminate(C, spec.alpha, spec.beta, spec.d)
    assert t.case_id == case
    _check_trace(t, C)


def test_eliminate_fano_cases_5_and_6(pg2_cache):
    for d, bound in ((1, 6), (2, 4)):
        spec = construct_search(DesignParams(7, 3, 1), 1, d, 2, bound)
        C = assemble(pg2_cache(2), spec)
        t = eliminate(C, spec.alpha, spec.beta, d)
        assert t.case_id == 4 + d
        assert t.bracketing == "f-side two-square blocks"
        _check_trace(t, C)


@pytest.mark.parametrize("w", [4, 5, 6, 7, 8, 9, 10, 11])
@pytest.mark.parametrize("d", [1, 2])
def test_eliminate_synthetic(w, d):
    a, b, c = 2, 3, 4
    C = synthetic(w, d, a, b, c)
    alpha, beta = a * a, b * b + (c * c if d == 2 else 0)
    t = eliminate(C, alpha, beta, d)
    assert t.case_id == case_of(w, d)
    _check_trace(t, C)


def test_eliminate_inapplicable_bracketing():
    spec = construct_search(DesignParams(13, 4, 1), 1, 1, 1, 10)
    from symdesign.designs import pg2

    C = assemble(pg2(3), spec)
    assert C.nrows == 14
    with pytest.raises(EliminationInapplicableError):
        eliminate(C, 3, 2, 1)


def test_eliminate_degenerate_beta():
    C = RatMatrix([[1 if i == j else 0 for j in range(5)] for i in range(4)])
    t = eliminate(C, 1, 0, 1)
    assert t.degenerate_beta
    assert t.witness == {"f5": 1, "z": 0}
    assert not t.holds
    assert t.defect == t.row_space_residual == 1


def test_eliminate_degenerate_raises(monkeypatch):
    monkeypatch.setattr(border, "_free_assignments", lambda d, limit: [(F(0),) * d])
    with pytest.raises(DegenerateEliminationError) as e:
        eliminate(synthetic(4, 1, 2, 3), 4, 9, 1)
    assert e.value.trace.degenerate


def test_eliminate_rejects_bad_input():
    with pytest.raises(ValueError):
        eliminate(RatMatrix.ones(2, 3), 1, 2, 1)
    with pytest.raises(ValueError):
        eliminate(synthetic(4, 1, 2, 3), 4, 9, 2)


def test_format_trace(plane5_border):
    text = format_trace(eliminate(plane5_border, 5, 9, 1))
    lines = text.splitlines()
    assert "case 1" in lines and "holds false" in lines
    assert "final_relation f33^2 = 9*z^2" in lines
    assert sum(1 for ln in lines if ln.startswith("step ")) == 32


@pytest.mark.parametrize("cert", catalog(), ids=lambda c: c.name)
def test_certificate_roundtrip(cert):
    text = format_certificate(cert)
    back = parse_certificate(text)
    assert back.spec == cert.spec
    assert back.name == cert.name
    assert format_certificate(back) == text


def test_certificate_file_example():
    text = """# Example border for PG(2,5)
params 31 6 1
l 8
d 1
s 1
a 2 2
zerocols 0
c 2/24
A22
7/12 11/3
"""
    cert = parse_certificate(text)
    assert cert.spec == catalog_entry("plane-5-d1").spec


@pytest.mark.parametrize(
    "text, msg",
    [
        ("params 7 3 1\nl 8\nd 1\ns 1\na 2 2\nzerocols 0\nc 0\n", "A22"),
        ("params 7 3 1\nl 8\nd 1\ns 1\na 2 2\nzerocols 0\nc 0\nA22\n1 x\n", "line 9"),
        ("params 7 3 1\nl 8\nd 1\ns 1\na 2 2\nzerocols 1\nc 0\nA22\n1 1\n", "A23"),
        ("params 7 3\n", "params"),
        ("bogus 1\n", "unknown key"),
        ("params 7 3 1\nl 8\nd 1\ns 2\na 2 2\nzerocols 0\nc 0 0\nA22\n1 1\n", "rows"),
    ],
)
def test_certificate_parse_errors(text, msg):
    with pytest.raises(CertificateParseError, match=msg):
        parse_certificate(text)
