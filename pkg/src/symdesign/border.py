"""Bordered-matrix certificates.

A border extends a ``v x v`` incidence matrix ``A`` to a ``w x (w + d)``
rational matrix ``C`` with ``C C^t = alpha I + beta J``::

    C = [[A,        a_1*1 ... a_p*1,   0 ... 0],
         [c_i * 1,  A22,               A23    ]]

with ``s`` added rows, ``p`` constant columns, ``z`` zero columns and
``p + z = s + d``.  Under this pattern every inner product of rows of ``C``
reduces to a scalar identity in ``(v, k, lambda)`` and the block entries, so a
border can be checked without the design.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Iterator, Sequence

from .designs import DesignParams, IncidenceMatrix
from .exactmat import (
    RatMatrix,
    ShapeError,
    as_rat,
    format_rat,
    gram_check,
    parse_rat,
    row_space_preimage,
    solve_affine,
    vecmat,
)
from .numtheory import (
    four_square_identity_matrix,
    four_squares,
    rational_sqrt,
    sum_two_squares,
    two_square_identity_matrix,
)
from .verdict import Status, Verdict

__all__ = [
    "BorderSpec",
    "Certificate",
    "EliminationTrace",
    "InvalidSpecError",
    "CertificateParseError",
    "DegenerateEliminationError",
    "EliminationInapplicableError",
    "assemble",
    "scalar_verify",
    "construct_search",
    "rational_grid",
    "eliminate",
    "case_of",
    "catalog",
    "catalog_entry",
    "parse_certificate",
    "format_certificate",
    "read_certificate",
    "write_certificate",
    "format_trace",
]


class InvalidSpecError(ValueError):
    pass


class CertificateParseError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        super().__init__(f"line {line}: {message}" if line is not None else message)
        self.line = line


class EliminationInapplicableError(ValueError):
    """The bracketing this case needs does not exist (e.g. alpha not a sum of two squares)."""


class DegenerateEliminationError(RuntimeError):
    def __init__(self, message: str, trace: EliminationTrace):
        super().__init__(message)
        self.trace = trace


def _empty_rows(s: int) -> RatMatrix:
    return RatMatrix._trusted(tuple(() for _ in range(s)), 0)


@dataclass(frozen=True)
class BorderSpec:
    """Constant-block border data: ``s`` rows, ``p = len(a)`` constant columns, ``zero_cols`` zero columns."""

    params: DesignParams
    l: int
    d: int
    s: int
    a: tuple[Fraction, ...]
    zero_cols: int
    c: tuple[Fraction, ...]
    A22: RatMatrix
    A23: RatMatrix

    def __post_init__(self):
        object.__setattr__(self, "a", tuple(as_rat(x) for x in self.a))
        object.__setattr__(self, "c", tuple(as_rat(x) for x in self.c))
        if not isinstance(self.A22, RatMatrix):
            object.__setattr__(self, "A22", RatMatrix(self.A22))
        if not isinstance(self.A23, RatMatrix):
            a23 = RatMatrix(self.A23) if self.zero_cols else _empty_rows(self.s)
            object.__setattr__(self, "A23", a23)
        if self.s < 1:
            raise InvalidSpecError(f"s must be >= 1, got {self.s}")
        if self.zero_cols < 0:
            raise InvalidSpecError("zero_cols must be >= 0")
        if len(self.c) != self.s:
            raise InvalidSpecError(f"c has {len(self.c)} entries, expected s = {self.s}")
        if self.A22.shape != (self.s, self.p):
            raise InvalidSpecError(f"A22 is {self.A22.shape}, expected {(self.s, self.p)}")
        if self.A23.shape != (self.s, self.zero_cols):
            raise InvalidSpecError(f"A23 is {self.A23.shape}, expected {(self.s, self.zero_cols)}")

    @property
    def p(self) -> int:
        return len(self.a)

    @property
    def alpha(self) -> int:
        return self.params.k - self.params.lam

    @property
    def beta(self) -> int:
        return self.params.lam + self.l

    @property
    def w(self) -> int:
        return self.params.v + self.s

    @property
    def ncols(self) -> int:
        return self.params.v + self.p + self.zero_cols

    def border_rows(self) -> list[tuple[Fraction, ...]]:
        """The ``(A22 | A23)`` part of each added row."""
        return [self.A22.row(i) + self.A23.row(i) for i in range(self.s)]


def assemble(A: IncidenceMatrix, spec: BorderSpec) -> RatMatrix:
    """Lay out ``[[A, A12, 0], [c*1, A22, A23]]``."""
    if A.params != spec.params:
        raise InvalidSpecError(f"design {A.params} does not match spec {spec.params}")
    if spec.p + spec.zero_cols != spec.s + spec.d:
        raise InvalidSpecError(
            f"p + z = {spec.p + spec.zero_cols} but s + d = {spec.s + spec.d}"
        )
    v = spec.params.v
    tail = spec.a + (Fraction(0),) * spec.zero_cols
    top = tuple(r + tail for r in A.matrix.rows())
    bottom = tuple((spec.c[i],) * v + row for i, row in enumerate(spec.border_rows()))
    return RatMatrix._trusted(top + bottom)


def _dot(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    return sum((x * y for x, y in zip(u, v)), Fraction(0))


def scalar_verify(spec: BorderSpec) -> Verdict:
    """Check the border identities using only ``(v, k, lambda)`` and the block scalars.

    E1  lambda + sum a_j^2 = beta            (two design rows)
    E2  k + sum a_j^2 = alpha + beta         (design row with itself)
    E3  k c_i + sum_j a_j A22[i,j] = beta    (design row against added row i)
    E4  v c_i^2 + |A22_i|^2 + |A23_i|^2 = alpha + beta
    E5  v c_i c_j + <A22_i, A22_j> + <A23_i, A23_j> = beta   (i < j)

    Also rejects any constant column in the assembled matrix, and checks that
    ``l = sum a_j^2`` and ``d = p + z - s`` is 1 or 2.
    """
    P = spec.params
    v, k, lam = P.v, P.k, P.lam
    alpha, beta = spec.alpha, spec.beta
    failures: list[dict] = []

    def fail(eq: str, lhs, rhs, **where):
        failures.append({"equation": eq, "lhs": format_rat(as_rat(lhs)), "rhs": format_rat(as_rat(rhs)), **where})

    sum_a2 = _dot(spec.a, spec.a)
    if sum_a2 != spec.l:
        fail("l = sum a_j^2", spec.l, sum_a2)
    d = spec.p + spec.zero_cols - spec.s
    if d != spec.d or d not in (1, 2):
        fail("d = p + z - s in {1, 2}", spec.d, d)
    if lam + sum_a2 != beta:
        fail("E1", lam + sum_a2, beta)
    if k + sum_a2 != alpha + beta:
        fail("E2", k + sum_a2, alpha + beta)
    rows = spec.border_rows()
    for i in range(spec.s):
        lhs = k * spec.c[i] + _dot(spec.a, spec.A22.row(i))
        if lhs != beta:
            fail("E3", lhs, beta, row=i)
        lhs = v * spec.c[i] ** 2 + _dot(rows[i], rows[i])
        if lhs != alpha + beta:
            fail("E4", lhs, alpha + beta, row=i)
        for j in range(i + 1, spec.s):
            lhs = v * spec.c[i] * spec.c[j] + _dot(rows[i], rows[j])
            if lhs != beta:
                fail("E5", lhs, beta, rows=[i, j])
    constant = [
        spec.params.v + j for j in range(spec.p)
        if all(spec.A22[i, j] == spec.a[j] for i in range(spec.s))
    ] + [
        spec.params.v + spec.p + m for m in range(spec.zero_cols)
        if all(spec.A23[i, m] == 0 for i in range(spec.s))
    ]
    if constant:
        failures.append({"equation": "no constant column", "columns": constant})
    return Verdict(
        Status.FAIL if failures else Status.PASS,
        f"border rows of C satisfy C C^t = {alpha}I + {beta}J",
        {
            "params": [v, k, lam],
            "alpha": alpha,
            "beta": beta,
            "w": spec.w,
            "d": spec.d,
            "failures": failures,
        },
        "border-scalar",
    )


# bounded search


def rational_grid(bound: int) -> list[Fraction]:
    """Rationals ``p/q`` with ``|p| <= bound``, ``1 <= q <= bound``, ordered by height.

    Height is ``max(|p|, q)``; ties are broken by denominator, then ``|p|``,
    positive before negative.
    """
    out = [Fraction(0)]
    for h in range(1, bound + 1):
        level = []
        for q in range(1, h + 1):
            nums = [h] if q < h else range(1, h + 1)
            for p in nums:
                if math.gcd(p, q) == 1:
                    level.append((q, p))
        for q, p in level:
            out.append(Fraction(p, q))
            out.append(Fraction(-p, q))
    return out


def _row_candidates(
    spec_a: tuple[Fraction, ...],
    width: int,
    P: DesignParams,
    beta: int,
    alpha: int,
    ci: Fraction,
    earlier: list[tuple[Fraction, tuple[Fraction, ...]]],
    grid: list[Fraction],
) -> Iterator[tuple[Fraction, ...]]:
    """All ``u`` solving E3/E5 linearly and E4 on the sphere, in scan order."""
    p = len(spec_a)
    L = [list(spec_a) + [Fraction(0)] * (width - p)]
    r = [beta - P.k * ci]
    for cr, ur in earlier:
        L.append(list(ur))
        r.append(beta - P.v * ci * cr)
    sol = solve_affine(L, r)
    if sol is None:
        return
    u0, basis = sol
    R = alpha + beta - P.v * ci * ci
    if not basis:
        if _dot(u0, u0) == R:
            yield tuple(u0)
        return
    last = basis[-1]
    nn = _dot(last, last)
    for ts in itertools.product(grid, repeat=len(basis) - 1):
        base = list(u0)
        for t, b in zip(ts, basis):
            if t:
                base = [x + t * y for x, y in zip(base, b)]
        # |base + t*last|^2 = R
        bn = _dot(base, last)
        disc = bn * bn - nn * (_dot(base, base) - R)
        root = rational_sqrt(disc) if disc >= 0 else None
        if root is None:
            continue
        for sgn in (1, -1) if root else (1,):
            t = (-bn + sgn * root) / nn
            yield tuple(x + t * y for x, y in zip(base, last))


def construct_search(params: DesignParams, l: int, d: int, s: int, bound: int) -> BorderSpec | None:
    """Search the rational grid of height ``bound`` for a border with ``beta = lambda + l``.

    The border columns are ``(a, b)`` from :func:`sum_two_squares` padded with
    zeros; with ``s = 1`` there are ``1 + d`` constant columns, with ``s = 2``
    two constant columns and ``d`` zero columns.  For each ``c_i`` the linear
    equations E3/E5 are solved exactly and E4 is met by a rational root of the
    remaining quadratic.  Every hit is re-checked with :func:`scalar_verify`.
    """
    if d not in (1, 2):
        raise ValueError(f"d must be 1 or 2, got {d}")
    if s not in (1, 2):
        raise ValueError(f"s must be 1 or 2, got {s}")
    if bound < 1:
        raise ValueError("bound must be >= 1")
    ab = sum_two_squares(l) if l >= 1 else None
    if ab is None:
        raise ValueError(f"l = {l} is not a sum of two squares")
    if s == 1:
        p, z = 1 + d, 0
    else:
        p, z = 2, d
    a = tuple(Fraction(x) for x in ab) + (Fraction(0),) * (p - 2)
    width = p + z
    alpha, beta = params.k - params.lam, params.lam + l
    grid = rational_grid(bound)

    def rows_from(prefix: list[tuple[Fraction, tuple[Fraction, ...]]]) -> Iterator[list]:
        if len(prefix) == s:
            yield prefix
            return
        for ci in grid:
            for u in _row_candidates(a, width, params, beta, alpha, ci, prefix, grid):
                yield from rows_from(prefix + [(ci, u)])

    for rows in rows_from([]):
        spec = BorderSpec(
            params=params,
            l=l,
            d=d,
            s=s,
            a=a,
            zero_cols=z,
            c=tuple(ci for ci, _ in rows),
            A22=RatMatrix([u[:p] for _, u in rows]),
            A23=RatMatrix([u[p:] for _, u in rows]) if z else _empty_rows(s),
        )
        if scalar_verify(spec).status is Status.PASS:
            return spec
    return None


# elimination


def case_of(w: int, d: int) -> int:
    """Case number 1..8 for ``(w mod 4, d)``."""
    table = {(0, 1): 1, (0, 2): 2, (2, 1): 3, (2, 2): 4, (1, 1): 5, (1, 2): 6, (3, 1): 7, (3, 2): 8}
    if d not in (1, 2):
        raise ValueError(f"d must be 1 or 2, got {d}")
    return table[(w % 4, d)]


def _free_value_sequence() -> Iterator[Fraction]:
    yield Fraction(1)
    n = 2
    while True:
        yield Fraction(n)
        yield Fraction(1, n)
        n += 1


def _free_assignments(d: int, limit: int) -> list[tuple[Fraction, ...]]:
    seq = _free_value_sequence()
    if d == 1:
        return [(next(seq),) for _ in range(limit)]
    out = [(Fraction(0), Fraction(1)), (Fraction(1), Fraction(0))]
    while len(out) < limit:
        out.append((Fraction(1), next(seq)))
    return out


@dataclass(frozen=True)
class EliminationTrace:
    """Record of one elimination run.

    ``triangle[i]`` maps later variable indices ``j`` to ``d_{i,j}`` so that
    pivot ``i`` equals ``sum_j d_{i,j} * var_j``; ``signs[i]`` is ``+1`` when the
    eliminated form equals the pivot and ``-1`` when it equals its negative.
    ``variables`` holds the full pivot-side vector (``f`` for x-side
    bracketing, ``y`` for f-side), ``x`` the design-side vector.
    ``defect`` is LHS - RHS of the final relation; ``row_space_residual`` is
    ``|f - (f M) C|^2``, the squared length of the part of ``f`` outside the
    row space of ``C``.  The two always agree.
    """

    case_id: int
    w: int
    d: int
    alpha: int
    beta: int
    bracketing: str
    block: tuple[int, ...]
    triangle: tuple[tuple[tuple[int, Fraction], ...], ...]
    self_coefficients: tuple[Fraction, ...]
    signs: tuple[int, ...]
    free_values: tuple[Fraction, ...]
    final_relation: str
    witness: dict[str, Fraction]
    variables: tuple[Fraction, ...]
    f: tuple[Fraction, ...]
    x: tuple[Fraction, ...]
    lhs: Fraction
    rhs: Fraction
    pairs_match: bool
    row_space_residual: Fraction
    attempts: int
    renumberings: tuple[int, ...] = ()
    notes: tuple[str, ...] = field(default=())

    @property
    def holds(self) -> bool:
        return self.lhs == self.rhs

    @property
    def defect(self) -> Fraction:
        return self.lhs - self.rhs

    @property
    def degenerate(self) -> bool:
        return all(val == 0 for val in self.witness.values())

    @property
    def degenerate_beta(self) -> bool:
        return self.beta == 0

    def replay(self) -> bool:
        """Back-substitute the triangle from the free values and compare with ``variables``."""
        n = len(self.variables)
        vals = [Fraction(0)] * n
        for j, t in zip(range(n - self.d, n), self.free_values):
            vals[j] = t
        for i in reversed(range(len(self.triangle))):
            vals[i] = sum((cij * vals[j] for j, cij in self.triangle[i]), Fraction(0))
        return tuple(vals) == self.variables


def _pivot_solve(forms: list[list[Fraction]], w: int):
    """Run the substitution triangle over ``forms[i]`` (coefficients on the pivot-side variables)."""
    triangle: list[dict[int, Fraction]] = []
    selfs, signs, renum = [], [], []
    for i in range(w):
        form = list(forms[i])
        for p in range(i):
            cp = form[p]
            if cp:
                form[p] = Fraction(0)
                for j, dj in triangle[p].items():
                    form[j] += cp * dj
        b = form[i]
        rest = {j: form[j] for j in range(i + 1, len(form)) if form[j]}
        if b != 1:
            fac = 1 / (1 - b)
            signs.append(1)
        else:
            fac = Fraction(-1, 2)
            signs.append(-1)
        if b == 0 and not rest:
            renum.append(i)
        triangle.append({j: cj * fac for j, cj in rest.items()})
        selfs.append(b)
    return triangle, selfs, signs, renum


def _back_substitute(triangle, n: int, d: int, free: tuple[Fraction, ...]) -> list[Fraction]:
    vals = [Fraction(0)] * n
    for j, t in zip(range(n - d, n), free):
        vals[j] = t
    for i in reversed(range(len(triangle))):
        vals[i] = sum((cij * vals[j] for j, cij in triangle[i].items()), Fraction(0))
    return vals


def _blockdiag(block: RatMatrix, count: int) -> list[list[Fraction]]:
    b = block.nrows
    n = b * count
    out = [[Fraction(0)] * n for _ in range(n)]
    for k in range(count):
        for i in range(b):
            for j in range(b):
                out[k * b + i][k * b + j] = block[i, j]
    return out


def eliminate(C: RatMatrix, alpha: int, beta: int, d: int, max_attempts: int = 8) -> EliminationTrace:
    """Run the substitution procedure for ``C C^t = alpha I + beta J`` exactly.

    Even ``w`` brackets ``alpha (x_1^2 + ... + x_w^2)`` with four-square
    (``w = 0 mod 4``) or two-square (``w = 2 mod 4``) blocks, so ``y = x B``,
    and eliminates ``y_i^2 = f_i^2`` for ``i <= w``.  Odd ``w`` brackets the
    first ``w + 1`` coordinates of ``f`` (two-square blocks for ``w = 1``,
    four-square blocks for ``w = 3``), writing ``f = y Q`` with
    ``alpha |y|^2 = |f|^2`` blockwise, and eliminates ``x_i^2 = y_i^2``.
    Here ``x = f M`` with ``M`` the row-space preimage of ``C`` and
    ``z = x_1 + ... + x_w``.

    The final relation is evaluated exactly and recorded, whether or not it
    holds.  Raises :class:`DegenerateEliminationError` if every free-value
    assignment gives an all-zero witness.
    """
    w, ncols = C.shape
    if ncols != w + d:
        raise ShapeError(f"C is {C.shape}, expected {w} x {w + d}")
    case = case_of(w, d)
    M = row_space_preimage(C, alpha, beta)
    Mrows = M.rows()
    n = w + d
    x_side = w % 2 == 0

    if w % 4 in (0, 3):
        block_vals = four_squares(alpha)
        blk = four_square_identity_matrix(*block_vals)
        kind = "four-square"
    else:
        ab = sum_two_squares(alpha)
        if ab is None:
            raise EliminationInapplicableError(
                f"case {case} needs alpha = a^2 + b^2, but {alpha} is not a sum of two squares"
            )
        block_vals = ab
        blk = two_square_identity_matrix(*ab)
        kind = "two-square"
    bsize = blk.nrows

    if x_side:
        B = _blockdiag(blk, w // bsize)
        # y_i = sum_j (M B)[j][i] f_j
        MB = [[_dot(Mrows[j], [B[k][i] for k in range(w)]) for i in range(w)] for j in range(n)]
        forms = [[MB[j][i] for j in range(n)] for i in range(w)]
        bracketing = f"x-side {kind} blocks"
    else:
        Q = _blockdiag(blk.T, (w + 1) // bsize)
        if d == 2:
            for row in Q:
                row.append(Fraction(0))
            Q.append([Fraction(0)] * (w + 1) + [Fraction(1)])
        # x_i = sum_k (Q M)[k][i] y_k
        QM = [vecmat(Q[k], M) for k in range(n)]
        forms = [[QM[k][i] for k in range(n)] for i in range(w)]
        bracketing = f"f-side {kind} blocks"

    triangle, selfs, signs, renum = _pivot_solve(forms, w)
    tri = tuple(tuple(sorted(t.items())) for t in triangle)

    if case in (1, 3):
        relation = f"f{w + 1}^2 = {beta}*z^2"
    elif case in (2, 4):
        relation = f"f{w + 1}^2 + f{w + 2}^2 = {beta}*z^2"
    elif case in (5, 7):
        relation = f"{alpha}*y{w + 1}^2 = {beta}*z^2"
    else:
        relation = f"{alpha}*y{w + 1}^2 + y{w + 2}^2 = {beta}*z^2"
    pivot_name = "f" if x_side else "y"

    trace = None
    assignments = _free_assignments(d, max_attempts)
    for attempt, free in enumerate(assignments, start=1):
        vals = _back_substitute(triangle, n, d, free)
        if x_side:
            f = vals
        else:
            f = vecmat(vals, RatMatrix._trusted(tuple(tuple(r) for r in Q)))
        x = vecmat(f, M)
        z = sum(x, Fraction(0))
        tail = vals[w:]
        if x_side:
            lhs = sum((t * t for t in tail), Fraction(0))
            y = vecmat(x, RatMatrix._trusted(tuple(tuple(r) for r in B)))
            pairs = all(y[i] ** 2 == f[i] ** 2 for i in range(w))
        else:
            lhs = alpha * tail[0] ** 2 + sum((t * t for t in tail[1:]), Fraction(0))
            pairs = all(x[i] ** 2 == vals[i] ** 2 for i in range(w))
        rhs = beta * z * z
        proj = vecmat(x, C)
        resid = sum(((fi - pi) ** 2 for fi, pi in zip(f, proj)), Fraction(0))
        witness = {f"{pivot_name}{w + 1 + k}": t for k, t in enumerate(tail)}
        witness["z"] = z
        notes = []
        if beta == 0:
            notes.append("beta = 0: the relation degenerates to a sum of squares equal to 0")
        if lhs != rhs:
            notes.append("final relation fails; defect equals the squared distance of f from the row space of C")
        trace = EliminationTrace(
            case_id=case,
            w=w,
            d=d,
            alpha=alpha,
            beta=beta,
            bracketing=bracketing,
            block=tuple(block_vals),
            triangle=tri,
            self_coefficients=tuple(selfs),
            signs=tuple(signs),
            free_values=tuple(free),
            final_relation=relation,
            witness=witness,
            variables=tuple(vals),
            f=tuple(f),
            x=tuple(x),
            lhs=lhs,
            rhs=rhs,
            pairs_match=pairs,
            row_space_residual=resid,
            attempts=attempt,
            renumberings=tuple(renum),
            notes=tuple(notes),
        )
        if not trace.degenerate:
            return trace
    raise DegenerateEliminationError(
        f"all {len(assignments)} free-value assignments gave a zero witness", trace
    )


def format_trace(t: EliminationTrace) -> str:
    """Key-value text report of a trace, enough to re-check the witness by hand."""
    fr = format_rat
    lines = [
        f"case {t.case_id}",
        f"w {t.w}",
        f"d {t.d}",
        f"alpha {t.alpha}",
        f"beta {t.beta}",
        f"bracketing {t.bracketing}",
        f"block {' '.join(map(str, t.block))}",
        f"final_relation {t.final_relation}",
        f"free_values {' '.join(fr(v) for v in t.free_values)}",
        f"attempts {t.attempts}",
    ]
    lines += [f"witness {k} {fr(v)}" for k, v in t.witness.items()]
    lines += [
        f"lhs {fr(t.lhs)}",
        f"rhs {fr(t.rhs)}",
        f"holds {str(t.holds).lower()}",
        f"defect {fr(t.defect)}",
        f"row_space_residual {fr(t.row_space_residual)}",
        f"pairs_match {str(t.pairs_match).lower()}",
        f"renumberings {' '.join(map(str, t.renumberings)) or '-'}",
    ]
    for i, (b, sg, row) in enumerate(zip(t.self_coefficients, t.signs, t.triangle)):
        terms = " ".join(f"{j}:{fr(c)}" for j, c in row) or "0"
        lines.append(f"step {i} self {fr(b)} sign {sg:+d} {terms}")
    lines.append("variables " + " ".join(fr(v) for v in t.variables))
    lines.append("x " + " ".join(fr(v) for v in t.x))
    lines += [f"note {n}" for n in t.notes]
    return "\n".join(lines) + "\n"


# certificates


@dataclass(frozen=True)
class Certificate:
    name: str
    spec: BorderSpec
    provenance: str = "constructed"
    expected_case: int | None = None
    description: str = ""
    verdict: Verdict | None = None

    def with_verdict(self, verdict: Verdict) -> Certificate:
        return replace(self, verdict=verdict)


def _spec(v, k, lam, l, d, a, c, A22, zero_cols=0, A23=None) -> BorderSpec:
    s = len(c)
    return BorderSpec(
        params=DesignParams(v, k, lam),
        l=l,
        d=d,
        s=s,
        a=tuple(map(as_rat, a)),
        zero_cols=zero_cols,
        c=tuple(map(as_rat, c)),
        A22=RatMatrix(A22),
        A23=RatMatrix(A23) if zero_cols else _empty_rows(s),
    )


def _build_catalog() -> tuple[Certificate, ...]:
    F = Fraction
    P = "published"
    return (
        Certificate("order-10", _spec(111, 11, 1, 100, 1, (10, 0), (F(-2129, 11221),),
                    [[F(115674, 11221), F(6, 7)]]), P, 1, "projective plane of order 10"),
        Certificate("order-12", _spec(157, 13, 1, 4, 2, (2, 0), (F(285, 2191), F(-1, 7)),
                    [[F(3625, 2191), F(11, 7)], [F(24, 7), F(10, 7)]], 2,
                    [[F(669, 313), F(669, 313)], [0, 0]]), P, 8, "projective plane of order 12"),
        Certificate("order-15", _spec(241, 16, 1, 49, 2, (7, 0), (F(1432, 49911), F(-23, 381)),
                    [[F(353234, 49911), F(-1, 3)], [F(2774, 381), F(10, 3)]], 2,
                    [[F(120, 131), F(486, 131)], [0, 0]]), P, 8, "projective plane of order 15"),
        Certificate("order-18", _spec(343, 19, 1, 36, 1, (6, 0), (F(-23, 355),),
                    [[F(2262, 355), F(18, 5)]]), P, 1, "projective plane of order 18"),
        Certificate("order-20", _spec(421, 21, 1, 64, 2, (8, 0), (F(-549047, 30808125), F(9231, 257419)),
                    [[F(83919088, 10269375), F(-2, 25)], [F(2067298, 257419), F(210, 47)]], 2,
                    [[F(3808, 5625), F(23614, 5625)], [0, 0]]), P, 8, "projective plane of order 20"),
        Certificate("order-24", _spec(601, 25, 1, 1, 2, (1, 0, 0, 0), (F(3, 25), F(13, 185)),
                    [[-1, F(46, 25), F(18, 5), 0], [F(9, 37), F(-284, 185), 0, F(168, 37)]]),
                    P, 8, "projective plane of order 24"),
        Certificate("order-26", _spec(703, 27, 1, 9, 1, (3, 0), (F(-4, 147),),
                    [[F(526, 147), F(100, 21)]]), P, 1, "projective plane of order 26"),
        Certificate("order-28", _spec(813, 29, 1, 5, 2, (1, 2, 0, 0), (F(1, 7), F(291, 2590)),
                    [[F(-23, 7), F(18, 7), 0, 0], [F(5991, 2590), F(3, 14), F(336, 185), F(287, 74)]]),
                    P, 8, "projective plane of order 28"),
        Certificate("(49,16,5)", _spec(49, 16, 5, 1, 2, (1, 0, 0, 0), (F(1, 3), F(154, 425)),
                    [[F(2, 3), F(10, 3), 0, 0], [F(86, 425), F(-2, 125), F(242, 425), F(6787, 2125)]]),
                    P, 8, "symmetric (49,16,5) design"),
        Certificate("(154,18,2)", _spec(154, 18, 2, 1, 2, (1, 0, 0), (F(3, 20),),
                    [[F(3, 10), F(47, 20), F(63, 20)]]), P, 8, "symmetric (154,18,2) design"),
        Certificate("(115,19,3)", _spec(115, 19, 3, 9, 1, (3, 0), (F(3, 7),),
                    [[F(9, 7), F(16, 7)]]), P, 1, "symmetric (115,19,3) design"),
        Certificate("plane-5-d1", _spec(31, 6, 1, 8, 1, (2, 2), (F(1, 12),),
                    [[F(7, 12), F(11, 3)]]), P, 1, "PG(2,5), 32 x 33 border"),
        Certificate("plane-5-d2", _spec(31, 6, 1, 1, 2, (1, 0, 0), (F(1, 3),),
                    [[0, F(4, 3), F(4, 3)]]), P, 2, "PG(2,5), 32 x 34 border"),
        Certificate("design-45-12-3-d1", _spec(45, 12, 3, 1, 1, (1, 0), (F(2, 9),),
                    [[F(4, 3), 3]]), P, 3, "(45,12,3) design, 46 x 47 border"),
        Certificate("design-45-12-3-d2", _spec(45, 12, 3, 2, 2, (1, 1, 0), (0,),
                    [[3, 2, 1]]), P, 4, "(45,12,3) design, 46 x 48 border"),
        Certificate("design-36-15-6-d1", _spec(36, 15, 6, 10, 1, (3, 1), (F(7, 9),),
                    [[F(14, 15), F(23, 15)]]), P, 5, "(36,15,6) design, 37 x 38 border"),
        Certificate("design-36-15-6-d2", _spec(36, 15, 6, 4, 2, (2, 0, 0), (F(8, 15),),
                    [[1, 1, F(13, 5)]]), P, 6, "(36,15,6) design, 37 x 39 border"),
        Certificate("plane-7-d1", _spec(57, 8, 1, 6, 1, (2, 1, 1), (0, 0),
                    [[1, 3, 2], [F(11, 5), F(-2, 5), 3]]), P, 7, "PG(2,7), 59 x 60 border"),
        Certificate("plane-7-d2", _spec(57, 8, 1, 1, 2, (1, 0, 0, 0), (0, 0),
                    [[2, 2, 1, 0], [2, 0, -2, 1]]), P, 8, "PG(2,7), 59 x 61 border"),
    )


_CATALOG: tuple[Certificate, ...] | None = None

OBSTRUCTION_NAMES = (
    "order-10", "order-12", "order-15", "order-18", "order-20", "order-24",
    "order-26", "order-28", "(49,16,5)", "(154,18,2)", "(115,19,3)",
)


def catalog() -> list[Certificate]:
    """Built-in certificates, without verdicts attached."""
    global _CATALOG
    if _CATALOG is None:
        _CATALOG = _build_catalog()
    return list(_CATALOG)


def catalog_entry(name: str) -> Certificate:
    for cert in catalog():
        if cert.name == name:
            return cert
    raise KeyError(f"no catalog certificate named {name!r}")


# certificate files


def format_certificate(cert: Certificate | BorderSpec) -> str:
    spec = cert.spec if isinstance(cert, Certificate) else cert
    P = spec.params
    out = []
    if isinstance(cert, Certificate):
        out.append(f"name {cert.name}")
    out += [
        f"params {P.v} {P.k} {P.lam}",
        f"l {spec.l}",
        f"d {spec.d}",
        f"s {spec.s}",
        "a " + " ".join(format_rat(x) for x in spec.a),
        f"zerocols {spec.zero_cols}",
        "c " + " ".join(format_rat(x) for x in spec.c),
        "A22",
    ]
    out += [" ".join(format_rat(x) for x in r) for r in spec.A22.rows()]
    if spec.zero_cols:
        out.append("A23")
        out += [" ".join(format_rat(x) for x in r) for r in spec.A23.rows()]
    return "\n".join(out) + "\n"


def parse_certificate(text: str) -> Certificate:
    lines = [
        (n, ln.strip())
        for n, ln in enumerate(text.splitlines(), start=1)
        if ln.strip() and not ln.lstrip().startswith("#")
    ]
    fields: dict[str, tuple[int, list[str]]] = {}
    blocks: dict[str, list[tuple[int, list[str]]]] = {}
    current: str | None = None
    for n, ln in lines:
        key, *rest = ln.split()
        if key in ("A22", "A23"):
            if rest:
                raise CertificateParseError(f"{key} takes no inline values", n)
            current = key
            blocks[key] = []
        elif key in ("name", "params", "l", "d", "s", "a", "zerocols", "c"):
            current = None
            if key in fields:
                raise CertificateParseError(f"duplicate key {key!r}", n)
            fields[key] = (n, rest)
        elif current is not None:
            blocks[current].append((n, ln.split()))
        else:
            raise CertificateParseError(f"unknown key {key!r}", n)

    def need(key: str) -> tuple[int, list[str]]:
        if key not in fields:
            raise CertificateParseError(f"missing {key!r} line")
        return fields[key]

    def ints(key: str, count: int) -> list[int]:
        n, vals = need(key)
        if len(vals) != count or not all(t.lstrip("-").isdigit() for t in vals):
            raise CertificateParseError(f"{key!r} needs {count} integer(s)", n)
        return [int(t) for t in vals]

    def rats(n: int, toks: list[str]) -> list[Fraction]:
        try:
            return [parse_rat(t) for t in toks]
        except ValueError as e:
            raise CertificateParseError(str(e), n) from None

    v, k, lam = ints("params", 3)
    (l,) = ints("l", 1)
    (d,) = ints("d", 1)
    (s,) = ints("s", 1)
    (z,) = ints("zerocols", 1)
    a = rats(*need("a"))
    c = rats(*need("c"))
    if "A22" not in blocks:
        raise CertificateParseError("missing 'A22' block")
    A22 = [rats(n, t) for n, t in blocks["A22"]]
    if len(A22) != s:
        raise CertificateParseError(f"A22 has {len(A22)} rows, expected s = {s}")
    if z:
        if "A23" not in blocks:
            raise CertificateParseError("missing 'A23' block (zerocols > 0)")
        A23 = [rats(n, t) for n, t in blocks["A23"]]
        if len(A23) != s:
            raise CertificateParseError(f"A23 has {len(A23)} rows, expected s = {s}")
    elif "A23" in blocks and blocks["A23"]:
        raise CertificateParseError("A23 given but zerocols is 0")
    try:
        spec = BorderSpec(
            params=DesignParams(v, k, lam),
            l=l,
            d=d,
            s=s,
            a=tuple(a),
            zero_cols=z,
            c=tuple(c),
            A22=RatMatrix(A22),
            A23=RatMatrix(A23) if z else _empty_rows(s),
        )
    except (ValueError, ShapeError) as e:
        raise CertificateParseError(str(e)) from None
    name = " ".join(fields["name"][1]) if "name" in fields else "unnamed"
    return Certificate(name, spec)


def read_certificate(path) -> Certificate:
    with open(path, encoding="utf-8") as fh:
        return parse_certificate(fh.read())


def write_certificate(path, cert: Certificate | BorderSpec) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_certificate(cert))
