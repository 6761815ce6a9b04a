"""Symmetric design parameters, incidence matrices and PG(2, q)."""

from __future__ import annotations

import itertools
import operator
from dataclasses import dataclass
from fractions import Fraction

from .exactmat import RatMatrix
from .numtheory import factorize, is_prime
from .verdict import Status, Verdict

__all__ = [
    "DesignParams",
    "IncidenceMatrix",
    "InvalidIncidenceError",
    "UnsupportedOrderError",
    "validate_params",
    "plane_params",
    "incidence_check",
    "pg2",
    "ryser_classical_border",
]


class InvalidIncidenceError(ValueError):
    pass


class UnsupportedOrderError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class DesignParams:
    v: int
    k: int
    lam: int

    def __post_init__(self):
        for name, val in (("v", self.v), ("k", self.k), ("lambda", self.lam)):
            if not isinstance(val, int) or val < 1:
                raise ValueError(f"{name} must be a positive integer, got {val!r}")

    @property
    def n(self) -> int:
        """The order ``k - lambda``."""
        return self.k - self.lam

    def __str__(self) -> str:
        return f"({self.v},{self.k},{self.lam})"


@dataclass(frozen=True)
class IncidenceMatrix:
    matrix: RatMatrix
    params: DesignParams

    def __post_init__(self):
        v = self.params.v
        if self.matrix.shape != (v, v):
            raise InvalidIncidenceError(f"incidence matrix must be {v}x{v}, got {self.matrix.shape}")
        for i, r in enumerate(self.matrix.rows()):
            for j, x in enumerate(r):
                if x != 0 and x != 1:
                    raise InvalidIncidenceError(f"entry ({i},{j}) = {x} is not 0/1")

    def int_rows(self) -> list[list[int]]:
        return [[int(x) for x in r] for r in self.matrix.rows()]


def validate_params(v: int, k: int, lam: int) -> Verdict:
    """Check the counting relations of a symmetric design and ``0 < lambda < k < v - 1``."""
    failed = []
    if not (0 < lam < k < v - 1):
        failed.append("0 < lambda < k < v-1")
    if lam * (v - 1) != k * (k - 1):
        failed.append(f"lambda(v-1) = k(k-1): {lam * (v - 1)} != {k * (k - 1)}")
    if k * k - v * lam != k - lam:
        failed.append(f"k^2 - v*lambda = k - lambda: {k * k - v * lam} != {k - lam}")
    if (v - k) * lam != (k - 1) * (k - lam):
        failed.append(f"(v-k)lambda = (k-1)(k-lambda): {(v - k) * lam} != {(k - 1) * (k - lam)}")
    return Verdict(
        Status.FAIL if failed else Status.PASS,
        f"({v},{k},{lam}) satisfies the symmetric design relations",
        {"v": v, "k": k, "lambda": lam, "failed_relations": failed},
        "design-relations",
    )


def plane_params(n: int) -> DesignParams:
    """``(n^2 + n + 1, n + 1, 1)``."""
    if n < 2:
        raise ValueError(f"plane order must be >= 2, got {n}")
    return DesignParams(n * n + n + 1, n + 1, 1)


def _gram_is(rows: list[list[int]], diag: int, off: int) -> tuple[int, int] | None:
    """First ``(i, j)`` where the Gram matrix of ``rows`` misses the target, else ``None``."""
    for i, ri in enumerate(rows):
        if sum(ri) != diag:  # 0/1 rows: self product = row sum
            return i, i
        for j in range(i + 1, len(rows)):
            if sum(map(operator.mul, ri, rows[j])) != off:
                return i, j
    return None


def incidence_check(A: IncidenceMatrix) -> Verdict:
    """Pass iff ``A A^t = A^t A = lambda J + (k - lambda) I``."""
    p = A.params
    rows = A.int_rows()
    cols = [list(c) for c in zip(*rows)]
    bad_rows = _gram_is(rows, p.k, p.lam)
    bad_cols = _gram_is(cols, p.k, p.lam)
    ok = bad_rows is None and bad_cols is None
    return Verdict(
        Status.PASS if ok else Status.FAIL,
        f"A A^t = A^t A = {p.lam}J + {p.n}I",
        {"params": [p.v, p.k, p.lam], "row_mismatch": bad_rows, "column_mismatch": bad_cols},
        "incidence",
    )


def pg2(q: int) -> IncidenceMatrix:
    """Point-line incidence matrix of PG(2, q) for prime ``q``.

    Points and lines are normalized triples (first nonzero coordinate 1) in
    lexicographic order; a point lies on a line when their dot product is 0 mod q.
    """
    if not is_prime(q):
        kind = "prime power" if q > 1 and len(factorize(q)) == 1 else "composite or < 2"
        raise UnsupportedOrderError(f"pg2 supports prime q only; {q} is {kind}")
    pts = [
        t
        for t in itertools.product(range(q), repeat=3)
        if any(t) and next(c for c in t if c) == 1
    ]
    one, zero = Fraction(1), Fraction(0)
    rows = tuple(
        tuple(one if (p[0] * l[0] + p[1] * l[1] + p[2] * l[2]) % q == 0 else zero for l in pts)
        for p in pts
    )
    return IncidenceMatrix(RatMatrix._trusted(rows), plane_params(q))


def ryser_classical_border(A: IncidenceMatrix) -> Verdict:
    """Check ``A* D A*^t = E`` for the order ``v+1`` border of an incidence matrix.

    ``A*`` appends a column of ones, then a row of ones with corner ``k/lambda``;
    ``D = diag(1, ..., 1, -lambda)`` and ``E = diag(n, ..., n, -n/lambda)``.
    """
    inc = incidence_check(A)
    if inc.status is not Status.PASS:
        return Verdict(Status.FAIL, "A*DA*^t = E (input is not a valid incidence matrix)",
                       {"incidence": inc.evidence}, "ryser-border")
    p = A.params
    v, k, lam, n = p.v, p.k, Fraction(p.lam), p.n
    corner = Fraction(k) / lam
    one = Fraction(1)
    star = RatMatrix._trusted(
        tuple(r + (one,) for r in A.matrix.rows()) + ((one,) * v + (corner,),)
    )
    D = RatMatrix.diag([1] * v + [-lam])
    E = RatMatrix.diag([n] * v + [-n / lam])
    ok = star @ D @ star.T == E
    return Verdict(
        Status.PASS if ok else Status.FAIL,
        f"A* D A*^t = diag({n}, ..., {n}, {-n / lam})",
        {"corner": str(corner), "E_last": str(-n / lam), "order": v + 1},
        "ryser-border",
    )
