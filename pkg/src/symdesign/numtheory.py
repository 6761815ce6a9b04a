"""Integer number theory for the feasibility conditions.

Squares machinery (square-free parts, two/three/four square questions and the
composition identities), Legendre symbols, and Legendre's criterion for
``A x^2 + B y^2 + C z^2 = 0`` together with a brute-force witness oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from typing import Sequence

import numpy as np

from .exactmat import RatMatrix, as_rat

__all__ = [
    "ResourceError",
    "factorize",
    "is_prime",
    "square_free_part",
    "is_perfect_square",
    "rational_sqrt",
    "legendre_symbol",
    "sum_two_squares",
    "three_squares_predicate",
    "four_squares",
    "two_square_identity",
    "two_square_identity_matrix",
    "four_square_identity_matrix",
    "NormalizationStep",
    "TernaryForm",
    "TernaryWitness",
    "LegendreCondition",
    "TernaryAnalysis",
    "ternary_normalize",
    "ternary_analysis",
    "ternary_solvable",
    "ternary_witness_search",
]

FACTOR_LIMIT = 2**64


class ResourceError(RuntimeError):
    """Input exceeds what trial division is allowed to handle."""


def factorize(n: int) -> dict[int, int]:
    """Prime factorization by trial division, as ``{prime: exponent}``."""
    if n < 1:
        raise ValueError(f"factorize needs n >= 1, got {n}")
    if n > FACTOR_LIMIT:
        raise ResourceError(f"{n} exceeds the trial-division budget of 2**64")
    out: dict[int, int] = {}
    for p in (2, 3):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    p, step = 5, 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += step
        step = 6 - step
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0 or n % 3 == 0:
        return False
    p = 5
    while p * p <= n:
        if n % p == 0 or n % (p + 2) == 0:
            return False
        p += 6
    return True


def square_free_part(m: int) -> int:
    """``m`` divided by its largest square divisor, sign kept."""
    if m == 0:
        raise ValueError("square-free part of 0 is undefined")
    core = 1
    for p, e in factorize(abs(m)).items():
        if e % 2:
            core *= p
    return core if m > 0 else -core


def is_perfect_square(m: int) -> bool:
    if m < 0:
        return False
    r = math.isqrt(m)
    return r * r == m


def rational_sqrt(q) -> Fraction | None:
    """Exact square root of a nonnegative rational, or ``None``."""
    q = as_rat(q)
    if q < 0:
        return None
    a, b = q.numerator, q.denominator
    ra, rb = math.isqrt(a), math.isqrt(b)
    if ra * ra == a and rb * rb == b:
        return Fraction(ra, rb)
    return None


def legendre_symbol(b: int, p: int) -> int:
    """Legendre symbol ``(b/p)`` via Euler's criterion."""
    if p == 2 or not is_prime(p):
        raise ValueError(f"Legendre symbol needs an odd prime, got {p}")
    r = pow(b % p, (p - 1) // 2, p)
    if r == 0:
        return 0
    return 1 if r == 1 else -1


def sum_two_squares(m: int) -> tuple[int, int] | None:
    """``(a, b)`` with ``a*a + b*b == m``, ``a <= b``, ``a`` minimal; ``None`` if impossible.

    Existence is decided from the factorization (every prime of the square-free
    part is 2 or 1 mod 4); the witness comes from a scan over ``a``.
    """
    if m < 1:
        raise ValueError(f"sum_two_squares needs m >= 1, got {m}")
    if any(p % 4 == 3 for p in factorize(square_free_part(m))):
        return None
    a = 0
    while 2 * a * a <= m:
        rest = m - a * a
        b = math.isqrt(rest)
        if b * b == rest:
            return a, b
        a += 1
    raise AssertionError(f"criterion says {m} is a sum of two squares but the scan found none")


def three_squares_predicate(n: int) -> bool:
    """True when the square-free part of ``n`` is 1, 2, 3, 5 or 6 mod 8.

    This is the sufficient condition for ``n`` to be a sum of three squares;
    no witness is produced.
    """
    if n < 1:
        raise ValueError(f"three_squares_predicate needs n >= 1, got {n}")
    return square_free_part(n) % 8 in (1, 2, 3, 5, 6)


def four_squares(n: int) -> tuple[int, int, int, int]:
    """Nonnegative ``b1 <= b2 <= b3 <= b4`` with ``sum(b*b) == n``.

    Nested search from the largest square down: ``b4`` is as large as
    possible, then ``b3``, then ``b2``.  Deterministic, e.g. ``12 -> (1, 1, 1, 3)``.
    """
    if n < 0:
        raise ValueError(f"four_squares needs n >= 0, got {n}")
    for b4 in range(math.isqrt(n), -1, -1):
        r4 = n - b4 * b4
        if 3 * b4 * b4 < r4:
            break
        for b3 in range(min(b4, math.isqrt(r4)), -1, -1):
            r3 = r4 - b3 * b3
            if 2 * b3 * b3 < r3:
                break
            for b2 in range(min(b3, math.isqrt(r3)), -1, -1):
                r2 = r3 - b2 * b2
                if b2 * b2 < r2:
                    break
                b1 = math.isqrt(r2)
                if b1 * b1 == r2:
                    return b1, b2, b3, b4
    raise AssertionError(f"no four-square decomposition found for {n}")


def two_square_identity(b1, b2, x1, x2) -> tuple[Fraction, Fraction]:
    """``(y1, y2)`` with ``(b1^2 + b2^2)(x1^2 + x2^2) == y1^2 + y2^2``."""
    b1, b2, x1, x2 = map(as_rat, (b1, b2, x1, x2))
    return b1 * x1 - b2 * x2, b2 * x1 + b1 * x2


def two_square_identity_matrix(b1, b2) -> RatMatrix:
    """``B`` with ``(y1, y2) = (x1, x2) @ B`` realizing :func:`two_square_identity`."""
    b1, b2 = as_rat(b1), as_rat(b2)
    if b1 == 0 and b2 == 0:
        raise ValueError("two-square matrix of (0, 0) is degenerate")
    return RatMatrix([[b1, b2], [-b2, b1]])


def four_square_identity_matrix(b1, b2, b3, b4) -> RatMatrix:
    """``B`` with ``y = x @ B`` the four-square composition; ``B @ B.T = (sum b^2) I``.

    Column ``j`` holds the coefficients of ``y_{j+1}``::

        y1 = b1 x1 - b2 x2 - b3 x3 - b4 x4
        y2 = b2 x1 + b1 x2 - b4 x3 + b3 x4
        y3 = b3 x1 + b4 x2 + b1 x3 - b2 x4
        y4 = b4 x1 - b3 x2 + b2 x3 + b1 x4
    """
    b1, b2, b3, b4 = map(as_rat, (b1, b2, b3, b4))
    if not (b1 or b2 or b3 or b4):
        raise ValueError("four-square matrix of (0, 0, 0, 0) is degenerate")
    cols = [
        (b1, -b2, -b3, -b4),
        (b2, b1, -b4, b3),
        (b3, b4, b1, -b2),
        (b4, -b3, b2, b1),
    ]
    return RatMatrix(zip(*cols))


# ternary forms


@dataclass(frozen=True)
class NormalizationStep:
    """One equisolvability-preserving rewrite of a ternary form.

    ``kind`` is ``"gcd"`` (divide all coefficients by ``factor``),
    ``"squarefree"`` (coefficient ``index`` divided by ``factor**2``) or
    ``"transfer"`` (coefficients ``pair`` divided by the prime ``factor``,
    coefficient ``index`` multiplied by it).
    """

    kind: str
    factor: int
    index: int | None = None
    pair: tuple[int, int] | None = None

    def lift(self, w: tuple[int, int, int]) -> tuple[int, int, int]:
        """Map a witness of the rewritten form to one of the form before this step."""
        x = list(w)
        if self.kind == "squarefree":
            for j in range(3):
                if j != self.index:
                    x[j] *= self.factor
        elif self.kind == "transfer":
            x[self.index] *= self.factor
        return x[0], x[1], x[2]


@dataclass(frozen=True)
class TernaryForm:
    """``a x^2 + b y^2 + c z^2 = 0`` plus the trail that produced it."""

    a: int
    b: int
    c: int
    trail: tuple[NormalizationStep, ...] = field(default=(), compare=False)

    def __post_init__(self):
        if 0 in (self.a, self.b, self.c):
            raise ValueError(f"ternary form coefficients must be nonzero, got {self.coeffs}")

    @property
    def coeffs(self) -> tuple[int, int, int]:
        return self.a, self.b, self.c

    def evaluate(self, x: int, y: int, z: int) -> int:
        return self.a * x * x + self.b * y * y + self.c * z * z

    def lift_witness(self, w: TernaryWitness | Sequence[int]) -> TernaryWitness:
        """Replay the trail backwards: a witness of this form becomes one of the original."""
        v = tuple(w) if not isinstance(w, TernaryWitness) else (w.x, w.y, w.z)
        for step in reversed(self.trail):
            v = step.lift(v)
        g = reduce(math.gcd, v)
        if g > 1:
            v = tuple(t // g for t in v)
        return TernaryWitness(*v)

    def __str__(self) -> str:
        return f"{self.a}*x^2 + {self.b}*y^2 + {self.c}*z^2 = 0"


@dataclass(frozen=True)
class TernaryWitness:
    x: int
    y: int
    z: int

    def __post_init__(self):
        if self.x == 0 and self.y == 0 and self.z == 0:
            raise ValueError("a witness must not be identically zero")

    def __iter__(self):
        return iter((self.x, self.y, self.z))

    def satisfies(self, form: TernaryForm) -> bool:
        return form.evaluate(self.x, self.y, self.z) == 0


def _smallest_prime(n: int) -> int:
    return min(factorize(n))


def ternary_normalize(form: TernaryForm | Sequence[int]) -> TernaryForm:
    """Equisolvable form with square-free, pairwise coprime coefficients.

    Steps are repeated until stable: divide out a common factor, replace each
    coefficient by its square-free part, and move a prime shared by exactly
    two coefficients onto the third.
    """
    coeffs = list(form.coeffs if isinstance(form, TernaryForm) else form)
    trail = list(form.trail) if isinstance(form, TernaryForm) else []
    TernaryForm(*coeffs)  # validates nonzero
    while True:
        g = reduce(math.gcd, coeffs)
        if g > 1:
            coeffs = [c // g for c in coeffs]
            trail.append(NormalizationStep("gcd", g))
            continue
        changed = False
        for i, c in enumerate(coeffs):
            core = square_free_part(c)
            if core != c:
                s = math.isqrt(c // core)
                coeffs[i] = core
                trail.append(NormalizationStep("squarefree", s, index=i))
                changed = True
        if changed:
            continue
        for i, j, k in ((0, 1, 2), (0, 2, 1), (1, 2, 0)):
            g = math.gcd(coeffs[i], coeffs[j])
            if g > 1:
                p = _smallest_prime(g)
                coeffs[i] //= p
                coeffs[j] //= p
                coeffs[k] *= p
                trail.append(NormalizationStep("transfer", p, index=k, pair=(i, j)))
                changed = True
                break
        if not changed:
            return TernaryForm(*coeffs, trail=tuple(trail))


@dataclass(frozen=True)
class LegendreCondition:
    """``(numerator / prime)`` must equal +1 for the form to be solvable."""

    numerator: int
    prime: int
    value: int
    coefficient: str

    @property
    def holds(self) -> bool:
        return self.value == 1

    def as_dict(self) -> dict:
        return {
            "symbol": f"({self.numerator}/{self.prime})",
            "numerator": self.numerator,
            "prime": self.prime,
            "value": self.value,
            "divides": self.coefficient,
        }


@dataclass(frozen=True)
class TernaryAnalysis:
    original: TernaryForm
    normalized: TernaryForm
    mixed_signs: bool
    conditions: tuple[LegendreCondition, ...]

    @property
    def solvable(self) -> bool:
        return self.mixed_signs and all(c.holds for c in self.conditions)

    @property
    def failing(self) -> tuple[LegendreCondition, ...]:
        return tuple(c for c in self.conditions if not c.holds)

    def as_dict(self) -> dict:
        return {
            "form": list(self.original.coeffs),
            "normalized": list(self.normalized.coeffs),
            "mixed_signs": self.mixed_signs,
            "symbols": [c.as_dict() for c in self.conditions],
            "failing_symbols": [c.as_dict()["symbol"] for c in self.failing],
            "solvable": self.solvable,
        }


def ternary_analysis(form: TernaryForm | Sequence[int]) -> TernaryAnalysis:
    """Normalize, then evaluate the sign condition and every odd-prime Legendre condition."""
    original = form if isinstance(form, TernaryForm) else TernaryForm(*form)
    norm = ternary_normalize(original)
    a, b, c = norm.coeffs
    mixed = not (a > 0 and b > 0 and c > 0) and not (a < 0 and b < 0 and c < 0)
    conds = []
    for name, coef, num in (("A", a, -b * c), ("B", b, -a * c), ("C", c, -a * b)):
        for p in sorted(factorize(abs(coef))):
            if p == 2:
                continue
            conds.append(LegendreCondition(num, p, legendre_symbol(num, p), name))
    return TernaryAnalysis(original, norm, mixed, tuple(conds))


def ternary_solvable(form: TernaryForm | Sequence[int]) -> bool:
    """Whether ``A x^2 + B y^2 + C z^2 = 0`` has a nontrivial integer solution."""
    return ternary_analysis(form).solvable


def ternary_witness_search(form: TernaryForm | Sequence[int], bound: int) -> TernaryWitness | None:
    """First nonzero ``(x, y, z)`` in ``[-bound, bound]^3`` (lexicographic) solving the form.

    Exhaustive; for every ``(x, y)`` the matching ``z`` is looked up in the
    table of squares.  Integer arithmetic only.
    """
    if bound < 1:
        raise ValueError("bound must be >= 1")
    f = form if isinstance(form, TernaryForm) else TernaryForm(*form)
    a, b, c = f.coeffs
    if (abs(a) + abs(b) + abs(c)) * bound * bound >= 2**62:
        return _witness_search_py(a, b, c, bound)
    r = np.arange(-bound, bound + 1, dtype=np.int64)
    sq = r * r
    squares = np.arange(0, bound + 1, dtype=np.int64) ** 2
    # t[x, y] = -(a x^2 + b y^2); need t = c z^2
    t = -(a * sq[:, None] + b * sq[None, :])
    ok = (t % c == 0)
    q = np.where(ok, t // c, -1)
    pos = np.searchsorted(squares, q)
    pos_clipped = np.minimum(pos, bound)
    hit = ok & (q >= 0) & (squares[pos_clipped] == q)
    # (0, 0, 0) is the only hit with q == 0 at x = y = 0
    hit[bound, bound] = False
    xs, ys = np.nonzero(hit)
    if xs.size == 0:
        return None
    # np.nonzero is row-major, so the first hit is lexicographically smallest in (x, y)
    x, y = int(r[xs[0]]), int(r[ys[0]])
    zabs = int(pos_clipped[xs[0], ys[0]])
    return TernaryWitness(x, y, -zabs)


def _witness_search_py(a: int, b: int, c: int, bound: int) -> TernaryWitness | None:
    for x in range(-bound, bound + 1):
        for y in range(-bound, bound + 1):
            t = -(a * x * x + b * y * y)
            if t % c:
                continue
            q = t // c
            if q < 0:
                continue
            z = math.isqrt(q)
            if z * z == q and z <= bound and (x or y or z):
                return TernaryWitness(x, y, -z)
    return None
