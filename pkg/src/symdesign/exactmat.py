"""Exact rational scalars and dense matrices.

``Rat`` is :class:`fractions.Fraction`: always reduced, positive denominator,
zero stored as ``0/1``.  ``RatMatrix`` is an immutable row-major matrix of
``Rat`` entries.  Products are computed on integer numerators after clearing
denominators, which keeps the inner loops on plain ``int``.
"""

from __future__ import annotations

import math
import operator
import re
from fractions import Fraction
from typing import Iterable, Sequence

Rat = Fraction

__all__ = [
    "Rat",
    "RatMatrix",
    "ShapeError",
    "SingularParameterError",
    "InconsistentInputError",
    "MatrixParseError",
    "as_rat",
    "gram_check",
    "jmat_inverse",
    "row_space_preimage",
    "solve_affine",
    "parse_matrix",
    "format_matrix",
    "format_rat",
    "parse_rat",
    "read_matrix",
    "write_matrix",
]


class ShapeError(ValueError):
    """Matrix dimensions do not fit the requested operation."""


class SingularParameterError(ValueError):
    pass


class InconsistentInputError(ValueError):
    pass


class MatrixParseError(ValueError):
    def __init__(self, message: str, line: int, column: int | None = None):
        where = f"line {line}" if column is None else f"line {line}, column {column}"
        super().__init__(f"{where}: {message}")
        self.line = line
        self.column = column


_RAT_RE = re.compile(r"^[+-]?\d+(/\d+)?$")


def parse_rat(token: str) -> Fraction:
    if not _RAT_RE.match(token):
        raise ValueError(f"malformed rational {token!r}")
    if "/" in token:
        p, q = token.split("/")
        if int(q) == 0:
            raise ValueError(f"zero denominator in {token!r}")
        return Fraction(int(p), int(q))
    return Fraction(int(token))


def format_rat(x: Fraction) -> str:
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def as_rat(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floating point values are not accepted; pass int, Fraction or 'p/q'")
    if isinstance(x, str):
        return parse_rat(x.strip())
    return Fraction(x)


def _lcm_den(values: Iterable[Fraction]) -> int:
    d = 1
    for x in values:
        if x.denominator != 1:
            d = math.lcm(d, x.denominator)
    return d


class RatMatrix:
    """Immutable dense matrix over the rationals."""

    __slots__ = ("_rows", "nrows", "ncols", "_hash")

    def __init__(self, rows: Iterable[Iterable]):
        data = tuple(tuple(as_rat(x) for x in r) for r in rows)
        ncols = len(data[0]) if data else 0
        for i, r in enumerate(data):
            if len(r) != ncols:
                raise ShapeError(f"row {i} has {len(r)} entries, expected {ncols}")
        self._rows = data
        self.nrows = len(data)
        self.ncols = ncols
        self._hash = None

    @classmethod
    def _trusted(cls, rows: tuple[tuple[Fraction, ...], ...], ncols: int | None = None) -> RatMatrix:
        m = cls.__new__(cls)
        m._rows = rows
        m.nrows = len(rows)
        m.ncols = len(rows[0]) if rows else (ncols or 0)
        m._hash = None
        return m

    # constructors

    @classmethod
    def identity(cls, n: int) -> RatMatrix:
        one, zero = Fraction(1), Fraction(0)
        return cls._trusted(tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n)))

    @classmethod
    def zeros(cls, m: int, n: int) -> RatMatrix:
        z = Fraction(0)
        return cls._trusted(tuple((z,) * n for _ in range(m)), n)

    @classmethod
    def ones(cls, m: int, n: int) -> RatMatrix:
        o = Fraction(1)
        return cls._trusted(tuple((o,) * n for _ in range(m)), n)

    @classmethod
    def diag(cls, values: Sequence) -> RatMatrix:
        vals = [as_rat(v) for v in values]
        n = len(vals)
        z = Fraction(0)
        return cls._trusted(tuple(tuple(vals[i] if i == j else z for j in range(n)) for i in range(n)))

    @classmethod
    def block(cls, blocks: Sequence[Sequence[RatMatrix]]) -> RatMatrix:
        """Assemble from a grid of blocks; empty (zero-width) blocks are allowed."""
        rows: list[tuple[Fraction, ...]] = []
        for brow in blocks:
            heights = {b.nrows for b in brow}
            if len(heights) != 1:
                raise ShapeError(f"block row has mismatched heights {sorted(heights)}")
            (h,) = heights
            for i in range(h):
                rows.append(tuple(x for b in brow for x in b._rows[i]))
        widths = {len(r) for r in rows}
        if len(widths) > 1:
            raise ShapeError(f"block columns have mismatched widths {sorted(widths)}")
        return cls._trusted(tuple(rows))

    # access

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def rows(self) -> tuple[tuple[Fraction, ...], ...]:
        return self._rows

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self._rows[i]

    def col(self, j: int) -> tuple[Fraction, ...]:
        return tuple(r[j] for r in self._rows)

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self._rows[i][j]

    def entries(self) -> Iterable[Fraction]:
        for r in self._rows:
            yield from r

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RatMatrix):
            return NotImplemented
        return self.shape == other.shape and self._rows == other._rows

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.shape, self._rows))
        return self._hash

    def __repr__(self) -> str:
        return f"RatMatrix({self.nrows}x{self.ncols})"

    def tolist(self) -> list[list[Fraction]]:
        return [list(r) for r in self._rows]

    # arithmetic

    @property
    def T(self) -> RatMatrix:
        if not self._rows:
            return RatMatrix._trusted((), 0)
        return RatMatrix._trusted(tuple(zip(*self._rows)))

    def scale(self, s) -> RatMatrix:
        s = as_rat(s)
        return RatMatrix._trusted(tuple(tuple(s * x for x in r) for r in self._rows), self.ncols)

    def __add__(self, other: RatMatrix) -> RatMatrix:
        if self.shape != other.shape:
            raise ShapeError(f"cannot add {self.shape} and {other.shape}")
        return RatMatrix._trusted(
            tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self._rows, other._rows)), self.ncols
        )

    def __sub__(self, other: RatMatrix) -> RatMatrix:
        return self + other.scale(-1)

    def _int_rows(self) -> tuple[int, list[list[int]]]:
        d = _lcm_den(self.entries())
        return d, [[x.numerator * (d // x.denominator) for x in r] for r in self._rows]

    def __matmul__(self, other: RatMatrix) -> RatMatrix:
        if self.ncols != other.nrows:
            raise ShapeError(f"cannot multiply {self.shape} by {other.shape}")
        da, a = self._int_rows()
        db, b = other._int_rows()
        cols = list(zip(*b)) if b else []
        den = da * db
        out = tuple(
            tuple(Fraction(sum(map(operator.mul, r, c)), den) for c in cols) for r in a
        )
        return RatMatrix._trusted(out, other.ncols)

    def is_zero_one(self) -> bool:
        return all(x == 0 or x == 1 for x in self.entries())


def vecmat(x: Sequence[Fraction], m: RatMatrix) -> list[Fraction]:
    """Row vector times matrix."""
    if len(x) != m.nrows:
        raise ShapeError(f"vector of length {len(x)} against {m.shape}")
    out = [Fraction(0)] * m.ncols
    for xi, r in zip(x, m.rows()):
        if xi:
            for j, rj in enumerate(r):
                if rj:
                    out[j] += xi * rj
    return out


def gram_check(C: RatMatrix, alpha: int, beta: int) -> bool:
    """True iff ``C @ C.T == alpha*I + beta*J`` exactly.

    Only the upper triangle of the Gram matrix is formed.
    """
    if C.ncols < C.nrows:
        raise ShapeError(f"gram check needs cols >= rows, got {C.shape}")
    d, rows = C._int_rows()
    # scaled target: (alpha + beta) * d^2 on the diagonal, beta * d^2 off it
    d2 = d * d
    diag = (alpha + beta) * d2
    off = beta * d2
    for i, ri in enumerate(rows):
        if sum(x * x for x in ri) != diag:
            return False
        for rj in rows[i + 1 :]:
            if sum(map(operator.mul, ri, rj)) != off:
                return False
    return True


def jmat_inverse(alpha, beta, w: int) -> RatMatrix:
    """Closed-form inverse of ``alpha*I_w + beta*J_w``."""
    alpha, beta = as_rat(alpha), as_rat(beta)
    if alpha == 0:
        raise SingularParameterError("alpha = 0 makes alpha*I + beta*J singular")
    if w < 1:
        raise ShapeError("w must be positive")
    denom = alpha + beta * w
    if denom == 0:
        raise SingularParameterError("alpha + beta*w = 0 makes alpha*I + beta*J singular")
    gamma = beta / denom
    on = (1 - gamma) / alpha
    off = -gamma / alpha
    return RatMatrix._trusted(tuple(tuple(on if i == j else off for j in range(w)) for i in range(w)))


def row_space_preimage(C: RatMatrix, alpha, beta) -> RatMatrix:
    """``M = C.T @ (C @ C.T)^-1`` for a ``C`` whose Gram matrix is ``alpha*I + beta*J``.

    Every ``f`` in the row space of ``C`` satisfies ``f = (f @ M) @ C``.
    Built from the closed-form inverse in O(w * cols).
    """
    if not gram_check(C, alpha, beta):
        raise InconsistentInputError(f"C @ C.T != {alpha}*I + {beta}*J")
    w = C.nrows
    alpha, beta = as_rat(alpha), as_rat(beta)
    gamma = beta / (alpha + beta * w)
    colsums = [sum(C.col(j), Fraction(0)) for j in range(C.ncols)]
    rows = C.rows()
    out = tuple(
        tuple((rows[i][j] - gamma * colsums[j]) / alpha for i in range(w)) for j in range(C.ncols)
    )
    return RatMatrix._trusted(out, w)


def solve_affine(L: Sequence[Sequence], r: Sequence) -> tuple[list[Fraction], list[list[Fraction]]] | None:
    """Solve ``L u = r`` exactly.

    Returns ``(u0, basis)`` with ``u0`` a particular solution and ``basis`` a
    list of nullspace vectors, or ``None`` when the system is inconsistent.
    """
    m = len(L)
    n = len(L[0]) if m else 0
    aug = [[as_rat(x) for x in row] + [as_rat(b)] for row, b in zip(L, r)]
    pivots: list[int] = []
    rank = 0
    for col in range(n):
        piv = next((i for i in range(rank, m) if aug[i][col] != 0), None)
        if piv is None:
            continue
        aug[rank], aug[piv] = aug[piv], aug[rank]
        p = aug[rank][col]
        aug[rank] = [x / p for x in aug[rank]]
        for i in range(m):
            if i != rank and aug[i][col] != 0:
                f = aug[i][col]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[rank])]
        pivots.append(col)
        rank += 1
        if rank == m:
            break
    if any(all(x == 0 for x in row[:n]) and row[n] != 0 for row in aug[rank:]):
        return None
    u0 = [Fraction(0)] * n
    for i, col in enumerate(pivots):
        u0[col] = aug[i][n]
    free = [j for j in range(n) if j not in pivots]
    basis = []
    for fj in free:
        vec = [Fraction(0)] * n
        vec[fj] = Fraction(1)
        for i, col in enumerate(pivots):
            vec[col] = -aug[i][fj]
        basis.append(vec)
    return u0, basis


# text format


def parse_matrix(text: str) -> RatMatrix:
    """Parse the ``<rows> <cols>`` header + rows format; ``#`` lines are comments."""
    lines = [(n, ln) for n, ln in enumerate(text.splitlines(), start=1)]
    body = [(n, ln) for n, ln in lines if ln.strip() and not ln.lstrip().startswith("#")]
    if not body:
        raise MatrixParseError("missing '<rows> <cols>' header", 1)
    hline, header = body[0]
    parts = header.split()
    if len(parts) != 2 or not all(p.isdigit() for p in parts):
        raise MatrixParseError(f"bad header {header.strip()!r}", hline, 1)
    nrows, ncols = int(parts[0]), int(parts[1])
    data = body[1:]
    if len(data) != nrows:
        last = data[-1][0] if data else hline
        raise MatrixParseError(f"expected {nrows} rows, found {len(data)}", last)
    rows = []
    for lineno, ln in data:
        tokens = ln.split()
        if len(tokens) != ncols:
            raise MatrixParseError(f"expected {ncols} entries, found {len(tokens)}", lineno)
        row = []
        col = 0
        for t in tokens:
            col = ln.index(t, col) + 1
            try:
                row.append(parse_rat(t))
            except ValueError as e:
                raise MatrixParseError(str(e), lineno, col) from None
            col += len(t) - 1
        rows.append(tuple(row))
    return RatMatrix._trusted(tuple(rows), ncols)


def format_matrix(m: RatMatrix, comment: str | None = None) -> str:
    out = []
    if comment:
        out.extend(f"# {c}" for c in comment.splitlines())
    out.append(f"{m.nrows} {m.ncols}")
    out.extend(" ".join(format_rat(x) for x in r) for r in m.rows())
    return "\n".join(out) + "\n"


def read_matrix(path) -> RatMatrix:
    with open(path, encoding="utf-8") as fh:
        return parse_matrix(fh.read())


def write_matrix(path, m: RatMatrix, comment: str | None = None) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_matrix(m, comment))
