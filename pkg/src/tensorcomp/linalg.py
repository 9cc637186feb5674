"""Exact rational vectors and matrices.

Small dense kernels over :class:`fractions.Fraction`. All sign decisions in
the pivoting engines go through this module, so there are no float code
paths here; float work lives next to the numeric searchers that need it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

Scalar = Union[int, str, Fraction]

Vec = tuple[Fraction, ...]


def frac(x: Scalar) -> Fraction:
    """Coerce ints, Fractions and strings like ``-3/4`` or ``0.25``."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


def vec(xs: Iterable[Scalar]) -> Vec:
    return tuple(frac(x) for x in xs)


def zero_vec(n: int) -> Vec:
    return (Fraction(0),) * n


def dot(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    if len(u) != len(v):
        raise ValueError(f"length mismatch: {len(u)} vs {len(v)}")
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def vadd(u: Sequence[Fraction], v: Sequence[Fraction]) -> Vec:
    return tuple(a + b for a, b in zip(u, v))


def vsub(u: Sequence[Fraction], v: Sequence[Fraction]) -> Vec:
    return tuple(a - b for a, b in zip(u, v))


def vscale(c: Fraction, u: Sequence[Fraction]) -> Vec:
    return tuple(c * a for a in u)


def is_zero_vec(u: Sequence[Fraction]) -> bool:
    return all(a == 0 for a in u)


def is_nonneg(u: Sequence[Fraction]) -> bool:
    return all(a >= 0 for a in u)


@dataclass(frozen=True)
class Matrix:
    """Dense rational matrix with row-major immutable storage."""

    rows: int
    cols: int
    data: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self) -> None:
        if self.rows < 0 or self.cols < 0:
            raise ValueError("negative dimensions")
        if len(self.data) != self.rows or any(len(r) != self.cols for r in self.data):
            raise ValueError("data shape inconsistent with declared dimensions")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Scalar]]) -> "Matrix":
        data = tuple(tuple(frac(x) for x in row) for row in rows)
        ncols = len(data[0]) if data else 0
        return cls(len(data), ncols, data)

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls(n, n, tuple(
            tuple(Fraction(1 if i == j else 0) for j in range(n)) for i in range(n)
        ))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        return cls(rows, cols, tuple((Fraction(0),) * cols for _ in range(rows)))

    @classmethod
    def diagonal(cls, entries: Sequence[Scalar]) -> "Matrix":
        d = vec(entries)
        n = len(d)
        return cls(n, n, tuple(
            tuple(d[i] if i == j else Fraction(0) for j in range(n)) for i in range(n)
        ))

    def row(self, i: int) -> Vec:
        return self.data[i]

    def col(self, j: int) -> Vec:
        return tuple(r[j] for r in self.data)

    def mul_vec(self, v: Sequence[Fraction]) -> Vec:
        if len(v) != self.cols:
            raise ValueError(f"dimension mismatch: {self.cols}-column matrix, length-{len(v)} vector")
        return tuple(dot(r, v) for r in self.data)

    def matmul(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise ValueError("inner dimensions do not match")
        cols = other.transpose().data
        return Matrix(self.rows, other.cols, tuple(
            tuple(dot(r, c) for c in cols) for r in self.data
        ))

    def transpose(self) -> "Matrix":
        return Matrix(self.cols, self.rows, tuple(
            tuple(self.data[i][j] for i in range(self.rows)) for j in range(self.cols)
        ))

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "Matrix":
        return Matrix(len(rows), len(cols), tuple(
            tuple(self.data[i][j] for j in cols) for i in rows
        ))

    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_diagonal(self) -> bool:
        return self.is_square() and all(
            self.data[i][j] == 0
            for i in range(self.rows) for j in range(self.cols) if i != j
        )

    def is_permutation(self) -> bool:
        if not self.is_square():
            return False
        n = self.rows
        for row in self.data:
            if sum(1 for x in row if x == 1) != 1 or any(x not in (0, 1) for x in row):
                return False
        return all(sum(1 for i in range(n) if self.data[i][j] == 1) == 1 for j in range(n))

    def __iter__(self):
        return iter(self.data)


def _forward_eliminate(m: list[list[Fraction]]) -> list[int]:
    """In-place row echelon reduction; returns the pivot column list."""
    if not m:
        return []
    n_rows, n_cols = len(m), len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(n_cols):
        if r >= n_rows:
            break
        p = next((i for i in range(r, n_rows) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(n_rows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return pivots


def rref(rows: Sequence[Sequence[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    m = [list(r) for r in rows]
    pivots = _forward_eliminate(m)
    return m, pivots


def rank(rows: Sequence[Sequence[Fraction]]) -> int:
    return len(rref(rows)[1])


def nullspace(rows: Sequence[Sequence[Fraction]], n_cols: int | None = None) -> list[Vec]:
    """Basis of the kernel of the matrix given by ``rows``."""
    if n_cols is None:
        if not rows:
            raise ValueError("cannot infer column count from an empty row list")
        n_cols = len(rows[0])
    if not rows:
        return [tuple(Fraction(1 if j == i else 0) for j in range(n_cols)) for i in range(n_cols)]
    red, pivots = rref(rows)
    free = [c for c in range(n_cols) if c not in pivots]
    basis: list[Vec] = []
    for f in free:
        v = [Fraction(0)] * n_cols
        v[f] = Fraction(1)
        for r, c in enumerate(pivots):
            v[c] = -red[r][f]
        basis.append(tuple(v))
    return basis


def solve_affine(
    rows: Sequence[Sequence[Fraction]],
    rhs: Sequence[Fraction],
) -> tuple[Vec, list[Vec]] | None:
    """Full solution set of ``A x = b``.

    Returns ``(particular, kernel_basis)`` or ``None`` when inconsistent.
    """
    if len(rows) != len(rhs):
        raise ValueError("row/rhs length mismatch")
    if not rows:
        raise ValueError("empty system; column count unknown")
    n_cols = len(rows[0])
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    red, pivots = rref(aug)
    if n_cols in pivots:
        return None
    particular = [Fraction(0)] * n_cols
    for r, c in enumerate(pivots):
        particular[c] = red[r][n_cols]
    kernel = nullspace([r[:n_cols] for r in red[: len(pivots)]], n_cols) if pivots else \
        nullspace([], n_cols)
    return tuple(particular), kernel


def invert(m: Matrix) -> Matrix | None:
    """Exact inverse, or ``None`` when singular."""
    if not m.is_square():
        raise ValueError("inverse of a non-square matrix")
    n = m.rows
    aug = [list(m.data[i]) + [Fraction(1 if j == i else 0) for j in range(n)] for i in range(n)]
    _, pivots = (lambda a: (a, _forward_eliminate(a)))(aug)
    if pivots != list(range(n)):
        return None
    return Matrix(n, n, tuple(tuple(row[n:]) for row in aug))


def in_span(basis: Sequence[Sequence[Fraction]], v: Sequence[Fraction]) -> bool:
    """Whether ``v`` lies in the span of ``basis``."""
    if is_zero_vec(v):
        return True
    if not basis:
        return False
    cols = list(basis)
    system = [[cols[k][i] for k in range(len(cols))] for i in range(len(v))]
    return solve_affine(system, list(v)) is not None
