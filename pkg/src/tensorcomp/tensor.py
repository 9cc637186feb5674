"""Sparse real tensors with exact rational coefficients.

An order-m, dimension-n tensor stores a map from 1-based index tuples
``(i1, ..., im)`` to nonzero :class:`~fractions.Fraction` values. Zero
coefficients are never stored, and duplicate tuples passed to the
constructors are summed, so structural questions (row-diagonality, empty
mixed block) reduce to key inspection.

Vectors handed to the evaluation maps are plain sequences indexed from 0;
Fractions keep evaluation exact, floats flow through unchanged.
"""

from __future__ import annotations

import math
from fractions import Fraction
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence

from .linalg import Matrix, Scalar, frac

IndexTuple = tuple[int, ...]


class SparseTensor:
    """Immutable sparse tensor of fixed order and dimension."""

    __slots__ = ("order", "dim", "_entries", "_float_cache")

    def __init__(
        self,
        order: int,
        dim: int,
        entries: Mapping[IndexTuple, Scalar] | Iterable[tuple[IndexTuple, Scalar]] = (),
    ):
        if order < 2:
            raise ValueError(f"order must be at least 2, got {order}")
        if dim < 1:
            raise ValueError(f"dimension must be at least 1, got {dim}")
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "dim", dim)
        items = entries.items() if isinstance(entries, Mapping) else entries
        acc: dict[IndexTuple, Fraction] = {}
        for idx, value in items:
            idx = tuple(idx)
            if len(idx) != order:
                raise ValueError(f"index tuple {idx} does not have {order} components")
            for i in idx:
                if not isinstance(i, int) or not 1 <= i <= dim:
                    raise ValueError(f"index {i} out of range [1, {dim}] in tuple {idx}")
            acc[idx] = acc.get(idx, Fraction(0)) + frac(value)
        object.__setattr__(
            self, "_entries", MappingProxyType({k: v for k, v in acc.items() if v != 0})
        )
        object.__setattr__(self, "_float_cache", None)

    def __setattr__(self, name, value):  # pragma: no cover - guard only
        raise AttributeError("SparseTensor is immutable")

    @property
    def entries(self) -> Mapping[IndexTuple, Fraction]:
        return self._entries

    @property
    def nnz(self) -> int:
        return len(self._entries)

    def entry(self, idx: IndexTuple) -> Fraction:
        return self._entries.get(tuple(idx), Fraction(0))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SparseTensor)
            and self.order == other.order
            and self.dim == other.dim
            and dict(self._entries) == dict(other._entries)
        )

    def __hash__(self) -> int:
        return hash((self.order, self.dim, frozenset(self._entries.items())))

    def __repr__(self) -> str:
        return f"SparseTensor(order={self.order}, dim={self.dim}, nnz={self.nnz})"

    def _float_entries(self) -> list[tuple[int, IndexTuple, float]]:
        cached = self._float_cache
        if cached is None:
            cached = [(idx[0], idx[1:], float(v)) for idx, v in self._entries.items()]
            object.__setattr__(self, "_float_cache", cached)
        return cached

    def apply_deg(self, x: Sequence) -> list:
        """The degree-(m-1) polynomial map: component i sums
        ``a[i, i2, ..., im] * x[i2] * ... * x[im]`` over stored tuples."""
        if len(x) != self.dim:
            raise ValueError(f"dimension mismatch: tensor dim {self.dim}, vector length {len(x)}")
        exact = all(isinstance(v, (Fraction, int)) for v in x)
        out: list = [Fraction(0) if exact else 0.0] * self.dim
        for idx, coeff in self._entries.items():
            term = coeff
            for k in idx[1:]:
                term = term * x[k - 1]
            out[idx[0] - 1] += term
        return out

    def apply_full(self, x: Sequence):
        """The degree-m form: the dot product of x with ``apply_deg(x)``."""
        if len(x) != self.dim:
            raise ValueError(f"dimension mismatch: tensor dim {self.dim}, vector length {len(x)}")
        g = self.apply_deg(x)
        return sum(xi * gi for xi, gi in zip(x, g))

    def apply_deg_float(self, x: Sequence[float]) -> list[float]:
        """Float-only evaluation for the numeric searchers."""
        out = [0.0] * self.dim
        for i, tail, coeff in self._float_entries():
            term = coeff
            for k in tail:
                term *= x[k - 1]
            out[i - 1] += term
        return out

    def apply_deg_abs_float(self, x: Sequence[float]) -> list[float]:
        """Componentwise sum of absolute evaluated terms: the roundoff
        ceiling of ``apply_deg_float`` used for per-row tolerances."""
        out = [0.0] * self.dim
        for i, tail, coeff in self._float_entries():
            term = abs(coeff)
            for k in tail:
                term *= abs(x[k - 1])
            out[i - 1] += term
        return out

    def jacobian_float(self, x: Sequence[float]) -> list[list[float]]:
        """Jacobian of the degree-(m-1) map at x, in float arithmetic."""
        n = self.dim
        jac = [[0.0] * n for _ in range(n)]
        for i, tail, coeff in self._float_entries():
            for p in range(len(tail)):
                term = coeff
                for s, k in enumerate(tail):
                    if s != p:
                        term *= x[k - 1]
                jac[i - 1][tail[p] - 1] += term
        return jac

    def principal_subtensor(self, subset: Iterable[int]) -> "SparseTensor":
        """Restriction to index subset J, reindexed order-preservingly onto
        ``1..|J|``."""
        j = sorted(set(subset))
        if not j:
            raise ValueError("principal sub-tensor needs a nonempty index set")
        if any(not 1 <= i <= self.dim for i in j):
            raise ValueError(f"index set {j} not contained in [1, {self.dim}]")
        pos = {old: new for new, old in enumerate(j, start=1)}
        kept = {
            tuple(pos[i] for i in idx): v
            for idx, v in self._entries.items()
            if all(i in pos for i in idx)
        }
        return SparseTensor(self.order, len(j), kept)

    def majorization(self) -> Matrix:
        """The n-by-n matrix with entry (i, j) the coefficient at
        ``(i, j, j, ..., j)``."""
        n = self.dim
        m = self.order
        return Matrix.from_rows([
            [self.entry((i,) + (j,) * (m - 1)) for j in range(1, n + 1)]
            for i in range(1, n + 1)
        ])

    def is_row_diagonal(self) -> bool:
        """True when every stored tuple has all trailing indices equal."""
        return all(len(set(idx[1:])) == 1 for idx in self._entries)

    def scale(self, c: Scalar) -> "SparseTensor":
        f = frac(c)
        if f == 0:
            return SparseTensor(self.order, self.dim, {})
        return SparseTensor(self.order, self.dim, {k: f * v for k, v in self._entries.items()})


def identity_tensor(order: int, dim: int) -> SparseTensor:
    """Delta entries only: 1 where all indices coincide."""
    if order < 2 or dim < 1:
        raise ValueError("need order >= 2 and dim >= 1")
    return SparseTensor(order, dim, {(i,) * order: Fraction(1) for i in range(1, dim + 1)})


def from_majorization(m: Matrix, order: int) -> SparseTensor:
    """The row-diagonal tensor whose majorization matrix is ``m``; this is
    the product of ``m`` with the identity tensor."""
    if not m.is_square():
        raise ValueError("majorization matrix must be square")
    entries = {}
    for i in range(m.rows):
        for j in range(m.cols):
            if m.data[i][j] != 0:
                entries[(i + 1,) + (j + 1,) * (order - 1)] = m.data[i][j]
    return SparseTensor(order, m.rows, entries)


def transform_diag(t: SparseTensor, p: Matrix, q: Matrix) -> SparseTensor:
    """Two-sided diagonal scaling: the entry at ``(i1, ..., im)`` becomes
    ``p[i1] * a[i1, ..., im] * q[i2] * ... * q[im]``."""
    n = t.dim
    if p.rows != n or p.cols != n or q.rows != n or q.cols != n:
        raise ValueError("scaling matrices must be n-by-n")
    if not p.is_diagonal() or not q.is_diagonal():
        raise ValueError("both scaling matrices must be diagonal")
    pd = [p.data[i][i] for i in range(n)]
    qd = [q.data[i][i] for i in range(n)]
    out: dict[IndexTuple, Fraction] = {}
    for idx, v in t.entries.items():
        coeff = pd[idx[0] - 1] * v
        for k in idx[1:]:
            coeff *= qd[k - 1]
        if coeff != 0:
            out[idx] = coeff
    return SparseTensor(t.order, t.dim, out)


def transform_perm(t: SparseTensor, p: Matrix) -> SparseTensor:
    """Conjugation by a permutation matrix: with sigma the permutation
    satisfying ``p[i, sigma(i)] = 1``, the entry at ``(i1, ..., im)`` moves
    to ``(sigma(i1), ..., sigma(im))``."""
    if not p.is_permutation():
        raise ValueError("transform_perm needs a permutation matrix")
    if p.rows != t.dim:
        raise ValueError("permutation size does not match tensor dimension")
    sigma = {}
    for i in range(p.rows):
        for j in range(p.cols):
            if p.data[i][j] == 1:
                sigma[i + 1] = j + 1
    moved = {tuple(sigma[i] for i in idx): v for idx, v in t.entries.items()}
    return SparseTensor(t.order, t.dim, moved)


def power_vector(x: Sequence, k: int) -> list:
    """Componentwise k-th power."""
    return [xi ** k for xi in x]


def full_form_aggregates(t: SparseTensor) -> dict[tuple[int, ...], Fraction]:
    """Coefficients of the degree-m form ``x -> A x^m`` by monomial: the
    multiplicity vector of the whole index tuple keyed to the summed entry.

    Only the symmetric part of the tensor survives here, which is what the
    positive-semidefiniteness check needs.
    """
    out: dict[tuple[int, ...], Fraction] = {}
    n = t.dim
    for idx, v in t.entries.items():
        alpha = [0] * n
        for i in idx:
            alpha[i - 1] += 1
        key = tuple(alpha)
        out[key] = out.get(key, Fraction(0)) + v
    return {k: v for k, v in out.items() if v != 0}


def float_norm(x: Sequence[float]) -> float:
    return math.sqrt(sum(v * v for v in x))
