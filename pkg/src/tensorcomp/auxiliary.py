"""Aggregation of tensor entries into the monomial coefficient matrix and
the square zero-padded system behind the companion linear complementarity
problem.

For an order-m, dimension-n tensor the degree-(m-1) map collapses, per output
row i, every stored tuple whose trailing indices have multiplicity vector
``alpha`` into one coefficient. Laying those out over the ordered monomial
basis gives the n-by-N matrix ``coef`` with the majorization matrix as its
pure-power prefix, so ``coef = (M | B)``. Padding with N - n zero rows yields
the square matrix used to pose the companion LCP; a right-hand side q is
padded with zeros the same way.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import monomials
from .linalg import Matrix, Vec, vec
from .monomials import MonomialBasis, MultiIndex
from .tensor import SparseTensor

DEFAULT_DENSE_CAP = 5000


def row_aggregates(t: SparseTensor) -> list[dict[MultiIndex, Fraction]]:
    """Per-row map from trailing-multiplicity vector to summed coefficient."""
    out: list[dict[MultiIndex, Fraction]] = [dict() for _ in range(t.dim)]
    n = t.dim
    for idx, v in t.entries.items():
        alpha = [0] * n
        for k in idx[1:]:
            alpha[k - 1] += 1
        key = tuple(alpha)
        row = out[idx[0] - 1]
        row[key] = row.get(key, Fraction(0)) + v
    for row in out:
        for key in [k for k, v in row.items() if v == 0]:
            del row[key]
    return out


def aggregate_coefficient(t: SparseTensor, i: int, alpha: MultiIndex) -> Fraction:
    """Summed coefficient of the monomial ``x^alpha`` in row i of the
    degree-(m-1) map (i is 1-based)."""
    if sum(alpha) != t.order - 1:
        raise ValueError(f"multi-index degree {sum(alpha)} != {t.order - 1}")
    if len(alpha) != t.dim:
        raise ValueError("multi-index length does not match tensor dimension")
    if not 1 <= i <= t.dim:
        raise ValueError(f"row index {i} out of range")
    total = Fraction(0)
    for idx, v in t.entries.items():
        if idx[0] != i:
            continue
        counts = [0] * t.dim
        for k in idx[1:]:
            counts[k - 1] += 1
        if tuple(counts) == tuple(alpha):
            total += v
    return total


@dataclass(frozen=True)
class AuxiliarySystem:
    """Coefficient matrix of the degree-(m-1) map over the ordered monomial
    basis, together with its zero-padded square form."""

    basis: MonomialBasis
    coef: Matrix
    source: SparseTensor
    dense_cap: int = DEFAULT_DENSE_CAP
    _abar: Matrix | None = field(default=None, repr=False)

    @property
    def n(self) -> int:
        return self.source.dim

    @property
    def size(self) -> int:
        return len(self.basis)

    @property
    def abar(self) -> Matrix | None:
        """Dense square padding, or ``None`` above the materialization cap
        (the padded rows are identically zero either way)."""
        return self._abar

    def abar_row(self, i: int) -> Vec:
        if self._abar is not None:
            return self._abar.data[i]
        if i < self.n:
            return self.coef.data[i]
        return (Fraction(0),) * self.size


def build(t: SparseTensor, dense_cap: int = DEFAULT_DENSE_CAP) -> AuxiliarySystem:
    """Aggregate a tensor into its auxiliary system."""
    mono_basis = monomials.basis(t.order, t.dim)
    agg = row_aggregates(t)
    rows = [
        [agg[i].get(alpha, Fraction(0)) for alpha in mono_basis.labels]
        for i in range(t.dim)
    ]
    coef = Matrix.from_rows(rows) if rows else Matrix.zeros(0, len(mono_basis))
    n, size = t.dim, len(mono_basis)
    # The pure-power prefix is what makes coef = (M | B); check it rather
    # than assume it.
    major = t.majorization()
    if coef.submatrix(range(n), range(n)).data != major.data:
        raise AssertionError("pure-power columns disagree with the majorization matrix")
    abar = None
    if size <= dense_cap:
        padded = list(coef.data) + [(Fraction(0),) * size for _ in range(size - n)]
        abar = Matrix(size, size, tuple(padded))
    return AuxiliarySystem(mono_basis, coef, t, dense_cap, abar)


def split_blocks(system: AuxiliarySystem) -> tuple[Matrix, Matrix]:
    """``coef`` split into the majorization block and the mixed-monomial
    block B."""
    n, size = system.n, system.size
    head = system.coef.submatrix(range(n), range(n))
    tail = system.coef.submatrix(range(n), range(n, size))
    return head, tail


def mixed_block_is_zero(system: AuxiliarySystem) -> bool:
    """Whether B vanishes after aggregation (cancelling entries count as
    zero)."""
    _, b = split_blocks(system)
    return all(x == 0 for row in b.data for x in row)


def pad_rhs(q: Sequence, size: int) -> Vec:
    """q padded with zeros up to the square system's length."""
    qv = vec(q)
    if size < len(qv):
        raise ValueError(f"padded length {size} shorter than q ({len(qv)})")
    return qv + (Fraction(0),) * (size - len(qv))


def lift_solution(x: Sequence, system: AuxiliarySystem, q: Sequence | None = None) -> tuple:
    """Monomial lift of a TCP solution into the padded LCP's variable space.

    When ``q`` is supplied the pair (x, q) is first checked to be an actual
    solution of the tensor problem; lifting a non-solution is refused.
    """
    if q is not None:
        from .tcp import TcpInstance, verify_tcp

        if not verify_tcp(TcpInstance(system.source, vec(q)), x):
            raise ValueError("x does not verify as a solution of the tensor problem")
    return monomials.lift(x, system.basis)


def truncate(y: Sequence, n: int) -> tuple:
    """Keep the first n components, zero the rest."""
    y = tuple(y)
    zero = Fraction(0) if all(isinstance(v, (Fraction, int)) for v in y) else 0.0
    return y[:n] + (zero,) * (len(y) - n)
