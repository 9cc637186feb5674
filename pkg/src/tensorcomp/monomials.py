"""Fixed-degree multi-indices and the orderings on them.

A multi-index ``alpha`` is a tuple of nonnegative integer exponents; the
monomial ``x^alpha`` is ``x_1^a1 * ... * x_n^an``. Three strict orders are
provided:

* ``lex_compare`` -- sign of the leftmost nonzero entry of ``alpha - beta``;
* ``grlex_compare`` -- total degree first, then lex;
* ``mglo_compare`` -- pure powers (exactly one nonzero exponent) outrank
  every mixed multi-index; pure powers compare by lex among themselves and
  mixed ones by grlex.

The third order fixes the column labelling of the degree-(m-1) coefficient
matrix: its point is that the first n columns are the pure powers
``x_1^{m-1}, ..., x_n^{m-1}`` in that order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key
from itertools import combinations

MultiIndex = tuple[int, ...]


def _check_pair(alpha: MultiIndex, beta: MultiIndex) -> None:
    if len(alpha) != len(beta):
        raise ValueError(f"length mismatch: {len(alpha)} vs {len(beta)}")


def lex_compare(alpha: MultiIndex, beta: MultiIndex) -> int:
    """-1, 0 or 1; positive when ``alpha`` is lexicographically greater."""
    _check_pair(alpha, beta)
    for a, b in zip(alpha, beta):
        if a != b:
            return 1 if a > b else -1
    return 0


def grlex_compare(alpha: MultiIndex, beta: MultiIndex) -> int:
    _check_pair(alpha, beta)
    da, db = sum(alpha), sum(beta)
    if da != db:
        return 1 if da > db else -1
    return lex_compare(alpha, beta)


def is_pure_power(alpha: MultiIndex) -> bool:
    """Exactly one nonzero exponent (which then equals the degree)."""
    return sum(1 for a in alpha if a != 0) == 1


def mglo_compare(alpha: MultiIndex, beta: MultiIndex) -> int:
    # The all-zero multi-index has no nonzero component; it falls through to
    # the grlex branch, which keeps the order total on all exponent vectors.
    _check_pair(alpha, beta)
    pa, pb = is_pure_power(alpha), is_pure_power(beta)
    if pa and pb:
        return lex_compare(alpha, beta)
    if pa:
        return 1
    if pb:
        return -1
    return grlex_compare(alpha, beta)


def degree_slice(degree: int, n: int) -> list[MultiIndex]:
    """All multi-indices over n variables of the given total degree."""
    if n < 1 or degree < 0:
        raise ValueError("need n >= 1 and degree >= 0")
    out = []
    # stars and bars: bar positions inside degree + n - 1 slots
    for bars in combinations(range(degree + n - 1), n - 1):
        prev = -1
        parts = []
        for b in bars:
            parts.append(b - prev - 1)
            prev = b
        parts.append(degree + n - 1 - prev - 1)
        out.append(tuple(parts))
    return out


def basis_size(m: int, n: int) -> int:
    return math.comb(m + n - 2, n - 1)


@dataclass(frozen=True)
class MonomialBasis:
    """Ordered degree-(m-1) monomial labels for an order-m, dim-n tensor."""

    order: int
    dim: int
    labels: tuple[MultiIndex, ...]

    def __post_init__(self) -> None:
        if len(self.labels) != basis_size(self.order, self.dim):
            raise ValueError("label count does not match the binomial count")
        n = self.dim
        deg = self.order - 1
        for i in range(n):
            expected = tuple(deg if j == i else 0 for j in range(n))
            if self.labels[i] != expected:
                raise ValueError("pure powers must prefix the basis in coordinate order")
        for a, b in zip(self.labels, self.labels[1:]):
            if mglo_compare(a, b) <= 0:
                raise ValueError("labels must strictly decrease")

    def __len__(self) -> int:
        return len(self.labels)

    def index_of(self, alpha: MultiIndex) -> int:
        return self.labels.index(alpha)


def basis(m: int, n: int) -> MonomialBasis:
    """All degree-(m-1) monomials over n variables, strictly decreasing."""
    if m < 2 or n < 1:
        raise ValueError("need m >= 2 and n >= 1")
    labels = sorted(degree_slice(m - 1, n), key=cmp_to_key(mglo_compare), reverse=True)
    return MonomialBasis(m, n, tuple(labels))


def evaluate(alpha: MultiIndex, x) -> "Fraction | float":
    """Value of x^alpha with the convention 0^0 = 1."""
    if len(alpha) != len(x):
        raise ValueError(f"length mismatch: {len(alpha)} vs {len(x)}")
    out: Fraction | float = Fraction(1)
    for a, xi in zip(alpha, x):
        if a:
            out = out * xi ** a
    return out


def lift(x, mono_basis: MonomialBasis):
    """Monomial lift of x: component j is the j-th basis label evaluated at x."""
    if len(x) != mono_basis.dim:
        raise ValueError(f"length mismatch: {len(x)} vs dim {mono_basis.dim}")
    return tuple(evaluate(a, x) for a in mono_basis.labels)


def label_text(alpha: MultiIndex) -> str:
    """Human-readable monomial, e.g. (2,1,0) -> ``x1^2*x2``."""
    parts = []
    for i, a in enumerate(alpha, start=1):
        if a == 1:
            parts.append(f"x{i}")
        elif a > 1:
            parts.append(f"x{i}^{a}")
    return "*".join(parts) if parts else "1"
