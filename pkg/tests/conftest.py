"""Shared fixtures: the worked-example tensors and independent oracles.

The oracles here recompute results by brute force (dense index iteration,
symbolic expansion) so the tests do not reuse the code paths they check.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction as Q

import pytest

from tensorcomp import SparseTensor, vec
from tensorcomp.linalg import Matrix


# --- example tensors -------------------------------------------------------

@pytest.fixture
def diag_cubic():
    """Order-3 tensor with unit diagonal: quadratic map (x1^2, x2^2)."""
    return SparseTensor(3, 2, {(1, 1, 1): 1, (2, 2, 2): 1})


@pytest.fixture
def adequate_quartic():
    """Cubic map ((2x1+x2)x1^2, 2(2x1+x2)x2^2); adequate, not P, not PSD."""
    return SparseTensor(4, 2, {(1, 1, 1, 1): 2, (1, 1, 1, 2): 1,
                               (2, 1, 2, 2): 4, (2, 2, 2, 2): 2})


@pytest.fixture
def psd_quartic():
    """Degree-4 form collapses to x1^4."""
    return SparseTensor(4, 2, {(1, 1, 1, 1): 1, (1, 1, 1, 2): -1, (2, 1, 1, 1): 1})


@pytest.fixture
def p0_quartic():
    """P0 (form x1^4) but not adequate: cubic map (x1^3-x2^3, x1 x2^2)."""
    return SparseTensor(4, 2, {(1, 1, 1, 1): 1, (1, 2, 2, 2): -1, (2, 2, 2, 1): 1})


@pytest.fixture
def sufficient_quartic():
    """Column sufficient, not adequate: cubic map (-2x1^2 x2, x1^3+x2^3)."""
    return SparseTensor(4, 2, {(1, 1, 1, 2): -2, (2, 1, 1, 1): 1, (2, 2, 2, 2): 1})


@pytest.fixture
def weak_cubic():
    """Single entry a111 = 1; weak adequate, not adequate."""
    return SparseTensor(3, 2, {(1, 1, 1): 1})


@pytest.fixture
def block_quartic():
    """Mixed entries cancel under aggregation; coef = ((1,-1,0,0),(-1,1,0,0))."""
    return SparseTensor(4, 2, {
        (1, 1, 1, 1): 1, (2, 2, 2, 2): 1, (1, 2, 2, 2): -1, (2, 1, 1, 1): -1,
        (1, 1, 2, 1): 3, (1, 1, 1, 2): -2, (1, 2, 1, 1): -1,
    })


@pytest.fixture
def rowdiag_quartic():
    return SparseTensor(4, 2, {(1, 1, 1, 1): 3, (2, 2, 2, 2): 1,
                               (1, 2, 2, 2): -2, (2, 1, 1, 1): 1})


@pytest.fixture
def major_quartic():
    """Majorization ((1,-1),(0,2)); includes an explicit zero entry."""
    return SparseTensor(4, 2, {(1, 1, 1, 1): 1, (1, 2, 2, 2): -1, (2, 1, 1, 2): 3,
                               (2, 1, 1, 1): 0, (1, 1, 1, 2): -2, (2, 2, 2, 2): 2})


@pytest.fixture
def sub_cubic():
    """Order-3 dim-3 tensor for principal sub-tensor extraction."""
    return SparseTensor(3, 3, {(1, 1, 1): 2, (2, 2, 2): -1, (3, 3, 3): 2,
                               (2, 2, 3): -2, (2, 3, 2): 1, (2, 3, 3): -1})


@pytest.fixture
def aux_quartic():
    """Cubic map (x1^3 - 2x1^2 x2 + x1 x2^2, x2^3)."""
    return SparseTensor(4, 2, {(1, 1, 1, 1): 1, (1, 1, 1, 2): -2,
                               (1, 1, 2, 2): 1, (2, 2, 2, 2): 1})


# --- oracles ---------------------------------------------------------------

def oracle_apply_deg(t: SparseTensor, x):
    """Dense evaluation over all of [n]^(m-1), independent of the sparse
    iteration in the implementation."""
    n, m = t.dim, t.order
    out = []
    for i in range(1, n + 1):
        total = Q(0)
        for tail in itertools.product(range(1, n + 1), repeat=m - 1):
            c = t.entry((i,) + tail)
            if c:
                term = c
                for k in tail:
                    term *= x[k - 1]
                total += term
        out.append(total)
    return out


def oracle_apply_full(t: SparseTensor, x):
    n, m = t.dim, t.order
    total = Q(0)
    for idx in itertools.product(range(1, n + 1), repeat=m):
        c = t.entry(idx)
        if c:
            term = c
            for k in idx:
                term *= x[k - 1]
            total += term
    return total


def oracle_coefficient(t: SparseTensor, i: int, alpha) -> Q:
    """Symbolic expansion via sympy, read back as an exact coefficient."""
    import sympy

    xs = sympy.symbols(f"x1:{t.dim + 1}")
    poly = sympy.Integer(0)
    for idx, v in t.entries.items():
        if idx[0] != i:
            continue
        term = sympy.Rational(v.numerator, v.denominator)
        for k in idx[1:]:
            term *= xs[k - 1]
        poly += term
    poly = sympy.expand(poly)
    mono = sympy.Integer(1)
    for a, s in zip(alpha, xs):
        mono *= s ** a
    coeff = sympy.Poly(poly, *xs).coeff_monomial(mono) if poly != 0 else sympy.Integer(0)
    coeff = sympy.Rational(coeff)
    return Q(int(coeff.p), int(coeff.q))


# --- random generators -----------------------------------------------------

def random_tensor(rng: random.Random, m: int, n: int, nnz: int | None = None,
                  denom: int = 3, lo: int = -4, hi: int = 4) -> SparseTensor:
    if nnz is None:
        nnz = rng.randint(2, 2 * n + 3)
    entries = []
    for _ in range(nnz):
        idx = tuple(rng.randint(1, n) for _ in range(m))
        num = 0
        while num == 0:
            num = rng.randint(lo, hi)
        entries.append((idx, Q(num, rng.randint(1, denom))))
    return SparseTensor(m, n, entries)


def random_vector(rng: random.Random, n: int, denom: int = 3, lo: int = -4, hi: int = 4):
    return vec([Q(rng.randint(lo, hi), rng.randint(1, denom)) for _ in range(n)])


def random_matrix(rng: random.Random, k: int, denom: int = 3, lo: int = -6, hi: int = 6) -> Matrix:
    return Matrix.from_rows([
        [Q(rng.randint(lo, hi), rng.randint(1, denom)) for _ in range(k)]
        for _ in range(k)
    ])
