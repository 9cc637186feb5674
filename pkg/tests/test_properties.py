"""Property-based invariants over randomly generated instances."""

from fractions import Fraction as Q

from hypothesis import given, settings, strategies as st

from tensorcomp import (
    LcpInstance, SparseTensor, basis, build, enumerate_solutions,
    lemke_solve, lift, transform_perm, vec, verify,
)
from tensorcomp.auxiliary import mixed_block_is_zero, row_aggregates
from tensorcomp.lcp import LemkeOutcome, piece_contains
from tensorcomp.linalg import Matrix
from tensorcomp.monomials import mglo_compare

fractions = st.builds(
    Q, st.integers(min_value=-6, max_value=6), st.integers(min_value=1, max_value=4))
nonzero_fractions = fractions.filter(lambda f: f != 0)


@st.composite
def tensors(draw, orders=(2, 3, 4), dims=(1, 2, 3)):
    m = draw(st.sampled_from(orders))
    n = draw(st.sampled_from(dims))
    nnz = draw(st.integers(min_value=0, max_value=6))
    entries = []
    for _ in range(nnz):
        idx = tuple(draw(st.integers(min_value=1, max_value=n)) for _ in range(m))
        entries.append((idx, draw(nonzero_fractions)))
    return SparseTensor(m, n, entries)


@st.composite
def tensor_with_vector(draw, **kw):
    t = draw(tensors(**kw))
    x = vec([draw(fractions) for _ in range(t.dim)])
    return t, x


class TestTensorIdentities:
    @settings(max_examples=80, deadline=None)
    @given(tensor_with_vector())
    def test_full_form_is_dot_product(self, tx):
        t, x = tx
        g = t.apply_deg(x)
        assert t.apply_full(x) == sum(a * b for a, b in zip(x, g))

    @settings(max_examples=60, deadline=None)
    @given(tensor_with_vector(), fractions)
    def test_homogeneity(self, tx, c):
        t, x = tx
        scaled = t.apply_deg([c * v for v in x])
        assert scaled == [c ** (t.order - 1) * v for v in t.apply_deg(x)]

    @settings(max_examples=60, deadline=None)
    @given(tensor_with_vector(), st.randoms(use_true_random=False))
    def test_subtensor_padding(self, tx, rng):
        t, x = tx
        j = sorted(rng.sample(range(1, t.dim + 1), rng.randint(1, t.dim)))
        x_masked = [v if (i + 1) in j else Q(0) for i, v in enumerate(x)]
        x_sub = [x_masked[i - 1] for i in j]
        full = t.apply_deg(x_masked)
        sub = t.principal_subtensor(j).apply_deg(x_sub)
        for pos, i in enumerate(j):
            assert full[i - 1] == sub[pos]

    @settings(max_examples=60, deadline=None)
    @given(tensors(dims=(2, 3)), st.randoms(use_true_random=False))
    def test_perm_conjugation_round_trip(self, t, rng):
        perm = list(range(t.dim))
        rng.shuffle(perm)
        p = Matrix.from_rows([
            [1 if perm[i] == j else 0 for j in range(t.dim)] for i in range(t.dim)])
        assert transform_perm(transform_perm(t, p), p.transpose()) == t


class TestAggregation:
    @settings(max_examples=60, deadline=None)
    @given(tensor_with_vector(orders=(3, 4), dims=(2, 3)))
    def test_factorization_identity(self, tx):
        t, x = tx
        system = build(t)
        assert t.apply_deg(x) == list(system.coef.mul_vec(lift(x, system.basis)))

    @settings(max_examples=60, deadline=None)
    @given(tensors(orders=(3, 4), dims=(2, 3)))
    def test_mixed_block_matches_aggregates(self, t):
        structural = all(
            sum(1 for a in alpha if a) == 1
            for row in row_aggregates(t) for alpha in row)
        assert mixed_block_is_zero(build(t)) == structural

    @settings(max_examples=40, deadline=None)
    @given(tensors(orders=(3, 4), dims=(2, 3)))
    def test_coefficient_prefix_is_majorization(self, t):
        system = build(t)
        n = t.dim
        head = system.coef.submatrix(range(n), range(n))
        assert head == t.majorization()


class TestOrderings:
    @settings(max_examples=120, deadline=None)
    @given(st.lists(st.integers(min_value=0, max_value=4), min_size=1, max_size=4),
           st.lists(st.integers(min_value=0, max_value=4), min_size=1, max_size=4))
    def test_mglo_antisymmetric_total(self, a, b):
        n = max(len(a), len(b))
        a = tuple(a + [0] * (n - len(a)))
        b = tuple(b + [0] * (n - len(b)))
        assert mglo_compare(a, b) == -mglo_compare(b, a)
        assert (mglo_compare(a, b) == 0) == (a == b)

    @settings(max_examples=80, deadline=None)
    @given(st.integers(min_value=2, max_value=5), st.integers(min_value=1, max_value=4))
    def test_basis_lift_prefix(self, m, n):
        b = basis(m, n)
        x = vec(range(1, n + 1))
        y = lift(x, b)
        for i in range(n):
            assert y[i] == x[i] ** (m - 1)


@st.composite
def lcp_instances(draw, max_size=3):
    k = draw(st.integers(min_value=1, max_value=max_size))
    m = Matrix.from_rows([[draw(fractions) for _ in range(k)] for _ in range(k)])
    q = vec([draw(fractions) for _ in range(k)])
    return LcpInstance(m, q)


class TestLcpSoundness:
    @settings(max_examples=50, deadline=None)
    @given(lcp_instances())
    def test_lemke_output_verifies(self, inst):
        r = lemke_solve(inst)
        if r.outcome == LemkeOutcome.SOLVED:
            assert verify(inst, r.z)
            assert r.w == inst.w_of(r.z)

    @settings(max_examples=40, deadline=None)
    @given(lcp_instances())
    def test_pieces_sound_and_contain_lemke_point(self, inst):
        pieces = enumerate_solutions(inst)
        for p in pieces:
            for v in p.vertices:
                assert verify(inst, v)
        r = lemke_solve(inst)
        if r.outcome == LemkeOutcome.SOLVED:
            assert any(piece_contains(inst, p, r.z) for p in pieces)
