import random
from fractions import Fraction as Q

import pytest

from conftest import random_tensor
from tensorcomp import SparseTensor, identity_tensor, transform_diag, transform_perm, vec
from tensorcomp.classes import (
    ClassQuery, SearchBudget, check, check_column_adequate,
    check_column_sufficient, check_p, check_p0, check_psd, check_row_diagonal,
    check_semi_positive, check_weak_column_adequate, check_weak_p0,
    normalize_class_name,
)
from tensorcomp.linalg import Matrix
from tensorcomp.verdicts import VerdictStatus

HOLDS, FAILS, UNKNOWN = VerdictStatus.HOLDS, VerdictStatus.FAILS, VerdictStatus.UNKNOWN

FAST = SearchBudget(seeds=1, samples=400, descent_rounds=4, descent_steps=30)


def assert_adequacy_violation(t, cex):
    g = t.apply_deg(cex.point)
    assert all(xi * gi <= 0 for xi, gi in zip(cex.point, g))
    assert any(v != 0 for v in g)


class TestColumnAdequate:
    def test_block_example_certified(self, block_quartic):
        v = check_column_adequate(block_quartic)
        assert v.status == HOLDS
        cert = v.certificate
        assert cert.order == 4
        assert cert.majorization == Matrix.from_rows([[1, -1], [-1, 1]])
        assert cert.check()

    def test_sufficient_example_fails_on_axis(self, sufficient_quartic):
        v = check_column_adequate(sufficient_quartic, budget=FAST)
        assert v.status == FAILS
        assert v.counterexample.point[1] == 0 and v.counterexample.point[0] != 0
        assert_adequacy_violation(sufficient_quartic, v.counterexample)

    def test_p0_example_fails_on_axis(self, p0_quartic):
        v = check_column_adequate(p0_quartic, budget=FAST)
        assert v.status == FAILS
        assert v.counterexample.point[0] == 0
        assert_adequacy_violation(p0_quartic, v.counterexample)

    def test_adequate_example_stays_unknown(self, adequate_quartic):
        # True membership, but the certificate needs a vanishing mixed
        # block; no counterexample exists, so the verdict is open.
        v = check_column_adequate(adequate_quartic, budget=FAST)
        assert v.status == UNKNOWN
        assert v.search_report is not None

    def test_identity_tensor_even_order(self):
        assert check_column_adequate(identity_tensor(4, 2)).status == HOLDS


class TestWeakColumnAdequate:
    def test_weak_example_unknown_by_search(self, weak_cubic):
        v = check_weak_column_adequate(weak_cubic, budget=FAST)
        assert v.status == UNKNOWN

    def test_same_tensor_fails_ordinary(self, weak_cubic):
        v = check_column_adequate(weak_cubic, budget=FAST)
        assert v.status == FAILS
        assert v.counterexample.point[0] < 0

    def test_even_order_delegates(self, block_quartic, sufficient_quartic):
        assert check_weak_column_adequate(block_quartic).status == HOLDS
        v = check_weak_column_adequate(sufficient_quartic, budget=FAST)
        assert v.status == FAILS
        # counterexample products rechecked against the weak weights
        x = v.counterexample.point
        g = sufficient_quartic.apply_deg(x)
        assert all(xi ** 3 * gi <= 0 for xi, gi in zip(x, g))

    def test_even_order_verdicts_match(self):
        rng = random.Random(6)
        for _ in range(8):
            t = random_tensor(rng, 4, 2)
            a = check_column_adequate(t, budget=FAST)
            w = check_weak_column_adequate(t, budget=FAST)
            assert a.status == w.status


class TestColumnSufficient:
    def test_holds_by_implication(self, block_quartic):
        v = check_column_sufficient(block_quartic)
        assert v.status == HOLDS
        assert "column-sufficient" in v.certificate.implication

    def test_adequate_example_unknown(self, adequate_quartic):
        assert check_column_sufficient(adequate_quartic, budget=FAST).status == UNKNOWN

    def test_negative_diagonal_fails(self):
        t = SparseTensor(4, 2, {(1, 1, 1, 1): -1})
        v = check_column_sufficient(t, budget=FAST)
        assert v.status == FAILS
        x = v.counterexample.point
        g = t.apply_deg(x)
        prods = [xi * gi for xi, gi in zip(x, g)]
        assert all(p <= 0 for p in prods) and any(p < 0 for p in prods)

    def test_sufficient_example_not_refuted(self, sufficient_quartic):
        assert check_column_sufficient(sufficient_quartic, budget=FAST).status != FAILS


class TestP0AndP:
    def test_adequate_example_fails_p(self, adequate_quartic):
        v = check_p(adequate_quartic, budget=FAST)
        assert v.status == FAILS
        x = v.counterexample.point
        g = adequate_quartic.apply_deg(x)
        assert all(xi * gi <= 0 for xi, gi in zip(x, g) if xi != 0)
        assert any(xi != 0 for xi in x)

    def test_identity_tensor_p0_via_chain(self):
        v = check_p0(identity_tensor(4, 3))
        assert v.status == HOLDS

    def test_p0_example_unknown(self, p0_quartic):
        # Genuinely P0 (its form is a fourth power), but no implemented
        # certificate applies, and no counterexample exists.
        assert check_p0(p0_quartic, budget=FAST).status == UNKNOWN

    def test_strictly_negative_fails_p0(self):
        t = SparseTensor(4, 2, {(1, 1, 1, 1): -1, (2, 2, 2, 2): -1})
        v = check_p0(t, budget=FAST)
        assert v.status == FAILS
        x = v.counterexample.point
        g = t.apply_deg(x)
        assert all(xi * gi < 0 for xi, gi in zip(x, g) if xi != 0)

    def test_weak_p0_even_order_matches_p0(self, block_quartic):
        assert check_weak_p0(block_quartic).status == HOLDS


class TestPsd:
    def test_cancelling_example_holds(self, psd_quartic):
        v = check_psd(psd_quartic)
        assert v.status == HOLDS
        assert v.certificate.pure_coefficients == (1, 0)
        assert v.certificate.check()

    def test_p0_example_holds(self, p0_quartic):
        assert check_psd(p0_quartic).status == HOLDS

    def test_adequate_example_fails(self, adequate_quartic):
        v = check_psd(adequate_quartic, budget=FAST)
        assert v.status == FAILS
        assert adequate_quartic.apply_full(v.counterexample.point) < 0

    def test_zero_tensor_holds(self):
        assert check_psd(SparseTensor(4, 2, {})).status == HOLDS
        assert check_psd(SparseTensor(3, 2, {})).status == HOLDS

    def test_odd_order_sign_flip(self, diag_cubic):
        v = check_psd(diag_cubic, budget=FAST)
        assert v.status == FAILS
        assert diag_cubic.apply_full(v.counterexample.point) < 0


class TestSemiPositive:
    def test_negative_diagonal_fails(self):
        t = SparseTensor(4, 2, {(1, 1, 1, 1): -1})
        v = check_semi_positive(t, budget=FAST)
        assert v.status == FAILS
        x = v.counterexample.point
        assert all(v >= 0 for v in x)
        g = t.apply_deg(x)
        assert all(gi < 0 for xi, gi in zip(x, g) if xi > 0)

    def test_identity_unknown_by_search(self):
        assert check_semi_positive(identity_tensor(3, 2), budget=FAST).status == UNKNOWN

    def test_zero_tensor_fails_strict_variant(self):
        t = SparseTensor(3, 2, {})
        v = check_semi_positive(t, strict=True, budget=FAST)
        assert v.status == FAILS
        t2 = SparseTensor(3, 2, {})
        assert check_semi_positive(t2, strict=False, budget=FAST).status == UNKNOWN


class TestRowDiagonalVerdict:
    def test_holds(self, rowdiag_quartic):
        assert check_row_diagonal(rowdiag_quartic).status == HOLDS

    def test_fails_with_offending_tuple(self, block_quartic):
        v = check_row_diagonal(block_quartic)
        assert v.status == FAILS
        idx = v.counterexample.point
        assert len(set(idx[1:])) > 1
        assert block_quartic.entry(idx) != 0


class TestDispatch:
    def test_normalization(self):
        assert normalize_class_name("ColumnAdequate") == "column-adequate"
        assert normalize_class_name("weak_p0") == "weak-p0"
        assert normalize_class_name("PSD") == "psd"
        with pytest.raises(ValueError):
            normalize_class_name("nonsense")

    def test_query_object(self, block_quartic):
        q = ClassQuery("ColumnAdequate", block_quartic)
        assert check(q).status == HOLDS

    def test_by_name(self, rowdiag_quartic):
        assert check("row-diagonal", rowdiag_quartic).status == HOLDS


class TestCertificateSoundness:
    def test_holds_verdicts_survive_exact_probes(self, block_quartic, psd_quartic):
        # 5000 exact rational probes of the defining implication per
        # certified verdict.
        rng = random.Random(2024)

        def probe():
            return vec([Q(rng.randint(-8, 8), rng.randint(1, 4)) for _ in range(2)])

        assert check_column_adequate(block_quartic).status == HOLDS
        hits = 0
        for _ in range(5000):
            x = probe()
            g = block_quartic.apply_deg(x)
            if all(xi * gi <= 0 for xi, gi in zip(x, g)):
                hits += 1
                assert all(v == 0 for v in g)
        assert hits > 0

        assert check_psd(psd_quartic).status == HOLDS
        for _ in range(5000):
            x = probe()
            assert psd_quartic.apply_full(x) >= 0


class TestStructuralProperties:
    def test_implication_chain_on_corpus_and_randoms(
            self, block_quartic, sufficient_quartic, p0_quartic, adequate_quartic):
        rng = random.Random(14)
        tensors = [block_quartic, sufficient_quartic, p0_quartic, adequate_quartic]
        tensors += [random_tensor(rng, 4, 2) for _ in range(12)]
        tensors += [random_tensor(rng, 3, 2) for _ in range(6)]
        for t in tensors:
            a = check_column_adequate(t, budget=FAST)
            s = check_column_sufficient(t, budget=FAST)
            p0 = check_p0(t, budget=FAST)
            # no Holds upstream with Fails downstream
            if a.status == HOLDS:
                assert s.status == HOLDS and p0.status == HOLDS

    def test_subtensor_inheritance_counterexamples_pad(self):
        rng = random.Random(18)
        found = 0
        for _ in range(20):
            t = random_tensor(rng, 4, 3)
            for j in ([1], [2], [3], [1, 2], [1, 3], [2, 3]):
                sub = t.principal_subtensor(j)
                v = check_column_adequate(sub, budget=FAST)
                if v.status != FAILS:
                    continue
                found += 1
                x = [Q(0)] * 3
                for pos, i in enumerate(j):
                    x[i - 1] = v.counterexample.point[pos]
                g = t.apply_deg(x)
                assert all(xi * gi <= 0 for xi, gi in zip(x, g))
                assert any(gi != 0 for gi in g)
        assert found >= 5

    def test_diag_invariance_and_counterexample_mapping(self, sufficient_quartic):
        rng = random.Random(22)
        for _ in range(10):
            pd = [Q(rng.randint(1, 4)) * rng.choice([1, -1]) for _ in range(2)]
            qd = [Q(rng.randint(1, 4)) / rng.choice([1, 2]) for _ in range(2)]
            qd = [q if p * q > 0 else -q for p, q in zip(pd, qd)]
            p, q = Matrix.diagonal(pd), Matrix.diagonal(qd)
            moved = transform_diag(sufficient_quartic, p, q)
            v = check_column_adequate(moved, budget=FAST)
            assert v.status == FAILS
            # map the original witness: x -> Q^{-1} x stays a witness
            v0 = check_column_adequate(sufficient_quartic, budget=FAST)
            mapped = tuple(xi / d for xi, d in zip(v0.counterexample.point, qd))
            g = moved.apply_deg(mapped)
            assert all(xi * gi <= 0 for xi, gi in zip(mapped, g))
            assert any(gi != 0 for gi in g)

    def test_perm_invariance(self, block_quartic, p0_quartic):
        for t, expected in ((block_quartic, HOLDS), (p0_quartic, FAILS)):
            swap = Matrix.from_rows([[0, 1], [1, 0]])
            moved = transform_perm(t, swap)
            assert check_column_adequate(moved, budget=FAST).status == expected
