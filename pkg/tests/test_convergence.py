import math
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from randsub.convergence import (
    ConditionalOscillation,
    ConvergesToHalf,
    Oscillates,
    Periodic,
    alpha1_empirical,
    alpha1_general,
    alpha1_pair_printed,
    alpha1_pair_sums,
    alpha1_report,
    classify,
    lemma_sums,
    subsequence_limits,
    tail_index,
)
from randsub.recurrence import FLOAT, eval_sequence, make_set
from randsub.roots import analyze_roots

coprime_odd_pairs = [
    (k, l)
    for l in range(3, 42, 2)
    for k in range(1, l, 2)
    if math.gcd(k, l) == 1
]


class TestClassify:
    def test_mixed(self):
        v = classify(make_set([1, 2]))
        assert isinstance(v, ConvergesToHalf) and "2" in v.reason

    def test_odd_pair(self):
        v = classify(make_set([1, 3]))
        assert isinstance(v, Oscillates)
        assert v.alpha1 == F(-1, 2) and (v.even_limit, v.odd_limit) == (0, 1)

    def test_reduction(self):
        v = classify(make_set([2, 6]))
        assert isinstance(v, Oscillates) and v.factor == 2
        assert v.reduced == make_set([1, 3])

    def test_even_after_reduction(self):
        # {3, 6} reduces to {1, 2}
        v = classify(make_set([3, 6]))
        assert isinstance(v, ConvergesToHalf) and v.factor == 3

    def test_single(self):
        v = classify(make_set([4]))
        assert isinstance(v, Periodic) and v.period == 8

    def test_conditional(self):
        v = classify(make_set([3, 5, 7]))
        assert isinstance(v, ConditionalOscillation)
        assert v.alpha1 == F(-2, 15) and v.simple_roots_verified

    def test_oscillates_rejects_zero(self):
        S = make_set([1, 3])
        with pytest.raises(ValueError):
            Oscillates(S, S, 1, alpha1=F(0))

    def test_to_dict(self):
        d = classify(make_set([3, 5])).to_dict()
        assert d["kind"] == "oscillates" and d["even_limit"] == "3/8"


class TestLemma:
    def test_three_five(self):
        s = lemma_sums(3, 5)
        assert (s.direct1, s.closed1) == (0, 0)
        assert (s.direct2, s.closed2) == (0, -2)
        assert s.agree1 and not s.agree2

    def test_one_three(self):
        s = lemma_sums(1, 3)
        assert s.direct2 == 0 == s.closed2

    @pytest.mark.parametrize("k,l", coprime_odd_pairs)
    def test_first_sum_always_agrees(self, k, l):
        assert lemma_sums(k, l).agree1

    @pytest.mark.parametrize("k,l", coprime_odd_pairs)
    def test_second_sum_agrees_only_for_k_one(self, k, l):
        s = lemma_sums(k, l)
        assert s.direct2 == 0
        assert s.agree2 == (k == 1)

    def test_rejects_bad_pairs(self):
        for k, l in [(2, 5), (3, 9), (5, 3)]:
            with pytest.raises(ValueError):
                lemma_sums(k, l)


class TestPairRoutes:
    @pytest.mark.parametrize("k,l,expected", [(1, 3, F(-1, 2)), (3, 5, F(-3, 8)), (1, 5, F(-1, 2))])
    def test_printed(self, k, l, expected):
        assert alpha1_pair_printed(k, l) == expected

    @pytest.mark.parametrize("k,l,expected", [(1, 3, F(-1, 2)), (3, 5, F(-1, 8)), (3, 7, F(-1, 5))])
    def test_sums(self, k, l, expected):
        assert alpha1_pair_sums(k, l) == expected

    @pytest.mark.parametrize("k,l", coprime_odd_pairs)
    def test_printed_audit(self, k, l):
        assert (alpha1_pair_printed(k, l) == alpha1_pair_sums(k, l)) == (k == 1)

    @pytest.mark.parametrize("k,l", coprime_odd_pairs)
    def test_general_reduces_to_pair(self, k, l):
        assert alpha1_general(make_set([k, l])) == alpha1_pair_sums(k, l)


class TestGeneral:
    @pytest.mark.parametrize(
        "elems,expected",
        [([1, 3, 5], F(-1, 2)), ([3, 5, 7], F(-2, 15)), ([3, 5], F(-1, 8)), ([1], F(-1, 2))],
    )
    def test_examples(self, elems, expected):
        assert alpha1_general(make_set(elems)) == expected

    def test_rejects_even(self):
        with pytest.raises(ValueError):
            alpha1_general(make_set([1, 2]))

    @settings(max_examples=25, deadline=None)
    @given(st.lists(st.integers(0, 8).map(lambda i: 2 * i + 1), min_size=2, max_size=4).map(make_set))
    def test_matches_tail_of_sequence(self, S):
        """The exact coefficient predicts the far tail of the float sequence."""
        if S.g != 1:
            return
        gap = analyze_roots(S, check_square_free=False).spectral_gap
        n = tail_index(gap, 1e-13, cap=200_000)
        if n % 2:
            n += 1
        run = eval_sequence(S, n + 1, FLOAT)
        a1 = float(alpha1_general(S))
        assert abs(run[n] - (0.5 + a1)) < 1e-9
        assert abs(run[n + 1] - (0.5 - a1)) < 1e-9


class TestEmpirical:
    def test_exact_alternation(self):
        est, spread = alpha1_empirical(make_set([1, 3]), 10_000)
        assert est == -0.5 and spread == 0

    def test_three_five(self):
        gap = analyze_roots(make_set([3, 5])).spectral_gap
        n = 2 * tail_index(gap, 1e-6)
        assert gap ** (n / 2) < 1e-6
        est, _ = alpha1_empirical(make_set([3, 5]), n)
        assert abs(est - (-0.125)) < 1e-4

    def test_convergent(self):
        est, _ = alpha1_empirical(make_set([1, 2]), 1000)
        assert abs(est) < 1e-9

    def test_rate_bounded_by_gap(self):
        S = make_set([3, 5, 7])
        gap = analyze_roots(S).spectral_gap
        exact = float(alpha1_general(S))
        errs = []
        for n in (100, 200, 400):
            est, _ = alpha1_empirical(S, n)
            errs.append(abs(est - exact))
        assert errs[-1] < errs[0]
        assert errs[-1] < 50 * gap ** 200


class TestLimits:
    def test_examples(self):
        assert subsequence_limits(make_set([1, 3]))[:2] == (0, 1)
        assert subsequence_limits(make_set([3, 5]))[:2] == (F(3, 8), F(5, 8))
        lim = subsequence_limits(make_set([1, 2]))
        assert lim == (F(1, 2), F(1, 2), False)


def test_report_flags_mismatch():
    r = alpha1_report(make_set([3, 5]))
    assert r.agreement["printed_mismatch"]
    assert r.agreement["sums_equals_quotient"]
    assert r.agreement["empirical_matches_exact"]
    assert r.via_sums == r.via_quotient == F(-1, 8)


def test_report_convergent_case():
    r = alpha1_report(make_set([2, 3]))
    assert r.via_quotient is None and abs(r.empirical) < 1e-6


def test_tail_index():
    assert 0.5 ** tail_index(0.5, 1e-8) < 1e-8
    assert 0.5 ** (tail_index(0.5, 1e-8) - 1) >= 1e-8
    with pytest.raises(ValueError):
        tail_index(1.0, 1e-8)
