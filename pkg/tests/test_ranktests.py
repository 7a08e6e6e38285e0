"""Two-sample rank tests: normal approximation and exact enumeration.

Reference z and p values were computed once with scipy.stats.mannwhitneyu
(use_continuity=False, method="asymptotic" / "exact") and frozen here.
"""

from __future__ import annotations

import itertools
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from debtjudge.stats.ranktests import (
    ALTERNATIVES,
    DegeneratePooledSample,
    TooLarge,
    WmwResult,
    wmw_asymptotic,
    wmw_exact,
)

X_SEP = [1.0, 2.0, 3.0]
Y_SEP = [4.0, 5.0, 6.0]


class TestAsymptotic:
    def test_separated_samples(self):
        result = wmw_asymptotic(X_SEP, Y_SEP, alternative="less")
        assert result.z == pytest.approx(-1.9639610121239315, abs=1e-12)
        assert result.p_value == pytest.approx(0.024767306717813353, abs=1e-12)

    def test_greater_tail_of_same_data(self):
        result = wmw_asymptotic(X_SEP, Y_SEP, alternative="greater")
        assert result.p_value == pytest.approx(0.9752326932821866, abs=1e-12)

    def test_balanced_interleaved_samples(self):
        result = wmw_asymptotic([1.2, 3.4, 5.6, 7.8], [2.3, 4.5, 6.7])
        assert result.z == 0.0
        assert result.p_value == 1.0

    def test_tie_correction(self):
        result = wmw_asymptotic([5, 7, 7, 9, 11], [6, 7, 8, 8], alternative="greater")
        assert result.z == pytest.approx(0.2502172968684897, abs=1e-12)
        assert result.p_value == pytest.approx(0.4012096548289785, abs=1e-12)

    def test_two_sided(self):
        result = wmw_asymptotic([12, 15, 18, 21, 24, 27], [13, 14, 19, 22])
        assert result.z == pytest.approx(0.6396021490668313, abs=1e-12)
        assert result.p_value == pytest.approx(0.5224312849615644, abs=1e-12)

    def test_two_sided_p_is_capped_at_one(self):
        result = wmw_asymptotic([1.2, 3.4, 5.6, 7.8], [2.3, 4.5, 6.7])
        assert result.p_value <= 1.0

    def test_all_tied_pool_is_degenerate(self):
        with pytest.raises(DegeneratePooledSample):
            wmw_asymptotic([2.0, 2.0], [2.0, 2.0, 2.0])

    def test_returns_named_result(self):
        result = wmw_asymptotic(X_SEP, Y_SEP)
        assert isinstance(result, WmwResult)


class TestExact:
    def test_separated_samples(self):
        assert wmw_exact(X_SEP, Y_SEP, alternative="less") == 0.05
        assert wmw_exact(X_SEP, Y_SEP, alternative="greater") == 1.0
        assert wmw_exact(X_SEP, Y_SEP, alternative="two-sided") == pytest.approx(0.1)

    def test_reversed_samples(self):
        assert wmw_exact(Y_SEP, X_SEP, alternative="less") == 1.0
        assert wmw_exact(Y_SEP, X_SEP, alternative="greater") == 0.05

    def test_interleaved_samples(self):
        p_less = wmw_exact([1.2, 3.4, 5.6, 7.8], [2.3, 4.5, 6.7], alternative="less")
        p_greater = wmw_exact([1.2, 3.4, 5.6, 7.8], [2.3, 4.5, 6.7], alternative="greater")
        assert p_less == pytest.approx(0.5714285714285714)
        assert p_greater == pytest.approx(0.5714285714285714)
        assert wmw_exact([1.2, 3.4, 5.6, 7.8], [2.3, 4.5, 6.7]) == 1.0

    def test_with_ties(self):
        x, y = [5, 7, 7, 9, 11], [6, 7, 8, 8]
        assert wmw_exact(x, y, alternative="less") == pytest.approx(0.6190476190476191)
        assert wmw_exact(x, y, alternative="greater") == pytest.approx(0.42857142857142855)
        assert wmw_exact(x, y) == pytest.approx(0.8571428571428571)

    def test_heavily_tied_small_sample(self):
        assert wmw_exact([1, 1, 2], [1, 2, 2], alternative="less") == pytest.approx(0.5)
        assert wmw_exact([1, 1, 2], [1, 2, 2], alternative="greater") == pytest.approx(0.95)
        assert wmw_exact([1, 1, 2], [1, 2, 2]) == 1.0

    def test_mixed_floats(self):
        x = [3, 1.4, 2.2, 5, 0.7]
        y = [2.9, 3.8, 4.4, 4.6, 5.2]
        assert wmw_exact(x, y, alternative="less") == pytest.approx(0.07539682539682539)
        assert wmw_exact(x, y) == pytest.approx(0.15079365079365079)

    def test_singletons(self):
        assert wmw_exact([1.0], [1.0], alternative="less") == 1.0
        assert wmw_exact([1.0], [2.0], alternative="less") == 0.5

    def test_pool_size_limit(self):
        x = list(range(7))
        y = list(range(10, 16))
        with pytest.raises(TooLarge):
            wmw_exact(x, y)

    def test_limit_is_inclusive(self):
        x = list(map(float, range(6)))
        y = list(map(float, range(10, 16)))
        assert 0.0 <= wmw_exact(x, y) <= 1.0


class TestInputChecks:
    @pytest.mark.parametrize("func", [wmw_asymptotic, wmw_exact])
    def test_empty_sample_rejected(self, func):
        with pytest.raises(ValueError):
            func([], [1.0])
        with pytest.raises(ValueError):
            func([1.0], [])

    @pytest.mark.parametrize("func", [wmw_asymptotic, wmw_exact])
    def test_bad_alternative_rejected(self, func):
        with pytest.raises(ValueError):
            func([1.0], [2.0], alternative="sideways")

    @pytest.mark.parametrize("func", [wmw_asymptotic, wmw_exact])
    def test_non_finite_rejected(self, func):
        with pytest.raises(ValueError):
            func([1.0, float("nan")], [2.0])

    def test_alternatives_constant(self):
        assert ALTERNATIVES == ("two-sided", "less", "greater")


# -- properties --------------------------------------------------------------

_values = st.floats(min_value=-100.0, max_value=100.0, allow_nan=False)
_sample = st.lists(_values, min_size=2, max_size=12)


def _not_all_tied(pair):
    x, y = pair
    return len(set(x) | set(y)) > 1


_pairs = st.tuples(_sample, _sample).filter(_not_all_tied)
_small_pairs = st.tuples(
    st.lists(_values, min_size=1, max_size=6), st.lists(_values, min_size=1, max_size=6)
).filter(_not_all_tied)


class TestProperties:
    @given(pair=_pairs)
    @settings(max_examples=200)
    def test_z_is_antisymmetric(self, pair):
        x, y = pair
        assert wmw_asymptotic(x, y).z == -wmw_asymptotic(y, x).z

    @given(pair=_pairs)
    @settings(max_examples=200)
    def test_tail_duality_is_exact(self, pair):
        x, y = pair
        assert wmw_asymptotic(x, y, "greater").p_value == wmw_asymptotic(y, x, "less").p_value
        assert wmw_asymptotic(x, y, "two-sided").p_value == wmw_asymptotic(y, x, "two-sided").p_value

    @given(pair=_small_pairs)
    @settings(max_examples=150)
    def test_exact_tail_duality(self, pair):
        x, y = pair
        assert wmw_exact(x, y, "greater") == wmw_exact(y, x, "less")

    @given(
        pair=st.tuples(
            st.lists(st.integers(-800, 800).map(lambda k: k / 8.0), min_size=2, max_size=12),
            st.lists(st.integers(-800, 800).map(lambda k: k / 8.0), min_size=2, max_size=12),
        ).filter(_not_all_tied),
        alt=st.sampled_from(ALTERNATIVES),
    )
    @settings(max_examples=200)
    def test_rank_invariance_under_monotone_transform(self, pair, alt):
        # Values sit on a 1/8 grid so the cubic keeps distinct inputs
        # distinct in float arithmetic; only the ranks must survive.
        x, y = pair
        t = lambda v: (v + 250.0) ** 3
        base = wmw_asymptotic(x, y, alt)
        moved = wmw_asymptotic([t(v) for v in x], [t(v) for v in y], alt)
        assert moved.z == base.z
        assert moved.p_value == base.p_value

    @given(pair=_pairs, alt=st.sampled_from(ALTERNATIVES))
    @settings(max_examples=200)
    def test_p_values_live_in_unit_interval(self, pair, alt):
        x, y = pair
        assert 0.0 <= wmw_asymptotic(x, y, alt).p_value <= 1.0

    @given(pair=_small_pairs, alt=st.sampled_from(ALTERNATIVES))
    @settings(max_examples=150)
    def test_exact_p_values_live_in_unit_interval(self, pair, alt):
        x, y = pair
        assert 0.0 <= wmw_exact(x, y, alt) <= 1.0

    @given(pair=_small_pairs)
    @settings(max_examples=100)
    def test_exact_matches_brute_force_enumeration(self, pair):
        x, y = pair
        n, m = len(x), len(y)
        pooled = sorted(x + y)
        ranks = {}
        i = 0
        while i < len(pooled):
            j = i
            while j < len(pooled) and pooled[j] == pooled[i]:
                j += 1
            mid = (i + 1 + j) / 2
            ranks[pooled[i]] = mid
            i = j
        obs = sum(ranks[v] for v in x)
        sums = [
            sum(combo)
            for combo in itertools.combinations([ranks[v] for v in pooled], n)
        ]
        p_less = sum(1 for s in sums if s <= obs) / len(sums)
        assert wmw_exact(x, y, "less") == pytest.approx(p_less, abs=1e-12)
