"""Two-sample rank tests.

The asymptotic Wilcoxon-Mann-Whitney test standardizes the rank sum of the
first sample with midranks for ties and a tie-corrected variance, without
continuity correction. Positive Z means the first sample is stochastically
larger. A brute-force permutation oracle covers small samples.
"""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from itertools import combinations
from statistics import NormalDist
from typing import Sequence

__all__ = [
    "ALTERNATIVES",
    "DegeneratePooledSample",
    "TooLarge",
    "WmwResult",
    "wmw_asymptotic",
    "wmw_exact",
]

ALTERNATIVES = ("two-sided", "less", "greater")

_NORMAL = NormalDist()

# Full enumeration is C(n+m, n) subsets; 12 pooled values keeps it under 1000.
_EXACT_LIMIT = 12


class DegeneratePooledSample(ValueError):
    """Every pooled observation is tied; the variance is zero."""


class TooLarge(ValueError):
    """Pooled sample too large for exhaustive enumeration."""


@dataclass(frozen=True)
class WmwResult:
    z: float
    p_value: float


def _check_inputs(x: Sequence[float], y: Sequence[float], alternative: str) -> None:
    if alternative not in ALTERNATIVES:
        raise ValueError(f"alternative must be one of {ALTERNATIVES}, got {alternative!r}")
    if not x or not y:
        raise ValueError("both samples must contain at least one observation")
    for v in list(x) + list(y):
        if not math.isfinite(v):
            raise ValueError("samples contain non-finite values")


def _midranks(pooled: Sequence[float]) -> list[float]:
    order = sorted(range(len(pooled)), key=lambda i: pooled[i])
    ranks = [0.0] * len(pooled)
    i = 0
    while i < len(pooled):
        j = i
        while j + 1 < len(pooled) and pooled[order[j + 1]] == pooled[order[i]]:
            j += 1
        shared = (i + j + 2) / 2.0
        for k in range(i, j + 1):
            ranks[order[k]] = shared
        i = j + 1
    return ranks


def wmw_asymptotic(x: Sequence[float], y: Sequence[float], alternative: str = "two-sided") -> WmwResult:
    """Normal-approximation Wilcoxon-Mann-Whitney test.

    Args:
        x: first sample; "greater" asks whether it is stochastically larger.
        y: second sample.
        alternative: "two-sided", "less", or "greater".

    Returns:
        WmwResult with the standardized rank-sum statistic Z and its p-value.
        Z depends only on the pooled ordering, so any strictly increasing
        transform of the data leaves the result unchanged.

    Raises:
        DegeneratePooledSample: all pooled observations are equal.
        ValueError: empty samples, bad alternative, or non-finite values.
    """
    _check_inputs(x, y, alternative)
    n, m = len(x), len(y)
    total = n + m
    pooled = list(x) + list(y)
    ranks = _midranks(pooled)
    rank_sum = math.fsum(ranks[:n])
    expected = n * (total + 1) / 2.0

    tie_sizes = Counter(pooled).values()
    tie_term = sum(t ** 3 - t for t in tie_sizes)
    if total >= 2:
        variance = n * m / 12.0 * ((total + 1) - tie_term / (total * (total - 1)))
    else:
        variance = 0.0
    if variance <= 0.0:
        raise DegeneratePooledSample("all pooled observations are tied")

    z = (rank_sum - expected) / math.sqrt(variance)
    # Both tails through cdf so that p_greater(x, y) == p_less(y, x) exactly:
    # swapping the samples negates z bit-for-bit.
    lower = _NORMAL.cdf(z)
    upper = _NORMAL.cdf(-z)
    if alternative == "greater":
        p = upper
    elif alternative == "less":
        p = lower
    else:
        p = min(1.0, 2.0 * min(lower, upper))
    return WmwResult(z=z, p_value=p)


def wmw_exact(x: Sequence[float], y: Sequence[float], alternative: str = "two-sided") -> float:
    """Exact permutation p-value for small two-sample comparisons.

    Enumerates every way the first sample's size could be placed among the
    pooled midranks, assuming exchangeability under the null. Midranks are
    halves, so rank sums compare exactly in binary floating point.

    Raises:
        TooLarge: pooled size exceeds the enumeration limit of 12.
        ValueError: empty samples or bad alternative.
    """
    _check_inputs(x, y, alternative)
    n, m = len(x), len(y)
    total = n + m
    if total > _EXACT_LIMIT:
        raise TooLarge(f"pooled size {total} exceeds enumeration limit {_EXACT_LIMIT}")
    ranks = _midranks(list(x) + list(y))
    observed = sum(ranks[:n])

    count = 0
    at_most = 0
    at_least = 0
    for positions in combinations(range(total), n):
        s = sum(ranks[i] for i in positions)
        count += 1
        if s <= observed:
            at_most += 1
        if s >= observed:
            at_least += 1
    p_less = at_most / count
    p_greater = at_least / count
    if alternative == "less":
        return p_less
    if alternative == "greater":
        return p_greater
    return min(1.0, 2.0 * min(p_less, p_greater))
