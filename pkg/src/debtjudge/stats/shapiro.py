"""Shapiro-Wilk normality test.

Port of Royston's 1995 algorithm (AS R94), the approximation used by R's
shapiro.test and by mainstream scientific libraries. Valid for sample sizes
3 through 5000. The null hypothesis is that the sample comes from a normal
distribution; small p-values reject it.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from statistics import NormalDist
from typing import Sequence

__all__ = [
    "TooFewValues",
    "TooManyValues",
    "DegenerateSample",
    "ShapiroResult",
    "shapiro_wilk",
]

_NORMAL = NormalDist()

# Polynomial coefficients from AS R94, ascending order.
_G = (-2.273, 0.459)
_C1 = (0.0, 0.221157, -0.147981, -2.071190, 4.434685, -2.706056)
_C2 = (0.0, 0.042981, -0.293762, -1.752461, 5.682633, -3.582633)
_C3 = (0.5440, -0.39978, 0.025054, -6.714e-4)
_C4 = (1.3822, -0.77857, 0.062767, -0.0020322)
_C5 = (-1.5861, -0.31082, -0.083751, 0.0038915)
_C6 = (-0.4803, -0.082676, 0.0030302)

_PI6 = 6.0 / math.pi
_STQR = math.asin(math.sqrt(0.75))
_TINY_RANGE = 1e-19


class TooFewValues(ValueError):
    """Fewer than 3 observations; the statistic is undefined."""


class TooManyValues(ValueError):
    """More than 5000 observations; outside the approximation's domain."""


class DegenerateSample(ValueError):
    """All observations are (numerically) identical."""


@dataclass(frozen=True)
class ShapiroResult:
    statistic: float
    p_value: float


def _poly(coeffs: Sequence[float], x: float) -> float:
    total = 0.0
    power = 1.0
    for c in coeffs:
        total += c * power
        power *= x
    return total


def _weights(n: int) -> list[float]:
    # Weights for the upper half of the sorted sample, largest value first
    # only in pairing: index 0 pairs with the sample minimum.
    nn2 = n // 2
    m = [_NORMAL.inv_cdf((i - 0.375) / (n + 0.25)) for i in range(1, nn2 + 1)]
    if n == 3:
        return [math.sqrt(0.5)]
    summ2 = 2.0 * math.fsum(v * v for v in m)
    ssumm2 = math.sqrt(summ2)
    rsn = 1.0 / math.sqrt(n)
    a1 = _poly(_C1, rsn) - m[0] / ssumm2
    if n > 5:
        a2 = -m[1] / ssumm2 + _poly(_C2, rsn)
        fac = math.sqrt(
            (summ2 - 2.0 * m[0] ** 2 - 2.0 * m[1] ** 2)
            / (1.0 - 2.0 * a1 ** 2 - 2.0 * a2 ** 2)
        )
        return [a1, a2] + [-v / fac for v in m[2:]]
    fac = math.sqrt((summ2 - 2.0 * m[0] ** 2) / (1.0 - 2.0 * a1 ** 2))
    return [a1] + [-v / fac for v in m[1:]]


def shapiro_wilk(sample: Sequence[float]) -> ShapiroResult:
    """Compute the W statistic and its p-value for one sample.

    Args:
        sample: observations in any order; 3 <= len(sample) <= 5000.

    Returns:
        ShapiroResult with W in (0, 1] and a p-value in [0, 1].

    Raises:
        TooFewValues: fewer than 3 observations.
        TooManyValues: more than 5000 observations.
        DegenerateSample: zero sample range, W undefined.
        ValueError: non-finite observations.
    """
    n = len(sample)
    if n < 3:
        raise TooFewValues(f"need at least 3 observations, got {n}")
    if n > 5000:
        raise TooManyValues(f"at most 5000 observations supported, got {n}")
    if any(not math.isfinite(v) for v in sample):
        raise ValueError("sample contains non-finite values")

    x = sorted(float(v) for v in sample)
    spread = x[-1] - x[0]
    if spread < _TINY_RANGE:
        raise DegenerateSample("sample range is zero")

    half = _weights(n)
    nn2 = n // 2
    coeffs = [0.0] * n
    for i in range(nn2):
        coeffs[i] = -half[i]
        coeffs[n - 1 - i] = half[i]

    # W is the squared correlation between the sorted sample and the
    # weight vector; the sample is scaled by its range for stability.
    xs = [v / spread for v in x]
    mean_x = math.fsum(xs) / n
    mean_a = math.fsum(coeffs) / n
    ssx = math.fsum((v - mean_x) ** 2 for v in xs)
    ssa = math.fsum((c - mean_a) ** 2 for c in coeffs)
    sax = math.fsum((c - mean_a) * (v - mean_x) for c, v in zip(coeffs, xs))
    ssassx = math.sqrt(ssa * ssx)
    w1 = (ssassx - sax) * (ssassx + sax) / (ssa * ssx)
    w = 1.0 - w1

    if n == 3:
        w_clamped = min(max(w, 0.0), 1.0)
        p = _PI6 * (math.asin(math.sqrt(w_clamped)) - _STQR)
        return ShapiroResult(w, min(max(p, 0.0), 1.0))

    if w1 <= 0.0:
        return ShapiroResult(1.0, 1.0)

    y = math.log(w1)
    if n <= 11:
        gamma = _poly(_G, float(n))
        if y >= gamma:
            return ShapiroResult(w, 1e-99)
        y = -math.log(gamma - y)
        mu = _poly(_C3, float(n))
        sigma = math.exp(_poly(_C4, float(n)))
    else:
        log_n = math.log(n)
        mu = _poly(_C5, log_n)
        sigma = math.exp(_poly(_C6, log_n))
    p = 1.0 - _NORMAL.cdf((y - mu) / sigma)
    return ShapiroResult(w, min(max(p, 0.0), 1.0))
