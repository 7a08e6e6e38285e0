"""Effect size for rank tests: r = |Z| / sqrt(N), with Cohen's labels."""
from __future__ import annotations

import math

__all__ = ["EFFECT_CLASSES", "effect_size_r", "classify_effect"]

EFFECT_CLASSES = ("negligible", "small", "medium", "large")


def effect_size_r(z: float, n: int) -> float:
    """Effect size from a standardized statistic and total sample size.

    The absolute value is used, so direction of the difference is dropped.
    """
    if n < 2:
        raise ValueError("effect size needs a total sample size of at least 2")
    if not math.isfinite(z):
        raise ValueError("z must be finite")
    return abs(z) / math.sqrt(n)


def classify_effect(r: float) -> str:
    """Cohen's thresholds: 0.10 small, 0.30 medium, 0.50 large.

    Values below 0.10 are labeled negligible.
    """
    if r < 0 or not math.isfinite(r):
        raise ValueError("r must be a finite non-negative value")
    if r < 0.10:
        return "negligible"
    if r < 0.30:
        return "small"
    if r < 0.50:
        return "medium"
    return "large"
