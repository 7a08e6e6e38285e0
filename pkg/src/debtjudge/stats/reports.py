"""Cohort comparison reports.

Three report families over a two-group cohort dataset: per-group normality
checks, one-sided group comparisons with effect sizes, and boxplot-ready
five-number summaries. Each report renders as an aligned text table and as
a machine-readable payload.
"""
from __future__ import annotations

import math
import statistics
from dataclasses import dataclass

from .dataset import METRIC_COLUMNS, STRATEGIES, CohortDataset
from .effect import classify_effect, effect_size_r
from .ranktests import wmw_asymptotic
from .shapiro import shapiro_wilk

__all__ = [
    "ALPHA",
    "SCHEMA_VERSION",
    "NormalityResult",
    "ComparisonResult",
    "SummaryRow",
    "normality_report",
    "comparison_report",
    "summary_stats",
    "alternative_for",
    "render_normality",
    "render_comparison",
    "render_summary",
    "normality_payload",
    "comparison_payload",
    "summary_payload",
]

ALPHA = 0.05
SCHEMA_VERSION = 1

# Penalising rows form the first sample everywhere. Comparisons ask whether
# that group sits higher, except comment density where more comments are
# better and the question flips.
_FIRST_GROUP, _SECOND_GROUP = STRATEGIES


@dataclass(frozen=True)
class NormalityResult:
    metric: str
    group: str
    statistic: float
    p_value: float
    normal_not_rejected: bool


@dataclass(frozen=True)
class ComparisonResult:
    metric: str
    alternative: str
    z: float
    p_value: float
    effect_size_r: float
    cohen_class: str


@dataclass(frozen=True)
class SummaryRow:
    metric: str
    group: str
    minimum: float
    q1: float
    median: float
    q3: float
    maximum: float
    whisker_low: float
    whisker_high: float
    outliers: tuple[float, ...]


def alternative_for(metric: str) -> str:
    if metric not in METRIC_COLUMNS:
        raise KeyError(f"unknown metric column {metric!r}")
    return "less" if metric == "comment_density" else "greater"


def normality_report(d: CohortDataset) -> tuple[NormalityResult, ...]:
    """One Shapiro-Wilk test per metric per group, 16 in total."""
    results = []
    for metric in METRIC_COLUMNS:
        for group in STRATEGIES:
            outcome = shapiro_wilk(d.column(metric, group))
            results.append(
                NormalityResult(
                    metric=metric,
                    group=group,
                    statistic=outcome.statistic,
                    p_value=outcome.p_value,
                    normal_not_rejected=outcome.p_value > ALPHA,
                )
            )
    return tuple(results)


def comparison_report(d: CohortDataset) -> tuple[ComparisonResult, ...]:
    """One one-sided rank test per metric, penalising group first."""
    x_size = len(d.group(_FIRST_GROUP))
    y_size = len(d.group(_SECOND_GROUP))
    total = x_size + y_size
    results = []
    for metric in METRIC_COLUMNS:
        alternative = alternative_for(metric)
        outcome = wmw_asymptotic(
            d.column(metric, _FIRST_GROUP),
            d.column(metric, _SECOND_GROUP),
            alternative,
        )
        r = effect_size_r(outcome.z, total)
        results.append(
            ComparisonResult(
                metric=metric,
                alternative=alternative,
                z=outcome.z,
                p_value=outcome.p_value,
                effect_size_r=r,
                cohen_class=classify_effect(r),
            )
        )
    return tuple(results)


def summary_stats(d: CohortDataset) -> tuple[SummaryRow, ...]:
    """Quartiles, whiskers, and 1.5 IQR outliers per metric per group."""
    rows = []
    for metric in METRIC_COLUMNS:
        for group in STRATEGIES:
            values = sorted(d.column(metric, group))
            q1, median, q3 = statistics.quantiles(values, n=4, method="inclusive")
            iqr = q3 - q1
            low_fence = q1 - 1.5 * iqr
            high_fence = q3 + 1.5 * iqr
            inside = [v for v in values if low_fence <= v <= high_fence]
            outliers = tuple(v for v in values if v < low_fence or v > high_fence)
            rows.append(
                SummaryRow(
                    metric=metric,
                    group=group,
                    minimum=values[0],
                    q1=q1,
                    median=median,
                    q3=q3,
                    maximum=values[-1],
                    whisker_low=inside[0],
                    whisker_high=inside[-1],
                    outliers=outliers,
                )
            )
    return tuple(rows)


def _table(headers: list[str], rows: list[list[str]]) -> str:
    widths = [len(h) for h in headers]
    for row in rows:
        for i, cell in enumerate(row):
            widths[i] = max(widths[i], len(cell))
    lines = [
        "  ".join(h.ljust(widths[i]) for i, h in enumerate(headers)).rstrip(),
        "  ".join("-" * widths[i] for i in range(len(headers))),
    ]
    for row in rows:
        lines.append("  ".join(cell.ljust(widths[i]) for i, cell in enumerate(row)).rstrip())
    return "\n".join(lines) + "\n"


def _fmt(value: float) -> str:
    return f"{value:.4f}"


def render_normality(results: tuple[NormalityResult, ...]) -> str:
    """Text table, one row per metric with W and p for both groups."""
    by_key = {(r.metric, r.group): r for r in results}
    rows = []
    for metric in METRIC_COLUMNS:
        row = [metric]
        for group in STRATEGIES:
            r = by_key[(metric, group)]
            row.extend([_fmt(r.statistic), _fmt(r.p_value)])
        rows.append(row)
    headers = ["metric"]
    for group in STRATEGIES:
        headers.extend([f"W ({group})", f"p ({group})"])
    return _table(headers, rows)


def render_comparison(results: tuple[ComparisonResult, ...]) -> str:
    headers = ["metric", "alternative", "p", "Z", "effect size", "magnitude"]
    rows = [
        [r.metric, r.alternative, _fmt(r.p_value), _fmt(r.z), _fmt(r.effect_size_r), r.cohen_class]
        for r in results
    ]
    return _table(headers, rows)


def render_summary(rows: tuple[SummaryRow, ...]) -> str:
    headers = [
        "metric", "group", "min", "q1", "median", "q3", "max",
        "whisker low", "whisker high", "outliers",
    ]
    body = [
        [
            r.metric,
            r.group,
            _fmt(r.minimum),
            _fmt(r.q1),
            _fmt(r.median),
            _fmt(r.q3),
            _fmt(r.maximum),
            _fmt(r.whisker_low),
            _fmt(r.whisker_high),
            " ".join(_fmt(v) for v in r.outliers) or "-",
        ]
        for r in rows
    ]
    return _table(headers, body)


def normality_payload(results: tuple[NormalityResult, ...]) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "report": "normality",
        "alpha": ALPHA,
        "results": [
            {
                "metric": r.metric,
                "group": r.group,
                "statistic": r.statistic,
                "p_value": r.p_value,
                "normal_not_rejected": r.normal_not_rejected,
            }
            for r in results
        ],
    }


def comparison_payload(results: tuple[ComparisonResult, ...]) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "report": "comparison",
        "results": [
            {
                "metric": r.metric,
                "alternative": r.alternative,
                "z": r.z,
                "p_value": r.p_value,
                "effect_size_r": r.effect_size_r,
                "cohen_class": r.cohen_class,
            }
            for r in results
        ],
    }


def summary_payload(rows: tuple[SummaryRow, ...]) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "report": "summary",
        "results": [
            {
                "metric": r.metric,
                "group": r.group,
                "min": r.minimum,
                "q1": r.q1,
                "median": r.median,
                "q3": r.q3,
                "max": r.maximum,
                "whisker_low": r.whisker_low,
                "whisker_high": r.whisker_high,
                "outliers": list(r.outliers),
            }
            for r in rows
        ],
    }
