"""Statistics toolkit: cohort ingestion, rank tests, and report tables."""
from .dataset import (
    METRIC_COLUMNS,
    STRATEGIES,
    BadFactor,
    BadNumber,
    CohortDataset,
    CohortRow,
    DatasetError,
    SchemaError,
    load_dataset,
    load_dataset_file,
)
from .effect import EFFECT_CLASSES, classify_effect, effect_size_r
from .ranktests import (
    ALTERNATIVES,
    DegeneratePooledSample,
    TooLarge,
    WmwResult,
    wmw_asymptotic,
    wmw_exact,
)
from .reports import (
    ALPHA,
    ComparisonResult,
    NormalityResult,
    SummaryRow,
    comparison_payload,
    comparison_report,
    normality_payload,
    normality_report,
    render_comparison,
    render_normality,
    render_summary,
    summary_payload,
    summary_stats,
)
from .shapiro import (
    DegenerateSample,
    ShapiroResult,
    TooFewValues,
    TooManyValues,
    shapiro_wilk,
)

__all__ = [
    "METRIC_COLUMNS",
    "STRATEGIES",
    "ALTERNATIVES",
    "EFFECT_CLASSES",
    "ALPHA",
    "DatasetError",
    "SchemaError",
    "BadFactor",
    "BadNumber",
    "CohortRow",
    "CohortDataset",
    "load_dataset",
    "load_dataset_file",
    "TooFewValues",
    "TooManyValues",
    "DegenerateSample",
    "ShapiroResult",
    "shapiro_wilk",
    "DegeneratePooledSample",
    "TooLarge",
    "WmwResult",
    "wmw_asymptotic",
    "wmw_exact",
    "effect_size_r",
    "classify_effect",
    "NormalityResult",
    "ComparisonResult",
    "SummaryRow",
    "normality_report",
    "comparison_report",
    "summary_stats",
    "render_normality",
    "render_comparison",
    "render_summary",
    "normality_payload",
    "comparison_payload",
    "summary_payload",
]
