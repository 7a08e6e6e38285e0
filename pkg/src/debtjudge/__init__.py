"""debtjudge: a contest judge for technical-debt leaderboards.

Scores static-analysis snapshots, resolves ties with an ordered metric
cascade, applies gate-based penalty and reward grading, runs the contest
service, and ships a statistics toolkit for comparing grading cohorts.
"""
from .contest import (
    ContestEngine,
    InvalidRange,
    LeaderboardEntry,
    PositionHistory,
    StatsSummary,
    Submission,
    SubmitResult,
    TeamActivity,
    UnknownTeam,
)
from .eventlog import CorruptLog, EventLog
from .grading import (
    DEFAULT_GATE,
    Comparator,
    ConditionVerdict,
    GateCondition,
    GateReport,
    GateStatus,
    InvalidGate,
    InvalidPolicy,
    PenaltyPolicy,
    Qualification,
    RewardPolicy,
    apply_bonus,
    apply_penalty,
    assign_rewards,
    evaluate_gate,
)
from .metrics import (
    METRIC_KEYS,
    DerivedMetrics,
    EmptyProject,
    InvalidSnapshot,
    MalformedValue,
    MetricSnapshot,
    MetricsError,
    MissingMetric,
    Score,
    ScoreWeights,
    TieBreakKey,
    compare_entries,
    compute_derived,
    compute_score,
    entry_sort_key,
    parse_measures,
    tiebreak_key,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "METRIC_KEYS",
    "MetricsError",
    "MissingMetric",
    "MalformedValue",
    "InvalidSnapshot",
    "EmptyProject",
    "MetricSnapshot",
    "DerivedMetrics",
    "ScoreWeights",
    "Score",
    "TieBreakKey",
    "parse_measures",
    "compute_derived",
    "compute_score",
    "tiebreak_key",
    "compare_entries",
    "entry_sort_key",
    "Comparator",
    "GateStatus",
    "GateCondition",
    "ConditionVerdict",
    "GateReport",
    "PenaltyPolicy",
    "RewardPolicy",
    "Qualification",
    "InvalidGate",
    "InvalidPolicy",
    "DEFAULT_GATE",
    "evaluate_gate",
    "apply_penalty",
    "assign_rewards",
    "apply_bonus",
    "EventLog",
    "CorruptLog",
    "ContestEngine",
    "Submission",
    "SubmitResult",
    "LeaderboardEntry",
    "PositionHistory",
    "TeamActivity",
    "StatsSummary",
    "UnknownTeam",
    "InvalidRange",
]
