"""Scoring primitives for a technical-debt contest.

Raw analyzer measures arrive as (metric key, text value) pairs. This module
turns them into validated snapshots, derives per-line quality rates, and
builds the score and tie-break key that order submissions on the leaderboard.
Lower scores rank higher.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from datetime import datetime, timezone
from typing import Iterable, Sequence

__all__ = [
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
]

# Analyzer-native keys, exactly the measures the judge consumes. The analyzer
# calls cyclomatic complexity plain "complexity"; the snapshot field does not.
METRIC_KEYS: tuple[str, ...] = (
    "ncloc",
    "code_smells",
    "sqale_debt_ratio",
    "duplicated_lines_density",
    "comment_lines_density",
    "security_remediation_effort",
    "reliability_remediation_effort",
    "cognitive_complexity",
    "complexity",
    "functions",
    "bugs",
    "vulnerabilities",
    "violations",
    "blocker_violations",
    "major_violations",
)

_KEY_TO_FIELD = {key: key for key in METRIC_KEYS}
_KEY_TO_FIELD["complexity"] = "cyclomatic_complexity"

_COUNT_KEYS = frozenset(
    {
        "ncloc",
        "code_smells",
        "cognitive_complexity",
        "complexity",
        "functions",
        "bugs",
        "vulnerabilities",
        "violations",
        "blocker_violations",
        "major_violations",
    }
)

# Dot-decimal only; rejects grouping separators, underscores, nan/inf, hex.
_NUMBER_RE = re.compile(r"^[+-]?(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?$")


class MetricsError(ValueError):
    """Base class for measure parsing and validation failures."""


class MissingMetric(MetricsError):
    """One or more required metric keys were absent from the input."""

    def __init__(self, missing_keys: Sequence[str]):
        self.missing_keys = tuple(missing_keys)
        super().__init__(f"missing metric keys: {', '.join(self.missing_keys)}")


class MalformedValue(MetricsError):
    """A metric value could not be parsed into its field's domain."""

    def __init__(self, metric_key: str, text: str, reason: str = "not a valid number"):
        self.metric_key = metric_key
        self.text = text
        super().__init__(f"metric {metric_key!r}: {reason}: {text!r}")


class InvalidSnapshot(MetricsError):
    """Snapshot fields violate a domain or cross-field constraint."""


class EmptyProject(MetricsError):
    """The analysis covered zero lines of code, so no rates can be derived."""


def _utc(ts: datetime) -> datetime:
    if ts.tzinfo is None:
        raise InvalidSnapshot("timestamps must be timezone-aware")
    return ts.astimezone(timezone.utc)


@dataclass(frozen=True)
class MetricSnapshot:
    """One analysis of one project, as reported by the analyzer.

    All counts are non-negative integers. Remediation efforts are minutes.
    ``sqale_debt_ratio`` is a percentage with no upper bound; the two line
    densities are percentages in [0, 100].
    """

    project_key: str
    analysis_id: str
    analysed_at: datetime
    ncloc: int
    code_smells: int
    sqale_debt_ratio: float
    duplicated_lines_density: float
    comment_lines_density: float
    security_remediation_effort: float
    reliability_remediation_effort: float
    cognitive_complexity: int
    cyclomatic_complexity: int
    functions: int
    bugs: int
    vulnerabilities: int
    violations: int
    blocker_violations: int
    major_violations: int

    def __post_init__(self) -> None:
        if not self.project_key:
            raise InvalidSnapshot("project_key must be non-empty")
        if not self.analysis_id:
            raise InvalidSnapshot("analysis_id must be non-empty")
        object.__setattr__(self, "analysed_at", _utc(self.analysed_at))
        for name in (
            "ncloc",
            "code_smells",
            "cognitive_complexity",
            "cyclomatic_complexity",
            "functions",
            "bugs",
            "vulnerabilities",
            "violations",
            "blocker_violations",
            "major_violations",
        ):
            value = getattr(self, name)
            if not isinstance(value, int) or isinstance(value, bool) or value < 0:
                raise InvalidSnapshot(f"{name} must be a non-negative integer, got {value!r}")
        for name in (
            "sqale_debt_ratio",
            "duplicated_lines_density",
            "comment_lines_density",
            "security_remediation_effort",
            "reliability_remediation_effort",
        ):
            value = getattr(self, name)
            if not isinstance(value, (int, float)) or isinstance(value, bool):
                raise InvalidSnapshot(f"{name} must be numeric, got {value!r}")
            if not math.isfinite(value) or value < 0:
                raise InvalidSnapshot(f"{name} must be finite and non-negative, got {value!r}")
        for name in ("duplicated_lines_density", "comment_lines_density"):
            if getattr(self, name) > 100:
                raise InvalidSnapshot(f"{name} must not exceed 100")
        if self.blocker_violations + self.major_violations > self.violations:
            raise InvalidSnapshot(
                "blocker_violations + major_violations exceeds total violations"
            )
        if self.functions > 0 and self.cyclomatic_complexity < self.functions:
            raise InvalidSnapshot(
                "cyclomatic_complexity below functions count: every function "
                "contributes at least one path"
            )


@dataclass(frozen=True)
class DerivedMetrics:
    """The eight per-project study variables computed from a snapshot.

    Three are passthrough percentages; five are normalized by ncloc.
    """

    sqale_debt_ratio: float
    duplicated_lines_density: float
    comment_density: float
    smell_density: float
    security_rate: float
    reliability_rate: float
    cognitive_complexity_rate: float
    cyclomatic_complexity_rate: float

    def __post_init__(self) -> None:
        for name in (
            "sqale_debt_ratio",
            "duplicated_lines_density",
            "comment_density",
            "smell_density",
            "security_rate",
            "reliability_rate",
            "cognitive_complexity_rate",
            "cyclomatic_complexity_rate",
        ):
            value = getattr(self, name)
            if not math.isfinite(value) or value < 0:
                raise ValueError(f"{name} must be finite and non-negative, got {value!r}")


@dataclass(frozen=True)
class ScoreWeights:
    """Multipliers for the four score addends. Defaults weigh them equally."""

    tdr: float = 1.0
    dcd: float = 1.0
    pb_re: float = 1.0
    sv_re: float = 1.0

    def __post_init__(self) -> None:
        for name in ("tdr", "dcd", "pb_re", "sv_re"):
            value = getattr(self, name)
            if not math.isfinite(value) or value < 0:
                raise ValueError(f"weight {name} must be finite and non-negative")


@dataclass(frozen=True)
class Score:
    """A submission's score and its four addends, kept at full precision.

    tdr: weighted SQALE debt ratio. dcd: weighted duplicated lines density.
    pb_re: weighted reliability remediation rate (potential bugs).
    sv_re: weighted security remediation rate (vulnerabilities).
    """

    value: float
    tdr: float
    dcd: float
    pb_re: float
    sv_re: float

    def __post_init__(self) -> None:
        if self.value != self.tdr + self.dcd + self.pb_re + self.sv_re:
            raise ValueError("score value must equal the sum of its components")
        if self.value < 0:
            raise ValueError("score must be non-negative")


@dataclass(frozen=True)
class TieBreakKey:
    """Ordered comparison fields for submissions with equal scores.

    Lexicographic, all ascending except comment_density where more comments
    win. The submission timestamp is the final discriminator, earliest first.
    """

    technical_debt_ratio: float
    smell_severity: float
    duplicated_lines_density: float
    bugs: int
    vulnerabilities: int
    cyclomatic_complexity: int
    cognitive_complexity: int
    comment_density: float
    submitted_at: datetime

    def sort_tuple(self) -> tuple:
        return (
            self.technical_debt_ratio,
            self.smell_severity,
            self.duplicated_lines_density,
            self.bugs,
            self.vulnerabilities,
            self.cyclomatic_complexity,
            self.cognitive_complexity,
            -self.comment_density,
            self.submitted_at,
        )


def parse_measures(
    raw: Iterable[tuple[str, str]],
    *,
    project_key: str,
    analysis_id: str,
    analysed_at: datetime,
) -> MetricSnapshot:
    """Build a validated snapshot from analyzer (metric, value) pairs.

    Args:
        raw: measure pairs; the first occurrence of each key wins, unknown
            keys are ignored.
        project_key: project identifier the measures belong to.
        analysis_id: unique identifier of this analysis run.
        analysed_at: when the analyzer produced the measures.

    Returns:
        A MetricSnapshot with all fifteen numeric fields populated.

    Raises:
        MissingMetric: one or more required keys are absent.
        MalformedValue: a value fails locale-independent numeric parsing
            (dot decimal separator only) or falls outside its field's domain.
        InvalidSnapshot: parsed values violate a cross-field constraint.
    """
    seen: dict[str, str] = {}
    for key, text in raw:
        if key in _KEY_TO_FIELD and key not in seen:
            seen[key] = text
    missing = [key for key in METRIC_KEYS if key not in seen]
    if missing:
        raise MissingMetric(missing)

    values: dict[str, object] = {}
    for key in METRIC_KEYS:
        text = seen[key]
        stripped = text.strip() if isinstance(text, str) else ""
        if not _NUMBER_RE.match(stripped):
            raise MalformedValue(key, text)
        number = float(stripped)
        if number < 0:
            raise MalformedValue(key, text, "must be non-negative")
        if key in _COUNT_KEYS:
            if not number.is_integer():
                raise MalformedValue(key, text, "must be an integer count")
            values[_KEY_TO_FIELD[key]] = int(number)
        else:
            values[_KEY_TO_FIELD[key]] = number
    return MetricSnapshot(
        project_key=project_key,
        analysis_id=analysis_id,
        analysed_at=analysed_at,
        **values,  # type: ignore[arg-type]
    )


def compute_derived(s: MetricSnapshot) -> DerivedMetrics:
    """Derive the eight per-line study variables from a snapshot.

    Raises:
        EmptyProject: the snapshot has ncloc = 0, so nothing can be rated.
    """
    if s.ncloc == 0:
        raise EmptyProject(f"project {s.project_key!r} has no code to analyze")
    n = float(s.ncloc)
    return DerivedMetrics(
        sqale_debt_ratio=s.sqale_debt_ratio,
        duplicated_lines_density=s.duplicated_lines_density,
        comment_density=s.comment_lines_density,
        smell_density=s.code_smells / n,
        security_rate=s.security_remediation_effort / n,
        reliability_rate=s.reliability_remediation_effort / n,
        cognitive_complexity_rate=s.cognitive_complexity / n,
        cyclomatic_complexity_rate=(s.cyclomatic_complexity - s.functions) / n,
    )


def compute_score(d: DerivedMetrics, w: ScoreWeights = ScoreWeights()) -> Score:
    """Combine debt ratio, duplication, and the two remediation rates.

    The addends are kept after weighting so displays can show the breakdown.
    No rounding happens here or anywhere before comparison.
    """
    tdr = w.tdr * d.sqale_debt_ratio
    dcd = w.dcd * d.duplicated_lines_density
    pb_re = w.pb_re * d.reliability_rate
    sv_re = w.sv_re * d.security_rate
    return Score(value=tdr + dcd + pb_re + sv_re, tdr=tdr, dcd=dcd, pb_re=pb_re, sv_re=sv_re)


def tiebreak_key(s: MetricSnapshot, submitted_at: datetime) -> TieBreakKey:
    """Build the tie-break key for a snapshot submitted at a given time.

    Smell severity is the blocker-plus-major share of all violations and is
    defined as 0 for a clean project, which cannot be beaten.
    """
    if s.violations > 0:
        severity = (s.blocker_violations + s.major_violations) / s.violations
    else:
        severity = 0.0
    return TieBreakKey(
        technical_debt_ratio=s.sqale_debt_ratio,
        smell_severity=severity,
        duplicated_lines_density=s.duplicated_lines_density,
        bugs=s.bugs,
        vulnerabilities=s.vulnerabilities,
        cyclomatic_complexity=s.cyclomatic_complexity,
        cognitive_complexity=s.cognitive_complexity,
        comment_density=s.comment_lines_density,
        submitted_at=_utc(submitted_at),
    )


def entry_sort_key(score: Score, key: TieBreakKey) -> tuple:
    """Sortable key: score first, then the tie-break cascade."""
    return (score.value, *key.sort_tuple())


def compare_entries(a: tuple[Score, TieBreakKey], b: tuple[Score, TieBreakKey]) -> int:
    """Order two scored submissions; negative means a ranks first.

    Returns 0 only for fully identical keys, which distinct submissions
    cannot produce unless they share the same timestamp as well.
    """
    ka = entry_sort_key(*a)
    kb = entry_sort_key(*b)
    if ka < kb:
        return -1
    if ka > kb:
        return 1
    return 0
