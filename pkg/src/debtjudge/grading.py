"""Quality gates and grading policies.

A gate is a list of threshold conditions over snapshot metrics producing a
three-state verdict. Grading policies turn that verdict into a penalty on the
code grade, or distribute ranking bonuses capped at the maximum grade.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .metrics import MetricSnapshot

__all__ = [
    "GATE_METRICS",
    "DEFAULT_GATE",
    "InvalidGate",
    "InvalidPolicy",
    "Comparator",
    "GateStatus",
    "GateCondition",
    "ConditionVerdict",
    "GateReport",
    "PenaltyPolicy",
    "RewardPolicy",
    "Qualification",
    "evaluate_gate",
    "apply_penalty",
    "assign_rewards",
    "apply_bonus",
]

# Snapshot fields a gate condition may reference.
GATE_METRICS = frozenset(
    {
        "ncloc",
        "code_smells",
        "sqale_debt_ratio",
        "duplicated_lines_density",
        "comment_lines_density",
        "security_remediation_effort",
        "reliability_remediation_effort",
        "cognitive_complexity",
        "cyclomatic_complexity",
        "functions",
        "bugs",
        "vulnerabilities",
        "violations",
        "blocker_violations",
        "major_violations",
    }
)


class InvalidGate(ValueError):
    """A gate or one of its conditions is malformed."""


class InvalidPolicy(ValueError):
    """A penalty or reward policy violates its constraints."""


class Comparator(enum.Enum):
    GREATER_THAN = "greater_than"
    LESS_THAN = "less_than"


class GateStatus(enum.IntEnum):
    """Gate outcome ordered by severity."""

    PASSED = 0
    WARNING = 1
    FAILED = 2

    @property
    def label(self) -> str:
        return self.name.capitalize()


@dataclass(frozen=True)
class GateCondition:
    """One threshold rule: metric compared against warning/error bounds.

    At least one threshold must be present. For greater_than conditions the
    error threshold sits at or above the warning one; mirrored for less_than.
    """

    metric: str
    comparator: Comparator
    warning_threshold: float | None = None
    error_threshold: float | None = None

    def __post_init__(self) -> None:
        if self.metric not in GATE_METRICS:
            raise InvalidGate(f"unknown gate metric {self.metric!r}")
        if not isinstance(self.comparator, Comparator):
            raise InvalidGate(f"invalid comparator {self.comparator!r}")
        if self.warning_threshold is None and self.error_threshold is None:
            raise InvalidGate(f"condition on {self.metric!r} has no thresholds")
        for name in ("warning_threshold", "error_threshold"):
            value = getattr(self, name)
            if value is not None and not math.isfinite(value):
                raise InvalidGate(f"{name} on {self.metric!r} must be finite")
        if self.warning_threshold is not None and self.error_threshold is not None:
            if self.comparator is Comparator.GREATER_THAN:
                if self.error_threshold < self.warning_threshold:
                    raise InvalidGate(
                        f"error threshold below warning threshold on {self.metric!r}"
                    )
            elif self.error_threshold > self.warning_threshold:
                raise InvalidGate(
                    f"error threshold above warning threshold on {self.metric!r}"
                )

    def _breached(self, observed: float, threshold: float) -> bool:
        if self.comparator is Comparator.GREATER_THAN:
            return observed > threshold
        return observed < threshold


@dataclass(frozen=True)
class ConditionVerdict:
    """How one condition judged the snapshot."""

    condition: GateCondition
    observed: float
    status: GateStatus


@dataclass(frozen=True)
class GateReport:
    """Overall gate status plus the per-condition verdicts behind it."""

    status: GateStatus
    verdicts: tuple[ConditionVerdict, ...]


# Placeholder defaults for operators who supply no gate file. Real contests
# should configure their own thresholds.
DEFAULT_GATE: tuple[GateCondition, ...] = (
    GateCondition("sqale_debt_ratio", Comparator.GREATER_THAN, 3.0, 5.0),
    GateCondition("duplicated_lines_density", Comparator.GREATER_THAN, 5.0, 10.0),
    GateCondition("bugs", Comparator.GREATER_THAN, None, 0.0),
    GateCondition("vulnerabilities", Comparator.GREATER_THAN, None, 0.0),
)


@dataclass(frozen=True)
class PenaltyPolicy:
    """Fraction of the code grade deducted per gate outcome."""

    passed_fraction: float = 0.00
    warning_fraction: float = 0.05
    failed_fraction: float = 0.10
    applies_to: str = "code"

    def __post_init__(self) -> None:
        for name in ("passed_fraction", "warning_fraction", "failed_fraction"):
            value = getattr(self, name)
            if not (isinstance(value, (int, float)) and 0.0 <= value <= 1.0):
                raise InvalidPolicy(f"{name} must lie in [0, 1]")
        if not self.passed_fraction <= self.warning_fraction <= self.failed_fraction:
            raise InvalidPolicy("fractions must be ordered passed <= warning <= failed")

    def fraction_for(self, status: GateStatus) -> float:
        return {
            GateStatus.PASSED: self.passed_fraction,
            GateStatus.WARNING: self.warning_fraction,
            GateStatus.FAILED: self.failed_fraction,
        }[status]


@dataclass(frozen=True)
class RewardPolicy:
    """Bonus schedule for the top ranked qualified teams, and the grade cap."""

    bonus_schedule: tuple[float, ...] = (0.9, 0.6, 0.3)
    max_grade: float = 10.0

    def __post_init__(self) -> None:
        object.__setattr__(self, "bonus_schedule", tuple(self.bonus_schedule))
        if not self.bonus_schedule:
            raise InvalidPolicy("bonus schedule must not be empty")
        for bonus in self.bonus_schedule:
            if not (isinstance(bonus, (int, float)) and bonus > 0):
                raise InvalidPolicy("bonuses must be positive")
        for earlier, later in zip(self.bonus_schedule, self.bonus_schedule[1:]):
            if later >= earlier:
                raise InvalidPolicy("bonus schedule must be strictly decreasing")
        if not self.max_grade > 0:
            raise InvalidPolicy("max_grade must be positive")


@dataclass(frozen=True)
class Qualification:
    """Prerequisites for bonus eligibility.

    gate_passed requires a green gate; a warning does not qualify.
    all_use_cases_implemented is judged by an operator, not by this system.
    """

    team: str
    gate_passed: bool
    all_use_cases_implemented: bool

    @property
    def qualified(self) -> bool:
        return self.gate_passed and self.all_use_cases_implemented


def evaluate_gate(s: MetricSnapshot, gate: Sequence[GateCondition]) -> GateReport:
    """Judge a snapshot against every condition of a gate.

    Any error breach fails the gate; otherwise any warning breach warns it.
    Worsening a metric can only move the status toward Failed, never back.

    Raises:
        InvalidGate: the gate is empty or contains a malformed condition.
    """
    if not gate:
        raise InvalidGate("gate must contain at least one condition")
    verdicts = []
    for condition in gate:
        if not isinstance(condition, GateCondition):
            raise InvalidGate(f"not a gate condition: {condition!r}")
        observed = float(getattr(s, condition.metric))
        status = GateStatus.PASSED
        if condition.error_threshold is not None and condition._breached(
            observed, condition.error_threshold
        ):
            status = GateStatus.FAILED
        elif condition.warning_threshold is not None and condition._breached(
            observed, condition.warning_threshold
        ):
            status = GateStatus.WARNING
        verdicts.append(ConditionVerdict(condition, observed, status))
    overall = max((v.status for v in verdicts), default=GateStatus.PASSED)
    return GateReport(status=overall, verdicts=tuple(verdicts))


def apply_penalty(code_grade: float, status: GateStatus, p: PenaltyPolicy = PenaltyPolicy()) -> float:
    """Deduct the gate penalty from a code grade.

    Never increases the grade; a passed gate with the default policy keeps
    it unchanged.
    """
    if code_grade < 0:
        raise ValueError("code_grade must be non-negative")
    return code_grade * (1.0 - p.fraction_for(status))


def assign_rewards(
    final_ranking: Sequence[str],
    quals: Mapping[str, Qualification],
    r: RewardPolicy = RewardPolicy(),
) -> dict[str, float]:
    """Hand out ranking bonuses to the first qualified teams.

    Walks the ranking in order; unqualified teams (or teams with no recorded
    qualification) receive 0 and do not consume a bonus slot, so the slots
    shift down past them. Returns a bonus for every ranked team.
    """
    bonuses = {team: 0.0 for team in final_ranking}
    slot = 0
    for team in final_ranking:
        if slot >= len(r.bonus_schedule):
            break
        qual = quals.get(team)
        if qual is not None and qual.qualified:
            bonuses[team] = r.bonus_schedule[slot]
            slot += 1
    return bonuses


def apply_bonus(total_grade: float, bonus: float, r: RewardPolicy = RewardPolicy()) -> float:
    """Add a bonus to a total grade, truncating at the maximum grade."""
    if total_grade < 0 or bonus < 0:
        raise ValueError("grades and bonuses must be non-negative")
    return min(total_grade + bonus, r.max_grade)
