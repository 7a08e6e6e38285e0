"""Contest bookkeeping: submissions, best records, rankings, history.

A single-writer state machine. Every accepted mutation is appended to the
event log before memory changes, so replaying the log rebuilds the exact
same state and the exact same leaderboard bytes. Reads hand out immutable
snapshots and are safe from any thread.
"""
from __future__ import annotations

import csv
import io
import json
import threading
from dataclasses import dataclass
from datetime import date, datetime, time, timedelta, timezone

from .eventlog import CorruptLog, EventLog
from .grading import GateStatus, Qualification
from .metrics import (
    DerivedMetrics,
    MetricSnapshot,
    Score,
    ScoreWeights,
    TieBreakKey,
    compute_derived,
    compute_score,
    entry_sort_key,
    tiebreak_key,
)

__all__ = [
    "UnknownTeam",
    "InvalidRange",
    "Submission",
    "SubmitResult",
    "LeaderboardEntry",
    "PositionHistory",
    "TeamActivity",
    "StatsSummary",
    "ContestEngine",
    "submission_to_dict",
    "entry_to_dict",
]

_SNAPSHOT_NUMERIC_FIELDS = (
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
)


class UnknownTeam(LookupError):
    pass


class InvalidRange(ValueError):
    pass


@dataclass(frozen=True)
class Submission:
    submission_id: int
    team: str
    snapshot: MetricSnapshot
    derived: DerivedMetrics
    score: Score
    key: TieBreakKey
    received_at: datetime
    gate_status: GateStatus


@dataclass(frozen=True)
class SubmitResult:
    """Outcome of one submit call.

    duplicate marks a replayed analysis_id: nothing was stored and the
    submission field carries the original record.
    """

    submission: Submission
    rank: int
    improved: bool
    duplicate: bool


@dataclass(frozen=True)
class LeaderboardEntry:
    rank: int
    team: str
    best: Submission
    qualified: bool
    submissions_count: int
    last_received_at: datetime


@dataclass(frozen=True)
class PositionHistory:
    team: str
    series: tuple[tuple[date, int], ...]


@dataclass(frozen=True)
class TeamActivity:
    team: str
    submissions_count: int
    first_received_at: datetime
    last_received_at: datetime


@dataclass(frozen=True)
class StatsSummary:
    total_submissions: int
    teams: tuple[TeamActivity, ...]


def _iso(ts: datetime) -> str:
    return ts.astimezone(timezone.utc).isoformat()


def _end_of_day(day: date) -> datetime:
    return datetime.combine(day, time.max, tzinfo=timezone.utc)


def _submission_sort_key(sub: Submission) -> tuple:
    return entry_sort_key(sub.score, sub.key)


class ContestEngine:
    """Scores submissions and keeps the live ranking.

    All mutations are serialized under one lock and logged before they take
    effect, so a crash after an acknowledgment never loses the submission.
    """

    def __init__(self, log: EventLog | None = None, weights: ScoreWeights = ScoreWeights()):
        self._log = log
        self.weights = weights
        self._lock = threading.RLock()
        self._submissions: list[Submission] = []
        self._by_analysis: dict[str, Submission] = {}
        self._best: dict[str, Submission] = {}
        self._counts: dict[str, int] = {}
        self._last: dict[str, datetime] = {}
        self._quals: dict[str, Qualification] = {}
        self.replayed_events = 0
        if log is not None:
            self._replay(log)

    # -- replay ----------------------------------------------------------

    def _replay(self, log: EventLog) -> None:
        for line_number, event in log.events():
            kind = event.get("type")
            try:
                if kind == "submission":
                    snapshot_fields = dict(event["snapshot"])
                    snapshot_fields["analysed_at"] = datetime.fromisoformat(
                        snapshot_fields["analysed_at"]
                    )
                    snapshot = MetricSnapshot(**snapshot_fields)
                    self._apply_submission(
                        team=event["team"],
                        snapshot=snapshot,
                        gate_status=GateStatus[event["gate_status"].upper()],
                        received_at=datetime.fromisoformat(event["received_at"]),
                    )
                elif kind == "qualification":
                    self._quals[event["team"]] = Qualification(
                        team=event["team"],
                        gate_passed=bool(event["gate_ok"]),
                        all_use_cases_implemented=bool(event["use_cases_ok"]),
                    )
                else:
                    raise CorruptLog(line_number, f"unknown event type {kind!r}")
            except CorruptLog:
                raise
            except (KeyError, TypeError, ValueError) as exc:
                raise CorruptLog(line_number, f"bad {kind or 'event'} record: {exc}") from exc
            self.replayed_events += 1

    # -- mutations -------------------------------------------------------

    def submit(
        self,
        team: str,
        snapshot: MetricSnapshot,
        gate_status: GateStatus,
        received_at: datetime,
    ) -> SubmitResult:
        """Record one analysis for a team and rerank.

        A resubmitted analysis_id is acknowledged without storing anything.

        Raises:
            EmptyProject: the snapshot has no code to rate.
        """
        if received_at.tzinfo is None:
            raise ValueError("received_at must be timezone-aware")
        received_at = received_at.astimezone(timezone.utc)
        with self._lock:
            existing = self._by_analysis.get(snapshot.analysis_id)
            if existing is not None:
                return SubmitResult(
                    submission=existing,
                    rank=self._rank_of(existing.team),
                    improved=False,
                    duplicate=True,
                )
            compute_derived(snapshot)  # validates before anything is logged
            if self._log is not None:
                self._log.append(self._submission_event(team, snapshot, gate_status, received_at))
            submission = self._apply_submission(team, snapshot, gate_status, received_at)
            improved = self._best[team] is submission
            return SubmitResult(
                submission=submission,
                rank=self._rank_of(team),
                improved=improved,
                duplicate=False,
            )

    def _submission_event(
        self,
        team: str,
        snapshot: MetricSnapshot,
        gate_status: GateStatus,
        received_at: datetime,
    ) -> dict:
        fields = {name: getattr(snapshot, name) for name in _SNAPSHOT_NUMERIC_FIELDS}
        fields["project_key"] = snapshot.project_key
        fields["analysis_id"] = snapshot.analysis_id
        fields["analysed_at"] = _iso(snapshot.analysed_at)
        return {
            "type": "submission",
            "schema": 1,
            "team": team,
            "received_at": _iso(received_at),
            "gate_status": gate_status.name.lower(),
            "snapshot": fields,
        }

    def _apply_submission(
        self,
        team: str,
        snapshot: MetricSnapshot,
        gate_status: GateStatus,
        received_at: datetime,
    ) -> Submission:
        received_at = received_at.astimezone(timezone.utc)
        derived = compute_derived(snapshot)
        score = compute_score(derived, self.weights)
        key = tiebreak_key(snapshot, submitted_at=received_at)
        submission = Submission(
            submission_id=len(self._submissions) + 1,
            team=team,
            snapshot=snapshot,
            derived=derived,
            score=score,
            key=key,
            received_at=received_at,
            gate_status=gate_status,
        )
        self._submissions.append(submission)
        self._by_analysis[snapshot.analysis_id] = submission
        best = self._best.get(team)
        if best is None or _submission_sort_key(submission) < _submission_sort_key(best):
            self._best[team] = submission
        self._counts[team] = self._counts.get(team, 0) + 1
        last = self._last.get(team)
        if last is None or received_at > last:
            self._last[team] = received_at
        return submission

    def set_qualification(self, team: str, gate_ok: bool, use_cases_ok: bool) -> Qualification:
        """Store operator-judged prerequisites for a team.

        Raises:
            UnknownTeam: the team has never submitted.
        """
        with self._lock:
            if team not in self._counts:
                raise UnknownTeam(f"no submissions from team {team!r}")
            qual = Qualification(
                team=team, gate_passed=gate_ok, all_use_cases_implemented=use_cases_ok
            )
            if self._log is not None:
                self._log.append(
                    {
                        "type": "qualification",
                        "schema": 1,
                        "team": team,
                        "gate_ok": gate_ok,
                        "use_cases_ok": use_cases_ok,
                    }
                )
            self._quals[team] = qual
            return qual

    # -- queries ---------------------------------------------------------

    def _qualification(self, team: str, best: Submission) -> Qualification:
        # Without an operator ruling, the gate outcome of the best submission
        # decides and functionality is presumed complete.
        stored = self._quals.get(team)
        if stored is not None:
            return stored
        return Qualification(
            team=team,
            gate_passed=best.gate_status is GateStatus.PASSED,
            all_use_cases_implemented=True,
        )

    def find_analysis(self, analysis_id: str) -> Submission | None:
        """The stored submission for an analysis_id, if one exists."""
        with self._lock:
            return self._by_analysis.get(analysis_id)

    def _rank_of(self, team: str) -> int:
        for entry in self.leaderboard():
            if entry.team == team:
                return entry.rank
        raise UnknownTeam(f"no submissions from team {team!r}")

    def leaderboard(self, as_of: datetime | None = None) -> list[LeaderboardEntry]:
        """Current ranking, or the ranking as it stood at a past instant.

        Entries are ordered by score with the tie-break cascade; the team
        identifier is the final determinism guard for the pathological case
        of two teams tying on every criterion including the timestamp.
        """
        with self._lock:
            if as_of is None:
                best = dict(self._best)
                counts = dict(self._counts)
                last = dict(self._last)
            else:
                cutoff = as_of.astimezone(timezone.utc)
                best: dict[str, Submission] = {}
                counts: dict[str, int] = {}
                last: dict[str, datetime] = {}
                for sub in self._submissions:
                    if sub.received_at > cutoff:
                        continue
                    current = best.get(sub.team)
                    if current is None or _submission_sort_key(sub) < _submission_sort_key(current):
                        best[sub.team] = sub
                    counts[sub.team] = counts.get(sub.team, 0) + 1
                    if sub.team not in last or sub.received_at > last[sub.team]:
                        last[sub.team] = sub.received_at
            ordered = sorted(
                best.items(), key=lambda item: (_submission_sort_key(item[1]), item[0])
            )
            return [
                LeaderboardEntry(
                    rank=position,
                    team=team,
                    best=sub,
                    qualified=self._qualification(team, sub).qualified,
                    submissions_count=counts[team],
                    last_received_at=last[team],
                )
                for position, (team, sub) in enumerate(ordered, start=1)
            ]

    def position_history(self, team: str, until: date) -> PositionHistory:
        """Rank of a team at the end of each UTC day since its first submission.

        Raises:
            UnknownTeam: the team never submitted, or submitted only after
                the requested end date.
        """
        with self._lock:
            mine = [sub for sub in self._submissions if sub.team == team]
            if not mine:
                raise UnknownTeam(f"no submissions from team {team!r}")
            first_day = min(sub.received_at for sub in mine).date()
            if until < first_day:
                raise UnknownTeam(
                    f"team {team!r} has no submissions on or before {until.isoformat()}"
                )
            series = []
            day = first_day
            while day <= until:
                ranking = self.leaderboard(as_of=_end_of_day(day))
                for entry in ranking:
                    if entry.team == team:
                        series.append((day, entry.rank))
                        break
                day += timedelta(days=1)
            return PositionHistory(team=team, series=tuple(series))

    def submissions_in_range(
        self, start: datetime | None = None, end: datetime | None = None
    ) -> list[Submission]:
        """Chronological slice of submissions, bounds inclusive.

        Raises:
            InvalidRange: start is after end.
        """
        if start is not None and end is not None and start > end:
            raise InvalidRange("range start is after its end")
        with self._lock:
            picked = [
                sub
                for sub in self._submissions
                if (start is None or sub.received_at >= start.astimezone(timezone.utc))
                and (end is None or sub.received_at <= end.astimezone(timezone.utc))
            ]
        return sorted(picked, key=lambda sub: (sub.received_at, sub.submission_id))

    def stats_summary(self) -> StatsSummary:
        with self._lock:
            teams = []
            for team in sorted(self._counts):
                received = [s.received_at for s in self._submissions if s.team == team]
                teams.append(
                    TeamActivity(
                        team=team,
                        submissions_count=self._counts[team],
                        first_received_at=min(received),
                        last_received_at=max(received),
                    )
                )
            return StatsSummary(total_submissions=len(self._submissions), teams=tuple(teams))

    def qualifications(self) -> dict[str, Qualification]:
        """Effective qualification per team, explicit rulings first."""
        with self._lock:
            return {
                entry.team: self._qualification(entry.team, entry.best)
                for entry in self.leaderboard()
            }

    @property
    def total_submissions(self) -> int:
        with self._lock:
            return len(self._submissions)

    # -- exports ---------------------------------------------------------

    def export_leaderboard_json(self, as_of: datetime | None = None) -> str:
        payload = {
            "schema_version": 1,
            "as_of": _iso(as_of) if as_of is not None else None,
            "entries": [entry_to_dict(entry) for entry in self.leaderboard(as_of)],
        }
        return json.dumps(payload, sort_keys=True, indent=2) + "\n"

    def export_leaderboard_csv(self, as_of: datetime | None = None) -> str:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(
            [
                "rank",
                "team",
                "qualified",
                "score",
                "tdr",
                "dcd",
                "pb_re",
                "sv_re",
                "technical_debt_ratio",
                "smell_severity",
                "duplicated_lines_density",
                "bugs",
                "vulnerabilities",
                "cyclomatic_complexity",
                "cognitive_complexity",
                "comment_density",
                "submitted_at",
                "analysis_id",
                "submissions_count",
                "last_received_at",
            ]
        )
        for entry in self.leaderboard(as_of):
            key = entry.best.key
            writer.writerow(
                [
                    entry.rank,
                    entry.team,
                    str(entry.qualified).lower(),
                    repr(entry.best.score.value),
                    repr(entry.best.score.tdr),
                    repr(entry.best.score.dcd),
                    repr(entry.best.score.pb_re),
                    repr(entry.best.score.sv_re),
                    repr(key.technical_debt_ratio),
                    repr(key.smell_severity),
                    repr(key.duplicated_lines_density),
                    key.bugs,
                    key.vulnerabilities,
                    key.cyclomatic_complexity,
                    key.cognitive_complexity,
                    repr(key.comment_density),
                    _iso(key.submitted_at),
                    entry.best.snapshot.analysis_id,
                    entry.submissions_count,
                    _iso(entry.last_received_at),
                ]
            )
        return buffer.getvalue()


def submission_to_dict(sub: Submission) -> dict:
    return {
        "submission_id": sub.submission_id,
        "team": sub.team,
        "project_key": sub.snapshot.project_key,
        "analysis_id": sub.snapshot.analysis_id,
        "analysed_at": _iso(sub.snapshot.analysed_at),
        "received_at": _iso(sub.received_at),
        "gate_status": sub.gate_status.name.lower(),
        "score": {
            "value": sub.score.value,
            "tdr": sub.score.tdr,
            "dcd": sub.score.dcd,
            "pb_re": sub.score.pb_re,
            "sv_re": sub.score.sv_re,
        },
        "derived": {
            "sqale_debt_ratio": sub.derived.sqale_debt_ratio,
            "duplicated_lines_density": sub.derived.duplicated_lines_density,
            "comment_density": sub.derived.comment_density,
            "smell_density": sub.derived.smell_density,
            "security_rate": sub.derived.security_rate,
            "reliability_rate": sub.derived.reliability_rate,
            "cognitive_complexity_rate": sub.derived.cognitive_complexity_rate,
            "cyclomatic_complexity_rate": sub.derived.cyclomatic_complexity_rate,
        },
    }


def entry_to_dict(entry: LeaderboardEntry) -> dict:
    key = entry.best.key
    return {
        "rank": entry.rank,
        "team": entry.team,
        "qualified": entry.qualified,
        "submissions_count": entry.submissions_count,
        "last_received_at": _iso(entry.last_received_at),
        "score": {
            "value": entry.best.score.value,
            "tdr": entry.best.score.tdr,
            "dcd": entry.best.score.dcd,
            "pb_re": entry.best.score.pb_re,
            "sv_re": entry.best.score.sv_re,
        },
        "tiebreak": {
            "technical_debt_ratio": key.technical_debt_ratio,
            "smell_severity": key.smell_severity,
            "duplicated_lines_density": key.duplicated_lines_density,
            "bugs": key.bugs,
            "vulnerabilities": key.vulnerabilities,
            "cyclomatic_complexity": key.cyclomatic_complexity,
            "cognitive_complexity": key.cognitive_complexity,
            "comment_density": key.comment_density,
            "submitted_at": _iso(key.submitted_at),
        },
        "best": {
            "submission_id": entry.best.submission_id,
            "analysis_id": entry.best.snapshot.analysis_id,
            "analysed_at": _iso(entry.best.snapshot.analysed_at),
            "received_at": _iso(entry.best.received_at),
            "gate_status": entry.best.gate_status.name.lower(),
        },
    }
