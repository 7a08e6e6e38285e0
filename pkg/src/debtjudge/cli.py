"""Operator command line.

serve runs the web service, grade batch-grades offline measure exports in
penalty mode, qualify and award manage bonus eligibility and payout, and
report runs the cohort statistics. Exit codes: 0 success, 1 validation
failure, 2 I/O failure, 3 internal error.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from .config import (
    ConfigError,
    ServiceConfig,
    load_config,
    load_gate_file,
    load_penalty_file,
    load_rewards_file,
)
from .contest import ContestEngine, UnknownTeam
from .eventlog import CorruptLog, EventLog
from .grading import (
    DEFAULT_GATE,
    GateStatus,
    PenaltyPolicy,
    RewardPolicy,
    apply_penalty,
    assign_rewards,
    evaluate_gate,
)
from .metrics import MetricsError, parse_measures
from .service import parse_timestamp
from .stats.dataset import DatasetError, load_dataset_file
from .stats.reports import (
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

__all__ = ["CommandOutcome", "main"]

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_IO = 2
EXIT_INTERNAL = 3


@dataclass(frozen=True)
class CommandOutcome:
    exit_code: int
    human_message: str = ""
    payload: dict | None = None


def _engine_from_data_dir(data_dir: Path) -> ContestEngine:
    log = EventLog(data_dir / "events.jsonl")
    return ContestEngine(log)


def _measure_pairs(measures) -> list[tuple[str, str]]:
    if isinstance(measures, dict):
        return [(str(k), str(v)) for k, v in measures.items()]
    if isinstance(measures, list):
        return [
            (str(m.get("metric")), str(m.get("value")))
            for m in measures
            if isinstance(m, dict)
        ]
    raise ValueError("measures must be an object or an array")


def _load_export(path: Path):
    data = json.loads(path.read_text(encoding="utf-8"))
    if not isinstance(data, dict):
        raise ValueError("export must be a JSON object")
    return parse_measures(
        _measure_pairs(data.get("measures")),
        project_key=str(data.get("project_key", "")),
        analysis_id=str(data.get("analysis_id", "")),
        analysed_at=parse_timestamp(str(data.get("analysed_at", ""))),
    )


def _cmd_serve(args: argparse.Namespace) -> CommandOutcome:
    try:
        config = load_config(args.config)
    except ConfigError as exc:
        return CommandOutcome(EXIT_IO, f"cannot load config: {exc}")
    try:
        engine = ContestEngine(EventLog(config.log_path), config.weights)
    except CorruptLog as exc:
        return CommandOutcome(EXIT_IO, str(exc))
    from .service import create_app
    import uvicorn

    app = create_app(config, engine=engine)
    uvicorn.run(app, host=config.host, port=config.port, log_level="info")
    return CommandOutcome(EXIT_OK)


def _cmd_grade(args: argparse.Namespace) -> CommandOutcome:
    measures_dir = Path(args.measures)
    if not measures_dir.is_dir():
        return CommandOutcome(EXIT_IO, f"measures directory not found: {measures_dir}")
    gate = DEFAULT_GATE
    if args.gate:
        gate_path = Path(args.gate)
        if not gate_path.is_file():
            return CommandOutcome(EXIT_IO, f"gate file not found: {gate_path}")
        try:
            gate = load_gate_file(gate_path)
        except ConfigError as exc:
            return CommandOutcome(EXIT_VALIDATION, f"bad gate file: {exc}")
    penalty = PenaltyPolicy()
    if args.penalty:
        penalty_path = Path(args.penalty)
        if not penalty_path.is_file():
            return CommandOutcome(EXIT_IO, f"penalty file not found: {penalty_path}")
        try:
            penalty = load_penalty_file(penalty_path)
        except ConfigError as exc:
            return CommandOutcome(EXIT_VALIDATION, f"bad penalty file: {exc}")

    results = []
    distribution = {status.name.lower(): 0 for status in GateStatus}
    for path in sorted(measures_dir.glob("*.json")):
        try:
            snapshot = _load_export(path)
        except (ValueError, MetricsError) as exc:
            return CommandOutcome(EXIT_VALIDATION, f"malformed export {path.name}: {exc}")
        report = evaluate_gate(snapshot, gate)
        graded = apply_penalty(args.grade, report.status, penalty)
        distribution[report.status.name.lower()] += 1
        results.append(
            {
                "project_key": snapshot.project_key,
                "gate_status": report.status.name.lower(),
                "grade_before": args.grade,
                "grade_after": graded,
            }
        )

    payload = {
        "schema_version": 1,
        "mode": "penalty",
        "results": results,
        "distribution": distribution,
    }
    if args.format == "machine":
        return CommandOutcome(EXIT_OK, payload=payload)
    lines = [f"{'project':<24}{'gate':<10}{'before':>8}{'after':>8}"]
    for row in results:
        lines.append(
            f"{row['project_key']:<24}{row['gate_status']:<10}"
            f"{row['grade_before']:>8.2f}{row['grade_after']:>8.2f}"
        )
    lines.append(
        "distribution: "
        + ", ".join(f"{name}={count}" for name, count in distribution.items())
    )
    return CommandOutcome(EXIT_OK, "\n".join(lines))


def _cmd_qualify(args: argparse.Namespace) -> CommandOutcome:
    try:
        engine = _engine_from_data_dir(Path(args.data_dir))
    except CorruptLog as exc:
        return CommandOutcome(EXIT_IO, str(exc))
    try:
        qual = engine.set_qualification(args.team, args.gate_ok, args.use_cases_ok)
    except UnknownTeam as exc:
        return CommandOutcome(EXIT_VALIDATION, str(exc))
    state = "qualified" if qual.qualified else "not qualified"
    return CommandOutcome(
        EXIT_OK,
        f"{qual.team}: gate_ok={qual.gate_passed} "
        f"use_cases_ok={qual.all_use_cases_implemented} -> {state}",
    )


def _cmd_award(args: argparse.Namespace) -> CommandOutcome:
    rewards = RewardPolicy()
    if args.policy:
        policy_path = Path(args.policy)
        if not policy_path.is_file():
            return CommandOutcome(EXIT_IO, f"policy file not found: {policy_path}")
        try:
            rewards = load_rewards_file(policy_path)
        except ConfigError as exc:
            return CommandOutcome(EXIT_VALIDATION, f"bad policy file: {exc}")
    try:
        engine = _engine_from_data_dir(Path(args.data_dir))
    except CorruptLog as exc:
        return CommandOutcome(EXIT_IO, str(exc))
    entries = engine.leaderboard()
    ranking = [entry.team for entry in entries]
    bonuses = assign_rewards(ranking, engine.qualifications(), rewards)
    results = [
        {
            "rank": entry.rank,
            "team": entry.team,
            "qualified": entry.qualified,
            "bonus": bonuses[entry.team],
        }
        for entry in entries
    ]
    payload = {"schema_version": 1, "bonuses": results, "max_grade": rewards.max_grade}
    if args.format == "machine":
        return CommandOutcome(EXIT_OK, payload=payload)
    lines = [f"{'rank':<6}{'team':<24}{'qualified':<11}{'bonus':>6}"]
    for row in results:
        lines.append(
            f"{row['rank']:<6}{row['team']:<24}"
            f"{str(row['qualified']).lower():<11}{row['bonus']:>6.1f}"
        )
    return CommandOutcome(EXIT_OK, "\n".join(lines))


def _cmd_report(args: argparse.Namespace) -> CommandOutcome:
    dataset_path = Path(args.dataset)
    if not dataset_path.is_file():
        return CommandOutcome(EXIT_IO, f"dataset not found: {dataset_path}")
    try:
        dataset = load_dataset_file(dataset_path)
    except DatasetError as exc:
        return CommandOutcome(EXIT_VALIDATION, f"bad dataset: {exc}")
    try:
        if args.kind == "normality":
            results = normality_report(dataset)
            text, payload = render_normality(results), normality_payload(results)
        elif args.kind == "comparison":
            results = comparison_report(dataset)
            text, payload = render_comparison(results), comparison_payload(results)
        else:
            rows = summary_stats(dataset)
            text, payload = render_summary(rows), summary_payload(rows)
    except ValueError as exc:
        return CommandOutcome(EXIT_VALIDATION, f"cannot compute report: {exc}")

    output = json.dumps(payload, indent=2) + "\n" if args.format == "machine" else text
    if args.out:
        try:
            Path(args.out).write_text(output, encoding="utf-8")
        except OSError as exc:
            return CommandOutcome(EXIT_IO, f"cannot write {args.out}: {exc}")
        return CommandOutcome(EXIT_OK, f"report written to {args.out}")
    if args.format == "machine":
        return CommandOutcome(EXIT_OK, payload=payload)
    return CommandOutcome(EXIT_OK, text.rstrip("\n"))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="debtjudge")
    sub = parser.add_subparsers(dest="command", required=True)

    p_serve = sub.add_parser("serve", help="run the judge service")
    p_serve.add_argument("--config", default=None, help="path to the JSON config file")
    p_serve.set_defaults(func=_cmd_serve)

    p_grade = sub.add_parser("grade", help="batch-grade measure exports")
    p_grade.add_argument("--mode", choices=["penalty"], required=True)
    p_grade.add_argument("--measures", required=True, help="directory of measure exports")
    p_grade.add_argument("--gate", default=None, help="gate definition file")
    p_grade.add_argument("--penalty", default=None, help="penalty policy file")
    p_grade.add_argument("--grade", type=float, default=3.0, help="code grade before penalty")
    p_grade.add_argument("--format", choices=["text", "machine"], default="text")
    p_grade.set_defaults(func=_cmd_grade)

    p_qualify = sub.add_parser("qualify", help="set a team's bonus prerequisites")
    p_qualify.add_argument("team")
    p_qualify.add_argument("--gate-ok", action=argparse.BooleanOptionalAction, required=True)
    p_qualify.add_argument("--use-cases-ok", action=argparse.BooleanOptionalAction, required=True)
    p_qualify.add_argument("--data-dir", default="data")
    p_qualify.set_defaults(func=_cmd_qualify)

    p_award = sub.add_parser("award", help="compute ranking bonuses")
    p_award.add_argument("--policy", default=None, help="reward policy file")
    p_award.add_argument("--data-dir", default="data")
    p_award.add_argument("--format", choices=["text", "machine"], default="text")
    p_award.set_defaults(func=_cmd_award)

    p_report = sub.add_parser("report", help="cohort statistics reports")
    p_report.add_argument("kind", choices=["normality", "comparison", "summary"])
    p_report.add_argument("--dataset", required=True, help="cohort CSV file")
    p_report.add_argument("--format", choices=["text", "machine"], default="text")
    p_report.add_argument("--out", default=None, help="write the report to a file")
    p_report.set_defaults(func=_cmd_report)
    return parser


def run(argv: list[str] | None = None) -> CommandOutcome:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except Exception as exc:  # noqa: BLE001 - the CLI boundary reports and exits
        return CommandOutcome(EXIT_INTERNAL, f"internal error: {exc}")


def main(argv: list[str] | None = None) -> int:
    outcome = run(argv)
    if outcome.payload is not None:
        print(json.dumps(outcome.payload, indent=2))
    if outcome.human_message:
        stream = sys.stdout if outcome.exit_code == EXIT_OK else sys.stderr
        print(outcome.human_message, file=stream)
    return outcome.exit_code


if __name__ == "__main__":
    sys.exit(main())
