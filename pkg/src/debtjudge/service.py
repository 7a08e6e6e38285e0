"""Network front door for the contest.

Receives analyzer webhooks, pulls the full measures for the analysed
project, scores it, and feeds the contest engine. Also exposes the read
endpoints the leaderboard UI polls. Every response body carries
schema_version.
"""
from __future__ import annotations

import hashlib
import hmac
import json
import re
from datetime import date, datetime, timezone
from typing import Callable

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .analyzer import AnalyzerClient, AnalyzerClientConfig, AnalyzerError
from .config import ServiceConfig
from .contest import (
    ContestEngine,
    InvalidRange,
    UnknownTeam,
    entry_to_dict,
    submission_to_dict,
)
from .eventlog import EventLog
from .grading import GateStatus, evaluate_gate
from .metrics import EmptyProject, MetricsError, parse_measures

__all__ = [
    "SCHEMA_VERSION",
    "SIGNATURE_HEADER",
    "compute_signature",
    "parse_timestamp",
    "create_app",
]

SCHEMA_VERSION = 1
SIGNATURE_HEADER = "X-Sonar-Webhook-HMAC-SHA256"

_GATE_STATUS_MAP = {
    "OK": GateStatus.PASSED,
    "WARN": GateStatus.WARNING,
    "ERROR": GateStatus.FAILED,
}

# Analyzer timestamps may use a Z suffix or a compact +0100 style offset,
# neither of which datetime.fromisoformat accepts on this Python.
_COMPACT_OFFSET_RE = re.compile(r"([+-]\d{2})(\d{2})$")


def parse_timestamp(text: str) -> datetime:
    if not isinstance(text, str) or not text.strip():
        raise ValueError("timestamp must be a non-empty string")
    cleaned = text.strip()
    if cleaned.endswith(("Z", "z")):
        cleaned = cleaned[:-1] + "+00:00"
    else:
        cleaned = _COMPACT_OFFSET_RE.sub(r"\1:\2", cleaned)
    parsed = datetime.fromisoformat(cleaned)
    if parsed.tzinfo is None:
        parsed = parsed.replace(tzinfo=timezone.utc)
    return parsed.astimezone(timezone.utc)


def compute_signature(secret: str, body: bytes) -> str:
    return hmac.new(secret.encode("utf-8"), body, hashlib.sha256).hexdigest()


def _error(status_code: int, code: str, detail: str) -> JSONResponse:
    return JSONResponse(
        status_code=status_code,
        content={"schema_version": SCHEMA_VERSION, "error": code, "detail": detail},
    )


def _submit_response(result, gate_status: GateStatus) -> JSONResponse:
    return JSONResponse(
        status_code=200,
        content={
            "schema_version": SCHEMA_VERSION,
            "status": "duplicate" if result.duplicate else "accepted",
            "duplicate": result.duplicate,
            "team": result.submission.team,
            "analysis_id": result.submission.snapshot.analysis_id,
            "submission_id": result.submission.submission_id,
            "rank": result.rank,
            "improved": result.improved,
            "score": result.submission.score.value,
            "gate_status": gate_status.name.lower(),
        },
    )


def create_app(
    config: ServiceConfig,
    engine: ContestEngine | None = None,
    analyzer: AnalyzerClient | None = None,
    clock: Callable[[], datetime] | None = None,
) -> FastAPI:
    """Wire the service together.

    engine, analyzer, and clock are injectable for tests; by default the
    engine replays the event log under config.data_dir and the analyzer
    client points at config.analyzer_url.
    """
    if engine is None:
        engine = ContestEngine(EventLog(config.log_path), config.weights)
    if analyzer is None and config.analyzer_url:
        analyzer = AnalyzerClient(
            AnalyzerClientConfig(
                base_url=config.analyzer_url, auth_token=config.analyzer_token
            )
        )
    now = clock if clock is not None else (lambda: datetime.now(timezone.utc))

    app = FastAPI(title="debtjudge", docs_url=None, redoc_url=None)
    app.state.engine = engine
    app.state.analyzer = analyzer
    app.state.config = config

    @app.post("/webhook")
    async def webhook(request: Request):
        raw = await request.body()
        if config.webhook_secret:
            provided = request.headers.get(SIGNATURE_HEADER, "")
            expected = compute_signature(config.webhook_secret, raw)
            if not hmac.compare_digest(provided, expected):
                return _error(401, "signature_mismatch", "webhook signature check failed")
        try:
            payload = json.loads(raw)
        except ValueError:
            return _error(422, "malformed_payload", "body is not valid JSON")
        if not isinstance(payload, dict):
            return _error(422, "malformed_payload", "body must be a JSON object")

        project = payload.get("project")
        project_key = project.get("key") if isinstance(project, dict) else None
        if not isinstance(project_key, str) or not project_key:
            return _error(422, "malformed_payload", "project.key is required")
        gate = payload.get("qualityGate")
        status_text = gate.get("status") if isinstance(gate, dict) else None
        gate_status = _GATE_STATUS_MAP.get(status_text)
        if gate_status is None:
            return _error(422, "malformed_payload", "qualityGate.status must be OK, WARN, or ERROR")
        analysis_id = payload.get("taskId") or payload.get("analysisId")
        if not isinstance(analysis_id, str) or not analysis_id:
            return _error(422, "malformed_payload", "taskId or analysisId is required")
        try:
            analysed_at = parse_timestamp(payload.get("analysedAt", ""))
        except ValueError:
            return _error(422, "malformed_payload", "analysedAt is not a valid timestamp")

        existing = engine.find_analysis(analysis_id)
        if existing is not None:
            result = engine.submit(existing.team, existing.snapshot, existing.gate_status, now())
            return _submit_response(result, existing.gate_status)

        if analyzer is None:
            return _error(502, "analyzer_unreachable", "no analyzer configured")
        try:
            snapshot = analyzer.fetch_snapshot(project_key, analysis_id, analysed_at)
        except AnalyzerError as exc:
            return _error(502, "analyzer_unreachable", str(exc))
        except MetricsError as exc:
            return _error(502, "analyzer_data_invalid", str(exc))
        try:
            result = engine.submit(project_key, snapshot, gate_status, now())
        except EmptyProject as exc:
            return _error(422, "empty_project", str(exc))
        return _submit_response(result, gate_status)

    @app.post("/submissions")
    async def direct_submission(request: Request):
        try:
            payload = await request.json()
        except ValueError:
            return _error(422, "malformed_payload", "body is not valid JSON")
        if not isinstance(payload, dict):
            return _error(422, "malformed_payload", "body must be a JSON object")
        project_key = payload.get("project_key")
        if not isinstance(project_key, str) or not project_key:
            return _error(422, "malformed_payload", "project_key is required")
        analysis_id = payload.get("analysis_id")
        if not isinstance(analysis_id, str) or not analysis_id:
            return _error(422, "malformed_payload", "analysis_id is required")
        try:
            analysed_at = parse_timestamp(payload.get("analysed_at", ""))
        except ValueError:
            return _error(422, "malformed_payload", "analysed_at is not a valid timestamp")
        measures = payload.get("measures")
        if isinstance(measures, dict):
            pairs = [(str(k), str(v)) for k, v in measures.items()]
        elif isinstance(measures, list):
            pairs = [
                (str(m.get("metric")), str(m.get("value")))
                for m in measures
                if isinstance(m, dict)
            ]
        else:
            return _error(422, "malformed_payload", "measures must be an object or an array")
        try:
            snapshot = parse_measures(
                pairs,
                project_key=project_key,
                analysis_id=analysis_id,
                analysed_at=analysed_at,
            )
            gate_report = evaluate_gate(snapshot, config.gate)
            result = engine.submit(project_key, snapshot, gate_report.status, now())
        except MetricsError as exc:
            return _error(422, "invalid_submission", str(exc))
        return _submit_response(result, result.submission.gate_status)

    @app.get("/leaderboard")
    async def leaderboard(request: Request):
        as_of_text = request.query_params.get("as_of")
        as_of = None
        if as_of_text:
            try:
                as_of = parse_timestamp(as_of_text)
            except ValueError:
                return _error(400, "invalid_timestamp", "as_of is not a valid timestamp")
        entries = engine.leaderboard(as_of)
        return JSONResponse(
            content={
                "schema_version": SCHEMA_VERSION,
                "as_of": as_of.isoformat() if as_of else None,
                "entries": [entry_to_dict(e) for e in entries],
            }
        )

    @app.get("/submissions")
    async def submissions(request: Request):
        bounds = {}
        for name in ("from", "to"):
            text = request.query_params.get(name)
            if text is None:
                bounds[name] = None
                continue
            try:
                bounds[name] = parse_timestamp(text)
            except ValueError:
                return _error(400, "invalid_timestamp", f"{name} is not a valid timestamp")
        try:
            subs = engine.submissions_in_range(bounds["from"], bounds["to"])
        except InvalidRange as exc:
            return _error(400, "invalid_range", str(exc))
        return JSONResponse(
            content={
                "schema_version": SCHEMA_VERSION,
                "count": len(subs),
                "submissions": [submission_to_dict(s) for s in subs],
            }
        )

    @app.get("/teams/{team_id}/history")
    async def history(team_id: str, request: Request):
        until_text = request.query_params.get("until")
        if until_text:
            try:
                until = date.fromisoformat(until_text)
            except ValueError:
                return _error(400, "invalid_date", "until must be YYYY-MM-DD")
        else:
            until = now().date()
        try:
            result = engine.position_history(team_id, until)
        except UnknownTeam as exc:
            return _error(404, "unknown_team", str(exc))
        return JSONResponse(
            content={
                "schema_version": SCHEMA_VERSION,
                "team": result.team,
                "series": [
                    {"date": day.isoformat(), "rank": rank} for day, rank in result.series
                ],
            }
        )

    @app.get("/healthz")
    async def healthz():
        return JSONResponse(
            content={
                "schema_version": SCHEMA_VERSION,
                "status": "ok",
                "total_submissions": engine.total_submissions,
                "replayed_events": engine.replayed_events,
            }
        )

    return app
