"""Shared fixtures: snapshot builder, stub analyzer transport, service factory."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from datetime import datetime, timedelta, timezone
from pathlib import Path
from typing import Callable

import httpx
import pytest
from fastapi.testclient import TestClient

from debtjudge import ContestEngine, EventLog, MetricSnapshot, ScoreWeights
from debtjudge.analyzer import AnalyzerClient, AnalyzerClientConfig
from debtjudge.config import ServiceConfig
from debtjudge.grading import DEFAULT_GATE, GateCondition
from debtjudge.service import create_app

UTC = timezone.utc

BASE_TIME = datetime(2026, 3, 1, 10, 0, 0, tzinfo=UTC)

# Defaults satisfy every snapshot invariant and fail no arithmetic edge:
# blocker + major <= violations, cyclomatic >= functions, densities <= 100.
SNAPSHOT_DEFAULTS = dict(
    project_key="alpha-app",
    analysis_id="an-0001",
    ncloc=1000,
    code_smells=50,
    sqale_debt_ratio=1.5,
    duplicated_lines_density=2.0,
    comment_lines_density=20.0,
    security_remediation_effort=30.0,
    reliability_remediation_effort=60.0,
    cognitive_complexity=200,
    cyclomatic_complexity=300,
    functions=100,
    bugs=2,
    vulnerabilities=1,
    violations=10,
    blocker_violations=1,
    major_violations=3,
)


def make_snapshot(**overrides) -> MetricSnapshot:
    values = dict(SNAPSHOT_DEFAULTS)
    values.setdefault("analysed_at", BASE_TIME)
    values.update(overrides)
    return MetricSnapshot(**values)


def measure_pairs(snapshot: MetricSnapshot) -> list[tuple[str, str]]:
    """Render a snapshot back into analyzer wire pairs (counts as ints)."""
    def text(v):
        return str(int(v)) if float(v).is_integer() else repr(float(v))

    return [
        ("ncloc", text(snapshot.ncloc)),
        ("code_smells", text(snapshot.code_smells)),
        ("sqale_debt_ratio", text(snapshot.sqale_debt_ratio)),
        ("duplicated_lines_density", text(snapshot.duplicated_lines_density)),
        ("comment_lines_density", text(snapshot.comment_lines_density)),
        ("security_remediation_effort", text(snapshot.security_remediation_effort)),
        ("reliability_remediation_effort", text(snapshot.reliability_remediation_effort)),
        ("cognitive_complexity", text(snapshot.cognitive_complexity)),
        ("complexity", text(snapshot.cyclomatic_complexity)),
        ("functions", text(snapshot.functions)),
        ("bugs", text(snapshot.bugs)),
        ("vulnerabilities", text(snapshot.vulnerabilities)),
        ("violations", text(snapshot.violations)),
        ("blocker_violations", text(snapshot.blocker_violations)),
        ("major_violations", text(snapshot.major_violations)),
    ]


class TickingClock:
    """Deterministic clock: each call advances by a fixed step."""

    def __init__(self, start: datetime = BASE_TIME, step_seconds: float = 1.0):
        self.current = start
        self.step = timedelta(seconds=step_seconds)

    def __call__(self) -> datetime:
        now = self.current
        self.current = now + self.step
        return now


class StubAnalyzer:
    """In-memory measures endpoint served through httpx.MockTransport.

    ``projects`` maps project_key -> list of (metric, value) pairs.
    ``fail_with`` forces an HTTP status for every request when set.
    """

    def __init__(self):
        self.projects: dict[str, list[tuple[str, str]]] = {}
        self.fail_with: int | None = None
        self.calls = 0

    def add(self, project_key: str, pairs: list[tuple[str, str]]) -> None:
        self.projects[project_key] = pairs

    def add_snapshot(self, snapshot: MetricSnapshot) -> None:
        self.add(snapshot.project_key, measure_pairs(snapshot))

    def handler(self, request: httpx.Request) -> httpx.Response:
        self.calls += 1
        if self.fail_with is not None:
            return httpx.Response(self.fail_with, json={"errors": [{"msg": "stub failure"}]})
        component = request.url.params.get("component")
        pairs = self.projects.get(component)
        if pairs is None:
            return httpx.Response(404, json={"errors": [{"msg": f"unknown component {component}"}]})
        measures = [{"metric": k, "value": v} for k, v in pairs]
        return httpx.Response(200, json={"component": {"key": component, "measures": measures}})

    def transport(self) -> httpx.MockTransport:
        return httpx.MockTransport(self.handler)


@dataclass
class ServiceHarness:
    client: TestClient
    engine: ContestEngine
    config: ServiceConfig
    stub: StubAnalyzer
    clock: TickingClock
    data_dir: Path

    def sign(self, body: bytes) -> str:
        from debtjudge.service import compute_signature

        return compute_signature(self.config.webhook_secret, body)


def build_service(
    tmp_path: Path,
    *,
    secret: str = "",
    gate: tuple[GateCondition, ...] = DEFAULT_GATE,
    weights: ScoreWeights = ScoreWeights(),
    retries: int = 0,
    clock: TickingClock | None = None,
    stub: StubAnalyzer | None = None,
) -> ServiceHarness:
    data_dir = tmp_path / "data"
    cfg = ServiceConfig(
        data_dir=data_dir,
        analyzer_url="http://analyzer.test",
        webhook_secret=secret,
        weights=weights,
        gate=gate,
    )
    stub = stub or StubAnalyzer()
    analyzer = AnalyzerClient(
        AnalyzerClientConfig(base_url="http://analyzer.test", retries=retries, retry_backoff=0.0),
        transport=stub.transport(),
        sleep=lambda _s: None,
    )
    engine = ContestEngine(EventLog(cfg.log_path, fsync=False), weights=weights)
    clock = clock or TickingClock()
    app = create_app(cfg, engine=engine, analyzer=analyzer, clock=clock)
    client = TestClient(app, raise_server_exceptions=True)
    return ServiceHarness(client=client, engine=engine, config=cfg, stub=stub, clock=clock, data_dir=data_dir)


@pytest.fixture
def snapshot() -> MetricSnapshot:
    return make_snapshot()


@pytest.fixture
def engine(tmp_path) -> ContestEngine:
    return ContestEngine(EventLog(tmp_path / "events.jsonl", fsync=False))


@pytest.fixture
def service(tmp_path) -> ServiceHarness:
    return build_service(tmp_path)


def webhook_payload(snapshot: MetricSnapshot, status: str = "OK") -> dict:
    return {
        "taskId": snapshot.analysis_id,
        "analysedAt": snapshot.analysed_at.isoformat(),
        "status": "SUCCESS",
        "project": {"key": snapshot.project_key, "name": snapshot.project_key},
        "qualityGate": {"status": status},
    }


def post_webhook(harness: ServiceHarness, snapshot: MetricSnapshot, status: str = "OK"):
    body = json.dumps(webhook_payload(snapshot, status)).encode()
    headers = {"content-type": "application/json"}
    if harness.config.webhook_secret:
        headers["X-Sonar-Webhook-HMAC-SHA256"] = harness.sign(body)
    return harness.client.post("/webhook", content=body, headers=headers)
