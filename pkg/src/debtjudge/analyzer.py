"""HTTP client for the analyzer's measures API.

Pulls the fifteen judge metrics for a project with bearer-token auth and
exponential backoff on transient failures. Auth rejections abort at once.
"""
from __future__ import annotations

import time
from dataclasses import dataclass
from datetime import datetime
from typing import Callable

import httpx

from .metrics import METRIC_KEYS, MetricSnapshot, parse_measures

__all__ = [
    "AnalyzerError",
    "Unreachable",
    "AuthFailed",
    "AnalyzerClientConfig",
    "AnalyzerClient",
]

MEASURES_PATH = "/api/measures/component"


class AnalyzerError(Exception):
    """Base class for analyzer fetch failures."""


class Unreachable(AnalyzerError):
    """Transport failure, server error after retries, or unusable response."""


class AuthFailed(AnalyzerError):
    """The analyzer rejected the configured token."""


@dataclass(frozen=True)
class AnalyzerClientConfig:
    base_url: str
    auth_token: str = ""
    metric_keys: tuple[str, ...] = METRIC_KEYS
    timeout: float = 10.0
    retries: int = 2
    retry_backoff: float = 0.25


class AnalyzerClient:
    """Thin wrapper over the measures endpoint.

    A custom transport can be injected for tests; sleeping between retries
    is injectable for the same reason.
    """

    def __init__(
        self,
        config: AnalyzerClientConfig,
        transport: httpx.BaseTransport | None = None,
        sleep: Callable[[float], None] = time.sleep,
    ):
        self.config = config
        self._sleep = sleep
        headers = {}
        if config.auth_token:
            headers["Authorization"] = f"Bearer {config.auth_token}"
        self._client = httpx.Client(
            base_url=config.base_url,
            timeout=config.timeout,
            headers=headers,
            transport=transport,
        )

    def fetch_measures(self, project_key: str) -> list[tuple[str, str]]:
        """Fetch raw (metric, value) pairs for one project.

        Retries transport errors and 5xx responses with exponential backoff,
        up to the configured retry count.

        Raises:
            AuthFailed: 401 or 403 from the analyzer, no retries.
            Unreachable: transport failure or server error after all
                attempts, any other non-success status, or a response body
                that does not carry component measures.
        """
        params = {
            "component": project_key,
            "metricKeys": ",".join(self.config.metric_keys),
        }
        attempts = self.config.retries + 1
        last_error: Exception | None = None
        for attempt in range(attempts):
            try:
                response = self._client.get(MEASURES_PATH, params=params)
            except httpx.TransportError as exc:
                last_error = exc
                if attempt + 1 < attempts:
                    self._sleep(self.config.retry_backoff * (2 ** attempt))
                continue
            if response.status_code in (401, 403):
                raise AuthFailed(f"analyzer rejected credentials ({response.status_code})")
            if response.status_code >= 500:
                last_error = Unreachable(f"analyzer returned {response.status_code}")
                if attempt + 1 < attempts:
                    self._sleep(self.config.retry_backoff * (2 ** attempt))
                continue
            if response.status_code != 200:
                raise Unreachable(
                    f"analyzer returned {response.status_code} for {project_key!r}"
                )
            return self._parse_body(response)
        raise Unreachable(f"analyzer unreachable after {attempts} attempts: {last_error}")

    def _parse_body(self, response: httpx.Response) -> list[tuple[str, str]]:
        try:
            data = response.json()
            measures = data["component"]["measures"]
        except (ValueError, KeyError, TypeError) as exc:
            raise Unreachable(f"unusable analyzer response: {exc}") from exc
        pairs = []
        for measure in measures:
            if isinstance(measure, dict) and "metric" in measure and "value" in measure:
                pairs.append((str(measure["metric"]), str(measure["value"])))
        return pairs

    def fetch_snapshot(
        self, project_key: str, analysis_id: str, analysed_at: datetime
    ) -> MetricSnapshot:
        """Fetch and validate a full snapshot in one step.

        Raises:
            MissingMetric, MalformedValue, InvalidSnapshot: propagated from
                measure parsing when the analyzer's data is unusable.
        """
        pairs = self.fetch_measures(project_key)
        return parse_measures(
            pairs,
            project_key=project_key,
            analysis_id=analysis_id,
            analysed_at=analysed_at,
        )

    def close(self) -> None:
        self._client.close()

    def __enter__(self) -> "AnalyzerClient":
        return self

    def __exit__(self, *exc_info) -> None:
        self.close()
