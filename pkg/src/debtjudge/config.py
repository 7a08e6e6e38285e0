"""Service configuration and policy files.

A JSON config file sets the service up; environment variables override any
file value. Gate, penalty, and reward policies live in their own JSON files
(or inline sections) so operators can swap them without touching code.
"""
from __future__ import annotations

import json
import os
from dataclasses import dataclass
from pathlib import Path
from typing import Mapping

from .grading import (
    DEFAULT_GATE,
    Comparator,
    GateCondition,
    InvalidGate,
    InvalidPolicy,
    PenaltyPolicy,
    RewardPolicy,
)
from .metrics import ScoreWeights

__all__ = [
    "ConfigError",
    "ServiceConfig",
    "load_config",
    "parse_gate",
    "parse_penalty",
    "parse_rewards",
    "load_gate_file",
    "load_penalty_file",
    "load_rewards_file",
]

_COMPARATOR_ALIASES = {
    "greater_than": Comparator.GREATER_THAN,
    "less_than": Comparator.LESS_THAN,
    ">": Comparator.GREATER_THAN,
    "<": Comparator.LESS_THAN,
    "gt": Comparator.GREATER_THAN,
    "lt": Comparator.LESS_THAN,
}


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class ServiceConfig:
    host: str = "127.0.0.1"
    port: int = 8080
    data_dir: Path = Path("data")
    analyzer_url: str = ""
    analyzer_token: str = ""
    webhook_secret: str = ""
    weights: ScoreWeights = ScoreWeights()
    gate: tuple[GateCondition, ...] = DEFAULT_GATE
    penalty: PenaltyPolicy = PenaltyPolicy()
    rewards: RewardPolicy = RewardPolicy()

    @property
    def log_path(self) -> Path:
        return self.data_dir / "events.jsonl"


def _read_json(path: Path) -> dict:
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path} is not valid JSON: {exc.msg}") from exc
    if not isinstance(data, (dict, list)):
        raise ConfigError(f"{path} must hold a JSON object or array")
    return data


def parse_gate(data) -> tuple[GateCondition, ...]:
    """Build gate conditions from a JSON array or a {"conditions": []} object."""
    if isinstance(data, dict):
        if "gate" in data:
            data = data["gate"]
        if isinstance(data, dict):
            data = data.get("conditions")
    if not isinstance(data, list) or not data:
        raise ConfigError("gate definition needs a non-empty conditions array")
    conditions = []
    for item in data:
        if not isinstance(item, dict):
            raise ConfigError(f"gate condition must be an object, got {item!r}")
        comparator_text = str(item.get("comparator", "greater_than")).lower()
        comparator = _COMPARATOR_ALIASES.get(comparator_text)
        if comparator is None:
            raise ConfigError(f"unknown comparator {comparator_text!r}")
        try:
            conditions.append(
                GateCondition(
                    metric=item.get("metric", ""),
                    comparator=comparator,
                    warning_threshold=_optional_number(item, "warning_threshold"),
                    error_threshold=_optional_number(item, "error_threshold"),
                )
            )
        except InvalidGate as exc:
            raise ConfigError(str(exc)) from exc
    return tuple(conditions)


def _optional_number(item: dict, key: str) -> float | None:
    value = item.get(key)
    if value is None:
        return None
    if not isinstance(value, (int, float)) or isinstance(value, bool):
        raise ConfigError(f"{key} must be a number, got {value!r}")
    return float(value)


def parse_penalty(data) -> PenaltyPolicy:
    if isinstance(data, dict) and "penalty" in data:
        data = data["penalty"]
    if not isinstance(data, dict):
        raise ConfigError("penalty policy must be a JSON object")
    try:
        return PenaltyPolicy(
            passed_fraction=float(data.get("passed_fraction", 0.00)),
            warning_fraction=float(data.get("warning_fraction", 0.05)),
            failed_fraction=float(data.get("failed_fraction", 0.10)),
        )
    except (InvalidPolicy, TypeError, ValueError) as exc:
        raise ConfigError(f"bad penalty policy: {exc}") from exc


def parse_rewards(data) -> RewardPolicy:
    if isinstance(data, dict) and "rewards" in data:
        data = data["rewards"]
    if not isinstance(data, dict):
        raise ConfigError("reward policy must be a JSON object")
    schedule = data.get("bonus_schedule", [0.9, 0.6, 0.3])
    if not isinstance(schedule, list):
        raise ConfigError("bonus_schedule must be an array")
    try:
        return RewardPolicy(
            bonus_schedule=tuple(float(b) for b in schedule),
            max_grade=float(data.get("max_grade", 10.0)),
        )
    except (InvalidPolicy, TypeError, ValueError) as exc:
        raise ConfigError(f"bad reward policy: {exc}") from exc


def load_gate_file(path: str | Path) -> tuple[GateCondition, ...]:
    return parse_gate(_read_json(Path(path)))


def load_penalty_file(path: str | Path) -> PenaltyPolicy:
    return parse_penalty(_read_json(Path(path)))


def load_rewards_file(path: str | Path) -> RewardPolicy:
    return parse_rewards(_read_json(Path(path)))


def load_config(path: str | Path | None = None, env: Mapping[str, str] | None = None) -> ServiceConfig:
    """Assemble the service configuration.

    File values come first, DEBTJUDGE_* environment variables override them,
    and anything still unset falls back to defaults. Relative paths inside
    the file resolve against the file's directory.

    Raises:
        ConfigError: unreadable or invalid file, or a bad override value.
    """
    env = os.environ if env is None else env
    data: dict = {}
    base = Path(".")
    if path is not None:
        file_path = Path(path)
        data = _read_json(file_path)
        if not isinstance(data, dict):
            raise ConfigError(f"{file_path} must hold a JSON object")
        base = file_path.parent

    def pick(env_key: str, file_key: str, default):
        if env_key in env:
            return env[env_key]
        return data.get(file_key, default)

    host = str(pick("DEBTJUDGE_HOST", "host", "127.0.0.1"))
    try:
        port = int(pick("DEBTJUDGE_PORT", "port", 8080))
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"port must be an integer: {exc}") from exc
    data_dir = base / str(pick("DEBTJUDGE_DATA_DIR", "data_dir", "data"))
    analyzer_url = str(pick("DEBTJUDGE_ANALYZER_URL", "analyzer_url", ""))
    analyzer_token = str(pick("DEBTJUDGE_ANALYZER_TOKEN", "analyzer_token", ""))
    webhook_secret = str(pick("DEBTJUDGE_WEBHOOK_SECRET", "webhook_secret", ""))

    weight_values = data.get("weights", {})
    if not isinstance(weight_values, dict):
        raise ConfigError("weights must be a JSON object")
    try:
        weights = ScoreWeights(
            tdr=float(env.get("DEBTJUDGE_WEIGHT_TDR", weight_values.get("tdr", 1.0))),
            dcd=float(env.get("DEBTJUDGE_WEIGHT_DCD", weight_values.get("dcd", 1.0))),
            pb_re=float(env.get("DEBTJUDGE_WEIGHT_PB_RE", weight_values.get("pb_re", 1.0))),
            sv_re=float(env.get("DEBTJUDGE_WEIGHT_SV_RE", weight_values.get("sv_re", 1.0))),
        )
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"bad score weights: {exc}") from exc

    gate = DEFAULT_GATE
    gate_file = pick("DEBTJUDGE_GATE_FILE", "gate_file", None)
    if gate_file:
        gate = load_gate_file(base / str(gate_file))
    elif "gate" in data:
        gate = parse_gate(data["gate"])

    penalty = PenaltyPolicy()
    penalty_file = pick("DEBTJUDGE_PENALTY_FILE", "penalty_file", None)
    if penalty_file:
        penalty = load_penalty_file(base / str(penalty_file))
    elif "penalty" in data:
        penalty = parse_penalty(data["penalty"])

    rewards = RewardPolicy()
    rewards_file = pick("DEBTJUDGE_REWARDS_FILE", "rewards_file", None)
    if rewards_file:
        rewards = load_rewards_file(base / str(rewards_file))
    elif "rewards" in data:
        rewards = parse_rewards(data["rewards"])

    return ServiceConfig(
        host=host,
        port=port,
        data_dir=data_dir,
        analyzer_url=analyzer_url,
        analyzer_token=analyzer_token,
        webhook_secret=webhook_secret,
        weights=weights,
        gate=gate,
        penalty=penalty,
        rewards=rewards,
    )
