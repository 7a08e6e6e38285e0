"""Cohort dataset ingestion.

One CSV row per project: an identifier, the grading strategy the cohort ran
under, and the eight per-project metric values. Comma delimiter, dot
decimals, header exactly as EXPECTED_HEADER.
"""
from __future__ import annotations

import csv
import io
import math
import re
from dataclasses import dataclass
from pathlib import Path

__all__ = [
    "STRATEGIES",
    "METRIC_COLUMNS",
    "EXPECTED_HEADER",
    "DatasetError",
    "SchemaError",
    "BadFactor",
    "BadNumber",
    "CohortRow",
    "CohortDataset",
    "load_dataset",
    "load_dataset_file",
]

STRATEGIES = ("penalising", "rewarding")

METRIC_COLUMNS = (
    "reliability_rate",
    "security_rate",
    "comment_density",
    "sqale_debt_ratio",
    "smells_density",
    "duplicated_lines_density",
    "cyclomatic_complexity_rate",
    "cognitive_complexity_rate",
)

EXPECTED_HEADER = ("project", "strategy") + METRIC_COLUMNS

_MIN_GROUP_SIZE = 3

_NUMBER_RE = re.compile(r"^[+-]?(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?$")


class DatasetError(ValueError):
    """Base class for dataset ingestion failures."""


class SchemaError(DatasetError):
    """Header mismatch, ragged row, or a group too small to test."""


class BadFactor(DatasetError):
    """Unknown strategy value."""


class BadNumber(DatasetError):
    """A metric cell is not a finite non-negative dot-decimal number."""


@dataclass(frozen=True)
class CohortRow:
    project: str
    strategy: str
    metrics: dict[str, float]


@dataclass(frozen=True)
class CohortDataset:
    rows: tuple[CohortRow, ...]

    def group(self, strategy: str) -> tuple[CohortRow, ...]:
        return tuple(row for row in self.rows if row.strategy == strategy)

    def column(self, metric: str, strategy: str) -> list[float]:
        """Metric values for one group, in row order."""
        if metric not in METRIC_COLUMNS:
            raise KeyError(f"unknown metric column {metric!r}")
        if strategy not in STRATEGIES:
            raise KeyError(f"unknown strategy {strategy!r}")
        return [row.metrics[metric] for row in self.rows if row.strategy == strategy]

    def group_sizes(self) -> dict[str, int]:
        return {strategy: len(self.group(strategy)) for strategy in STRATEGIES}

    @property
    def total(self) -> int:
        return len(self.rows)


def load_dataset(text: str) -> CohortDataset:
    """Parse cohort CSV text into a validated dataset.

    Raises:
        SchemaError: header differs from EXPECTED_HEADER, a row has the
            wrong width, or a strategy group has fewer than 3 rows.
        BadFactor: a strategy cell is not "penalising" or "rewarding".
        BadNumber: a metric cell fails numeric validation.
    """
    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise SchemaError("dataset is empty, expected a header row") from None
    if tuple(h.strip() for h in header) != EXPECTED_HEADER:
        missing = [c for c in EXPECTED_HEADER if c not in header]
        if missing:
            raise SchemaError(f"header is missing columns: {', '.join(missing)}")
        raise SchemaError(
            f"header must be exactly: {','.join(EXPECTED_HEADER)}"
        )

    rows: list[CohortRow] = []
    for line_no, cells in enumerate(reader, start=2):
        if not cells or (len(cells) == 1 and not cells[0].strip()):
            continue
        if len(cells) != len(EXPECTED_HEADER):
            raise SchemaError(
                f"line {line_no}: expected {len(EXPECTED_HEADER)} cells, got {len(cells)}"
            )
        project = cells[0].strip()
        if not project:
            raise SchemaError(f"line {line_no}: empty project identifier")
        strategy = cells[1].strip()
        if strategy not in STRATEGIES:
            raise BadFactor(
                f"line {line_no}: strategy must be one of {STRATEGIES}, got {strategy!r}"
            )
        metrics: dict[str, float] = {}
        for column, cell in zip(METRIC_COLUMNS, cells[2:]):
            stripped = cell.strip()
            if not _NUMBER_RE.match(stripped):
                raise BadNumber(f"line {line_no}, column {column!r}: {cell!r}")
            value = float(stripped)
            if not math.isfinite(value) or value < 0:
                raise BadNumber(
                    f"line {line_no}, column {column!r}: must be finite and non-negative"
                )
            metrics[column] = value
        rows.append(CohortRow(project=project, strategy=strategy, metrics=metrics))

    dataset = CohortDataset(rows=tuple(rows))
    for strategy, size in dataset.group_sizes().items():
        if size < _MIN_GROUP_SIZE:
            raise SchemaError(
                f"group {strategy!r} has {size} rows, need at least {_MIN_GROUP_SIZE}"
            )
    return dataset


def load_dataset_file(path: str | Path) -> CohortDataset:
    return load_dataset(Path(path).read_text(encoding="utf-8"))
