"""Append-only JSON-lines event log.

One JSON object per line, flushed (and by default fsynced) on every append
so acknowledged events survive a crash. Replaying the file in order rebuilds
engine state; a bad line aborts the replay with its 1-based line number.
"""
from __future__ import annotations

import json
import os
import threading
from pathlib import Path
from typing import Iterator

__all__ = ["CorruptLog", "EventLog"]


class CorruptLog(Exception):
    def __init__(self, line_number: int, reason: str):
        self.line_number = line_number
        self.reason = reason
        super().__init__(f"corrupt event log at line {line_number}: {reason}")


class EventLog:
    """Durable ordered record of contest events.

    fsync defaults on; tests that generate thousands of events may turn it
    off, which weakens crash durability but never changes file content.
    """

    def __init__(self, path: str | Path, fsync: bool = True):
        self.path = Path(path)
        self._fsync = fsync
        self._lock = threading.Lock()
        self.path.parent.mkdir(parents=True, exist_ok=True)
        self._handle = open(self.path, "a", encoding="utf-8")

    def append(self, event: dict) -> None:
        line = json.dumps(event, sort_keys=True, separators=(",", ":"))
        with self._lock:
            self._handle.write(line + "\n")
            self._handle.flush()
            if self._fsync:
                os.fsync(self._handle.fileno())

    def events(self) -> Iterator[tuple[int, dict]]:
        """Yield (line_number, event) pairs in append order.

        Line numbers are 1-based and let replay errors point at the exact
        offending record.

        Raises:
            CorruptLog: a line is not a JSON object.
        """
        with open(self.path, "r", encoding="utf-8") as handle:
            for line_number, line in enumerate(handle, start=1):
                stripped = line.strip()
                if not stripped:
                    continue
                try:
                    event = json.loads(stripped)
                except json.JSONDecodeError as exc:
                    raise CorruptLog(line_number, f"invalid JSON: {exc.msg}") from exc
                if not isinstance(event, dict):
                    raise CorruptLog(line_number, "event is not an object")
                yield line_number, event

    def close(self) -> None:
        with self._lock:
            if not self._handle.closed:
                self._handle.close()

    def __enter__(self) -> "EventLog":
        return self

    def __exit__(self, *exc_info) -> None:
        self.close()
