"""Append-only JSON-lines log: durability, ordering, corruption reporting."""

from __future__ import annotations

import json

import pytest

from debtjudge.eventlog import CorruptLog, EventLog


def test_round_trip_preserves_order_and_line_numbers(tmp_path):
    path = tmp_path / "events.jsonl"
    events = [{"type": "a", "n": i} for i in range(5)]
    with EventLog(path) as log:
        for e in events:
            log.append(e)
    replayed = list(EventLog(path).events())
    assert [e for _, e in replayed] == events
    assert [n for n, _ in replayed] == [1, 2, 3, 4, 5]


def test_serialisation_is_canonical(tmp_path):
    path = tmp_path / "events.jsonl"
    with EventLog(path) as log:
        log.append({"b": 2, "a": 1})
    assert path.read_text() == '{"a":1,"b":2}\n'


def test_append_after_reopen_extends(tmp_path):
    path = tmp_path / "events.jsonl"
    with EventLog(path) as log:
        log.append({"n": 1})
    with EventLog(path) as log:
        log.append({"n": 2})
    assert [e for _, e in EventLog(path).events()] == [{"n": 1}, {"n": 2}]


def test_creates_parent_directories(tmp_path):
    path = tmp_path / "nested" / "deep" / "events.jsonl"
    with EventLog(path) as log:
        log.append({"n": 1})
    assert path.exists()


def test_blank_lines_are_skipped(tmp_path):
    path = tmp_path / "events.jsonl"
    path.write_text('{"n":1}\n\n{"n":2}\n')
    replayed = list(EventLog(path).events())
    assert [e for _, e in replayed] == [{"n": 1}, {"n": 2}]
    assert [n for n, _ in replayed] == [1, 3]


def test_corrupt_json_reports_line_number(tmp_path):
    path = tmp_path / "events.jsonl"
    path.write_text('{"n":1}\n{"n":2\n{"n":3}\n')
    with pytest.raises(CorruptLog) as exc:
        list(EventLog(path).events())
    assert exc.value.line_number == 2


def test_non_object_line_is_corrupt(tmp_path):
    path = tmp_path / "events.jsonl"
    path.write_text('{"n":1}\n[1,2,3]\n')
    with pytest.raises(CorruptLog) as exc:
        list(EventLog(path).events())
    assert exc.value.line_number == 2


def test_missing_file_replays_empty(tmp_path):
    assert list(EventLog(tmp_path / "absent.jsonl").events()) == []


def test_fsync_off_writes_identical_bytes(tmp_path):
    synced = tmp_path / "synced.jsonl"
    fast = tmp_path / "fast.jsonl"
    events = [{"type": "submission", "n": i} for i in range(3)]
    with EventLog(synced, fsync=True) as a, EventLog(fast, fsync=False) as b:
        for e in events:
            a.append(e)
            b.append(e)
    assert synced.read_bytes() == fast.read_bytes()


def test_appends_visible_while_handle_open(tmp_path):
    path = tmp_path / "events.jsonl"
    with EventLog(path) as log:
        log.append({"n": 1})
        # a second reader sees the flushed line before close
        assert [e for _, e in EventLog(path).events()] == [{"n": 1}]


def test_non_serialisable_event_rejected_without_partial_write(tmp_path):
    path = tmp_path / "events.jsonl"
    with EventLog(path) as log:
        log.append({"n": 1})
        with pytest.raises(TypeError):
            log.append({"bad": object()})
        log.append({"n": 2})
    lines = path.read_text().splitlines()
    assert [json.loads(l) for l in lines] == [{"n": 1}, {"n": 2}]
