"""Cohort CSV loading and validation."""

from __future__ import annotations

from pathlib import Path

import pytest

from debtjudge.stats.dataset import (
    EXPECTED_HEADER,
    METRIC_COLUMNS,
    BadFactor,
    BadNumber,
    SchemaError,
    load_dataset,
    load_dataset_file,
)

FIXTURE = Path(__file__).parent / "data" / "cohort_synthetic.csv"

HEADER = ",".join(EXPECTED_HEADER)


def rows_csv(rows: list[str]) -> str:
    return "\n".join([HEADER, *rows]) + "\n"


def row(project="p", strategy="penalising", value="1.0"):
    return ",".join([project, strategy] + [value] * len(METRIC_COLUMNS))


MINIMAL = rows_csv(
    [row(f"pen-{i}", "penalising", f"{i}.5") for i in range(3)]
    + [row(f"rew-{i}", "rewarding", f"{i}.25") for i in range(3)]
)


class TestLoadDataset:
    def test_fixture_loads_with_expected_group_sizes(self):
        cohort = load_dataset_file(FIXTURE)
        assert cohort.group_sizes() == {"penalising": 11, "rewarding": 13}
        assert cohort.total == 24

    def test_column_extraction_preserves_row_order(self):
        cohort = load_dataset(MINIMAL)
        assert cohort.column("sqale_debt_ratio", "penalising") == [0.5, 1.5, 2.5]
        assert cohort.column("sqale_debt_ratio", "rewarding") == [0.25, 1.25, 2.25]

    def test_group_returns_rows(self):
        cohort = load_dataset(MINIMAL)
        pens = cohort.group("penalising")
        assert [r.project for r in pens] == ["pen-0", "pen-1", "pen-2"]
        assert pens[0].metrics["smells_density"] == 0.5

    def test_blank_lines_skipped(self):
        text = MINIMAL.replace("\n", "\n\n", 1)
        assert load_dataset(text).total == 6

    def test_crlf_accepted(self):
        assert load_dataset(MINIMAL.replace("\n", "\r\n")).total == 6

    def test_unknown_metric_column_lookup_fails(self):
        cohort = load_dataset(MINIMAL)
        with pytest.raises(KeyError):
            cohort.column("coverage", "penalising")

    def test_unknown_group_lookup_fails(self):
        cohort = load_dataset(MINIMAL)
        with pytest.raises(KeyError):
            cohort.column("sqale_debt_ratio", "mixed")


class TestSchemaValidation:
    def test_missing_column_rejected(self):
        broken = MINIMAL.replace(",cognitive_complexity_rate", "")
        with pytest.raises(SchemaError):
            load_dataset(broken)

    def test_reordered_header_rejected(self):
        reordered = MINIMAL.replace(
            "project,strategy", "strategy,project"
        )
        with pytest.raises(SchemaError):
            load_dataset(reordered)

    def test_extra_column_rejected(self):
        with_extra = MINIMAL.replace(HEADER, HEADER + ",extra")
        with pytest.raises(SchemaError):
            load_dataset(with_extra)

    def test_ragged_row_rejected(self):
        text = rows_csv([row(), row(), row(), "pen-x,penalising,1.0"])
        with pytest.raises(SchemaError):
            load_dataset(text)

    def test_empty_text_rejected(self):
        with pytest.raises(SchemaError):
            load_dataset("")

    def test_header_only_rejected(self):
        with pytest.raises(SchemaError):
            load_dataset(HEADER + "\n")

    def test_group_smaller_than_three_rejected(self):
        text = rows_csv(
            [row("pen-0"), row("pen-1"), row("pen-2"), row("rew-0", "rewarding"), row("rew-1", "rewarding")]
        )
        with pytest.raises(SchemaError):
            load_dataset(text)

    def test_missing_group_rejected(self):
        text = rows_csv([row(f"pen-{i}") for i in range(4)])
        with pytest.raises(SchemaError):
            load_dataset(text)

    def test_blank_project_rejected(self):
        text = rows_csv([row(), row("pen-1"), row("pen-2"), row("", "rewarding"), row("rew-1", "rewarding"), row("rew-2", "rewarding")])
        with pytest.raises(SchemaError):
            load_dataset(text)


class TestValueValidation:
    def test_unknown_strategy_rejected(self):
        text = MINIMAL.replace("rewarding", "reward")
        with pytest.raises(BadFactor):
            load_dataset(text)

    def test_comma_decimal_rejected(self):
        text = rows_csv(
            [row(), row("pen-1"), row("pen-2")]
            + ['rew-0,rewarding,1.0,1.0,"2,5",1.0,1.0,1.0,1.0,1.0']
            + [row("rew-1", "rewarding"), row("rew-2", "rewarding")]
        )
        with pytest.raises(BadNumber):
            load_dataset(text)

    def test_negative_value_rejected(self):
        text = MINIMAL.replace("0.25", "-0.25")
        with pytest.raises(BadNumber):
            load_dataset(text)

    def test_non_numeric_rejected(self):
        text = MINIMAL.replace("1.25", "n/a")
        with pytest.raises(BadNumber):
            load_dataset(text)

    def test_non_finite_rejected(self):
        text = MINIMAL.replace("1.25", "inf")
        with pytest.raises(BadNumber):
            load_dataset(text)


def test_missing_file_raises_oserror(tmp_path):
    with pytest.raises(OSError):
        load_dataset_file(tmp_path / "absent.csv")
