"""Normality, comparison, and box-plot summary reports over a cohort."""

from __future__ import annotations

import json
import math
import statistics
from pathlib import Path

import pytest

from debtjudge.stats.dataset import EXPECTED_HEADER, METRIC_COLUMNS, load_dataset, load_dataset_file
from debtjudge.stats.effect import classify_effect, effect_size_r
from debtjudge.stats.ranktests import wmw_asymptotic
from debtjudge.stats.reports import (
    ALPHA,
    alternative_for,
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
from debtjudge.stats.shapiro import shapiro_wilk

FIXTURE = Path(__file__).parent / "data" / "cohort_synthetic.csv"


@pytest.fixture(scope="module")
def cohort():
    return load_dataset_file(FIXTURE)


class TestAlternativeFor:
    def test_only_comment_density_flips_direction(self):
        for metric in METRIC_COLUMNS:
            expected = "less" if metric == "comment_density" else "greater"
            assert alternative_for(metric) == expected

    def test_unknown_metric_rejected(self):
        with pytest.raises(KeyError):
            alternative_for("coverage")


class TestNormalityReport:
    def test_sixteen_rows_metric_major_group_minor(self, cohort):
        rows = normality_report(cohort)
        assert len(rows) == 16
        assert [r.metric for r in rows[:2]] == [METRIC_COLUMNS[0]] * 2
        assert [r.group for r in rows[:2]] == ["penalising", "rewarding"]
        assert [r.metric for r in rows] == [m for m in METRIC_COLUMNS for _ in range(2)]

    def test_rows_match_direct_shapiro_calls(self, cohort):
        for row in normality_report(cohort):
            direct = shapiro_wilk(cohort.column(row.metric, row.group))
            assert row.statistic == direct.statistic
            assert row.p_value == direct.p_value

    def test_flag_thresholds_at_alpha(self, cohort):
        for row in normality_report(cohort):
            assert row.normal_not_rejected == (row.p_value > ALPHA)

    def test_frozen_scipy_spot_checks(self, cohort):
        rows = {(r.metric, r.group): r for r in normality_report(cohort)}
        refs = {
            ("sqale_debt_ratio", "penalising"): (0.9083691189800436, 0.23325390187936057),
            ("sqale_debt_ratio", "rewarding"): (0.8522983200083054, 0.030534972221917644),
            ("comment_density", "penalising"): (0.8587684311212087, 0.05550285664722692),
            ("comment_density", "rewarding"): (0.9189639250563983, 0.24289749944177763),
        }
        for key, (w_ref, p_ref) in refs.items():
            assert rows[key].statistic == pytest.approx(w_ref, abs=1e-9)
            assert rows[key].p_value == pytest.approx(p_ref, abs=1e-9)


class TestComparisonReport:
    def test_eight_rows_in_metric_order(self, cohort):
        rows = comparison_report(cohort)
        assert [r.metric for r in rows] == list(METRIC_COLUMNS)

    def test_rows_match_direct_rank_tests(self, cohort):
        n_total = cohort.total
        for row in comparison_report(cohort):
            pen = cohort.column(row.metric, "penalising")
            rew = cohort.column(row.metric, "rewarding")
            direct = wmw_asymptotic(pen, rew, alternative=row.alternative)
            assert row.z == direct.z
            assert row.p_value == direct.p_value
            assert row.effect_size_r == effect_size_r(direct.z, n_total)
            assert row.cohen_class == classify_effect(row.effect_size_r)

    def test_alternatives_recorded(self, cohort):
        alts = {r.metric: r.alternative for r in comparison_report(cohort)}
        assert alts["comment_density"] == "less"
        assert alts["sqale_debt_ratio"] == "greater"

    def test_frozen_scipy_spot_checks(self, cohort):
        rows = {r.metric: r for r in comparison_report(cohort)}
        assert rows["reliability_rate"].z == pytest.approx(1.217992089696626, abs=1e-9)
        assert rows["reliability_rate"].p_value == pytest.approx(0.1116134893835043, abs=1e-9)
        assert rows["comment_density"].z == pytest.approx(-0.6083337324774372, abs=1e-9)
        assert rows["comment_density"].p_value == pytest.approx(0.27148307636512625, abs=1e-9)
        assert rows["sqale_debt_ratio"].z == pytest.approx(2.2884935650341682, abs=1e-9)
        assert rows["sqale_debt_ratio"].p_value == pytest.approx(0.011054397214544218, abs=1e-9)


class TestSummaryStats:
    def test_sixteen_rows(self, cohort):
        assert len(summary_stats(cohort)) == 16

    def test_five_numbers_are_ordered(self, cohort):
        for row in summary_stats(cohort):
            assert row.minimum <= row.whisker_low <= row.q1 <= row.median <= row.q3 <= row.whisker_high <= row.maximum

    def test_median_and_quartiles_match_statistics_module(self, cohort):
        for row in summary_stats(cohort):
            values = cohort.column(row.metric, row.group)
            q1, med, q3 = statistics.quantiles(values, n=4, method="inclusive")
            assert row.median == med
            assert row.q1 == q1
            assert row.q3 == q3

    def test_outliers_sit_outside_fences(self, cohort):
        for row in summary_stats(cohort):
            iqr = row.q3 - row.q1
            lo, hi = row.q1 - 1.5 * iqr, row.q3 + 1.5 * iqr
            for value in row.outliers:
                assert value < lo or value > hi

    def test_known_outlier_detected(self):
        header = ",".join(EXPECTED_HEADER)
        # one metric pattern reused across all columns; 100.0 is the outlier
        values = [1.0, 2.0, 3.0, 4.0, 100.0]
        rows = [
            ",".join([f"pen-{i}", "penalising"] + [str(v)] * 8) for i, v in enumerate(values)
        ] + [
            ",".join([f"rew-{i}", "rewarding"] + ["1.0"] * 8) for i in range(3)
        ]
        cohort = load_dataset("\n".join([header, *rows]) + "\n")
        summary = {(r.metric, r.group): r for r in summary_stats(cohort)}
        row = summary[("sqale_debt_ratio", "penalising")]
        assert row.q1 == 2.0
        assert row.q3 == 4.0
        assert row.outliers == (100.0,)
        assert row.whisker_high == 4.0
        assert row.whisker_low == 1.0
        assert row.maximum == 100.0


class TestRendering:
    def test_normality_text_contains_every_metric(self, cohort):
        text = render_normality(normality_report(cohort))
        for metric in METRIC_COLUMNS:
            assert metric in text
        assert "penalising" in text and "rewarding" in text

    def test_comparison_text_mentions_alternative(self, cohort):
        text = render_comparison(comparison_report(cohort))
        assert "less" in text
        assert "greater" in text

    def test_summary_text_renders(self, cohort):
        text = render_summary(summary_stats(cohort))
        assert "median" in text.lower() or "q1" in text.lower()

    def test_payloads_are_json_safe_and_versioned(self, cohort):
        for payload in (
            normality_payload(normality_report(cohort)),
            comparison_payload(comparison_report(cohort)),
            summary_payload(summary_stats(cohort)),
        ):
            assert payload["schema_version"] == 1
            json.dumps(payload)

    def test_comparison_payload_shape(self, cohort):
        payload = comparison_payload(comparison_report(cohort))
        row = payload["results"][0]
        assert {"metric", "alternative", "z", "p_value", "effect_size_r", "cohen_class"} <= set(row)
