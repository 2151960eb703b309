"""Tests for the service layer shared by the CLI."""

import json
import logging
from pathlib import Path

import pytest

from theta_instantons.config import RunContext
from theta_instantons.errors import CompletionLimitExceeded, ExpressionError, UnknownSuiteError
from theta_instantons.report import CheckStatus, RunOptions, SuiteReport
from theta_instantons.services import (
    SUITES,
    expand_expression,
    list_suites,
    relation_table_payload,
    render_relation_table,
    run_suite,
    save_report,
    suite_groups,
    verify,
)
from theta_instantons.services.verification import _run_group, options_from_context


class TestSuiteRegistry:
    """Tests for suite lookup."""

    def test_list_suites(self):
        names = [row["name"] for row in list_suites()]
        assert names[-1] == "all"
        assert {"appendix-a", "hopf", "so51", "mvn", "oracle"} <= set(names)

    def test_all_has_no_duplicates(self):
        groups = suite_groups("all")
        assert len(groups) == len(set(groups))
        assert all(g in groups for suite in SUITES.values() for g in suite.groups)

    def test_unknown_suite(self):
        with pytest.raises(UnknownSuiteError) as exc:
            suite_groups("nonexistent")
        assert "appendix-a" in exc.value.suggestions[0]

    def test_relation_table_alias(self):
        assert suite_groups("relation-table") == suite_groups("appendix-a")
        rows = {row["name"]: row for row in list_suites()}
        assert rows["relation-table"]["description"] == "alias of appendix-a"
        assert "relation-table" not in SUITES

    def test_options_from_context_theta(self):
        context = RunContext(theta=0.25)
        assert options_from_context(context).theta == 0.25
        assert options_from_context(context, theta=0.0).theta == 0.0
        assert options_from_context(RunContext()).theta is None


class TestRunSuite:
    """Tests for running suites."""

    def test_appendix_a(self):
        report = run_suite("appendix-a", RunOptions(samples=100))
        assert report.exit_code() == 0
        ids = [c.id for c in report.checks]
        assert ids == sorted(ids)
        assert "appendix-a.fixture" in ids

    def test_alias_reports_target_name(self):
        assert run_suite("relation-table", RunOptions(samples=100)).suite == "appendix-a"

    @pytest.mark.slow
    def test_parallel_matches_serial(self):
        options = RunOptions(samples=100)
        serial = run_suite("family", options)
        parallel = run_suite("family", options, parallelism=2)
        assert [c.id for c in serial.checks] == [c.id for c in parallel.checks]
        assert [c.status for c in parallel.checks] == [c.status for c in serial.checks]

    def test_verify_writes_report(self, tmp_path: Path):
        context = RunContext(samples=100)
        out = tmp_path / "reports" / "table.json"
        result = verify("appendix-a", context, out=out)
        assert result["written"] == [str(out)]
        data = json.loads(out.read_text())
        assert data["suite"] == "appendix-a"
        assert data["summary"]["fail"] == 0
        assert all(c["status"] != CheckStatus.FAIL.value for c in data["checks"])

    def test_verify_saves_to_report_dir(self, tmp_path: Path):
        context = RunContext(samples=100, save_reports=True, report_dir=str(tmp_path))
        result = verify("appendix-a", context)
        assert result["written"] == [str(tmp_path / "appendix-a.json")]

    def test_save_report_creates_parents(self, tmp_path: Path):
        path = save_report({"suite": "x"}, tmp_path / "a" / "b.json")
        assert path.read_text().endswith("\n")


class TestRunGroup:
    """Tests for the error boundary around one check group."""

    def test_unexpected_error_becomes_failure(self, caplog: pytest.LogCaptureFixture):
        def broken(options: RunOptions):
            return {}["missing"]

        with caplog.at_level(logging.ERROR):
            results = _run_group(broken, RunOptions())
        assert len(results) == 1
        assert results[0].id.endswith(".broken")
        assert results[0].status == CheckStatus.FAIL
        assert results[0].witness.startswith("KeyError")
        assert results[0].paper_ref == "engine"
        assert results[0].metrics["limit_exceeded"] is False
        assert "broken" in caplog.text

    def test_limit_exceeded_exits_3(self):
        def bounded(options: RunOptions):
            raise CompletionLimitExceeded("completion added too many rules", 4)

        results = _run_group(bounded, RunOptions())
        assert results[0].metrics["limit_exceeded"] is True
        assert SuiteReport(suite="x", checks=results).exit_code() == 3

    def test_failure_exits_1(self):
        def broken(options: RunOptions):
            raise ValueError("bad input")

        assert SuiteReport(suite="x", checks=_run_group(broken, RunOptions())).exit_code() == 1


class TestExpressions:
    """Tests for expand and the relation table payloads."""

    def test_expand(self):
        payload = expand_expression("c4", "z3*z1")
        assert payload["normal_form"] == "mubar * z1*z3"
        assert payload["terms"] == 1
        assert "numeric" not in payload

    def test_expand_with_theta(self):
        payload = expand_expression("c4", "z3*z1", theta=0.0)
        assert payload["theta"] == 0.0
        assert payload["numeric"].endswith("* z1*z3")

    def test_expand_tensor(self):
        payload = expand_expression("sl2h, c4", "(a1 @ z1) - (a1 @ z1)")
        assert payload["algebra"] == ["sl2h", "c4"]
        assert payload["normal_form"] == "0"

    def test_expand_error(self):
        with pytest.raises(ExpressionError):
            expand_expression("c4", "z1 +")

    def test_relation_table_payload(self):
        payload = relation_table_payload("sl2h", nontrivial=True)
        assert payload["count"] == 48
        assert {"left": "c1", "right": "d1", "coefficient": "mubar"} in payload["relations"]

    def test_render_relation_table(self):
        assert "c1\td1\tmubar" in render_relation_table("sl2h", "tsv", nontrivial=True)
