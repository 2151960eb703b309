"""Tests for check results and suite reports."""

import pytest

from theta_instantons.algebra import NCPolynomial, gens
from theta_instantons.catalog import build_c4_theta, build_s7_theta, sphere_relation
from theta_instantons.errors import CompletionLimitExceeded, PresentationError
from theta_instantons.phase import MU, ONE
from theta_instantons.report import (
    SCHEMA_VERSION,
    WITNESS_TERMS,
    CheckRecorder,
    CheckResult,
    CheckStatus,
    RunOptions,
    SuiteReport,
    render_report_text,
    witness_text,
)


@pytest.fixture
def z():
    return gens(build_c4_theta())


@pytest.fixture
def recorder():
    return CheckRecorder("unit")


class TestRecorder:
    """Tests for CheckRecorder."""

    def test_zero_passes(self, recorder, z):
        result = recorder.zero("unit.zero", "z1 - z1 = 0", "arithmetic", z["z1"] - z["z1"])
        assert result.passed
        assert result.witness is None
        assert result.metrics["residual_terms"] == 0
        assert "wall_ms" in result.metrics

    def test_zero_fails_with_witness(self, recorder, z):
        result = recorder.zero("unit.zero", "z1 = 0", "arithmetic", z["z1"])
        assert result.status == CheckStatus.FAIL
        assert result.witness == "z1"

    def test_phase_residual(self, recorder):
        assert recorder.zero("unit.phase", "mu - mu = 0", "phases", MU - MU).passed

    def test_equal_counts_lhs(self, recorder, z):
        result = recorder.equal("unit.eq", "z1 = z1", "arithmetic", z["z1"] + 1, 1 + z["z1"])
        assert result.passed
        assert result.metrics["lhs_terms"] == 2

    def test_zeros_names_first_failure(self, recorder, z):
        result = recorder.zeros(
            "unit.many",
            "all vanish",
            "arithmetic",
            {"a": z["z1"] - z["z1"], "b": z["z2"], "c": z["z3"]},
        )
        assert result.status == CheckStatus.FAIL
        assert result.witness == "b: z2"
        assert result.metrics["failing"] == ["b", "c"]
        assert result.metrics["cases"] == 3

    def test_truth_drops_witness_on_pass(self, recorder):
        result = recorder.truth("unit.truth", "true", "logic", True, "unused", extra=1)
        assert result.passed
        assert result.witness is None
        assert result.metrics["extra"] == 1

    def test_skipped(self, recorder):
        result = recorder.skipped("unit.skip", "hard", "analysis", "needs analysis")
        assert result.status == CheckStatus.SKIPPED
        assert result.metrics["reason"] == "needs analysis"

    def test_guard_limit(self, recorder):
        with recorder.guard("unit.guard", "completes", "rewriting"):
            raise CompletionLimitExceeded("completion did not terminate", 5)
        (result,) = recorder.results
        assert result.status == CheckStatus.FAIL
        assert result.limit_exceeded
        assert result.metrics["limit"] == 5

    def test_guard_engine_error(self, recorder):
        with recorder.guard("unit.guard", "parses", "presentation"):
            raise PresentationError("unknown letter")
        (result,) = recorder.results
        assert result.witness == "PresentationError: unknown letter"
        assert not result.limit_exceeded

    def test_guard_lets_other_errors_through(self, recorder):
        with pytest.raises(KeyError):
            with recorder.guard("unit.guard", "looks up", "lookup"):
                raise KeyError("x")


class TestReductionMetrics:
    """Tests for the modulo and recheck bookkeeping."""

    @pytest.fixture
    def sphere(self):
        return build_s7_theta()

    def test_modulo_counts_terms_before(self, recorder, sphere):
        p, rules = sphere
        result = recorder.zero(
            "unit.sphere", "relation vanishes", "sphere", sphere_relation(p), modulo=rules
        )
        assert result.passed
        assert result.metrics["terms_before"] == 5
        assert result.metrics["residual_terms"] == 0
        assert result.metrics["modulo"] == "sphere"
        assert result.metrics["free"] is False

    def test_modulo_free_pass(self, recorder, sphere, z):
        _, rules = sphere
        zero = z["z1"] - z["z1"]
        result = recorder.zero("unit.free", "z1 - z1 = 0", "sphere", zero, modulo=rules)
        assert result.passed
        assert result.metrics["free"] is True
        assert result.metrics["terms_before"] == 0

    def test_modulo_failure_reports_reduced_residual(self, recorder, sphere, z):
        _, rules = sphere
        result = recorder.zero("unit.fail", "z1 = 0", "sphere", z["z1"], modulo=rules)
        assert result.status == CheckStatus.FAIL
        assert result.witness == "z1"

    def test_recheck_holds_only_on_quotient(self, recorder, sphere, z):
        _, rules = sphere
        lhs = z["z4"] * z["z4*"]
        rhs = 1 - z["z1"] * z["z1*"] - z["z2"] * z["z2*"] - z["z3"] * z["z3*"]
        result = recorder.equal("unit.split", "radius", "sphere", lhs, rhs, recheck=rules)
        assert result.status == CheckStatus.FAIL
        assert result.metrics["recheck"] == "sphere"
        assert result.metrics["recheck_pass"] is True

    def test_recheck_on_free_pass(self, recorder, sphere, z):
        _, rules = sphere
        pairs = {"a": (z["z1"] * z["z3"], z["z1"] * z["z3"])}
        result = recorder.equalities("unit.same", "same", "sphere", pairs, recheck=rules)
        assert result.passed
        assert result.metrics["recheck_pass"] is True

    def test_recheck_failure_recorded(self, recorder, sphere, z):
        _, rules = sphere
        result = recorder.zero("unit.z1", "z1 = 0", "sphere", z["z1"], recheck=rules)
        assert result.status == CheckStatus.FAIL
        assert result.metrics["recheck_pass"] is False

    def test_modulo_skips_recheck(self, recorder, sphere, z):
        _, rules = sphere
        zero = z["z1"] - z["z1"]
        result = recorder.zero("unit.zero", "0 = 0", "sphere", zero, modulo=rules, recheck=rules)
        assert "recheck" not in result.metrics

    def test_numeric_witness(self, z):
        recorder = CheckRecorder("unit", RunOptions(theta=0.0))
        result = recorder.zero("unit.mu", "mu z1 = 0", "phases", z["z1"].scale(MU))
        assert result.witness == "mu * z1"
        assert result.metrics["witness_numeric"].endswith("* z1")
        assert recorder.zero("unit.phase", "mu = 0", "phases", MU).metrics[
            "witness_numeric"
        ] == "(1+0j)"

    def test_no_numeric_witness_without_theta(self, recorder, z):
        result = recorder.zero("unit.mu", "mu z1 = 0", "phases", z["z1"].scale(MU))
        assert "witness_numeric" not in result.metrics

    def test_render_numeric_line(self, z):
        recorder = CheckRecorder("unit", RunOptions(theta=0.5))
        recorder.zero("unit.mu", "mu z1 = 0", "phases", z["z1"].scale(MU))
        text = render_report_text(SuiteReport("s", recorder.results))
        assert "numeric: " in text


class TestWitnessText:
    """Tests for witness rendering."""

    def test_none_and_strings(self):
        assert witness_text(None) is None
        assert witness_text("custom") == "custom"

    def test_phase(self):
        assert witness_text(MU + ONE) == (MU + ONE).to_text()

    def test_truncation(self):
        c4 = build_c4_theta()
        g = gens(c4)
        big = NCPolynomial.of(c4, 0)
        for k in range(1, WITNESS_TERMS + 4):
            big = big + g["z1"] ** k
        text = witness_text(big)
        assert text.endswith("(3 more terms)")
        assert text.count("z1") == WITNESS_TERMS


class TestSuiteReport:
    """Tests for suite summaries and exit codes."""

    def make(self, *statuses, limit=False):
        checks = [
            CheckResult(f"s.{k}", "stmt", "ref", status, metrics={"limit_exceeded": limit})
            for k, status in enumerate(statuses)
        ]
        return SuiteReport("s", checks)

    def test_all_pass(self):
        report = self.make(CheckStatus.PASS, CheckStatus.SKIPPED)
        assert report.exit_code() == 0
        assert report.summary == {
            "pass": 1,
            "fail": 0,
            "skipped": 1,
            "total": 2,
        }

    def test_failure(self):
        assert self.make(CheckStatus.PASS, CheckStatus.FAIL).exit_code() == 1

    def test_limit_wins(self):
        assert self.make(CheckStatus.FAIL, limit=True).exit_code() == 3

    def test_dict_roundtrip(self):
        report = self.make(CheckStatus.PASS, CheckStatus.FAIL)
        data = report.to_dict()
        assert data["schema_version"] == SCHEMA_VERSION
        assert data["checks"][1]["status"] == "fail"
        again = SuiteReport.from_dict(data)
        assert again.to_dict() == data

    def test_render_text(self):
        report = self.make(CheckStatus.PASS, CheckStatus.SKIPPED)
        report.checks[0].witness = None
        text = render_report_text(report)
        assert "[ok  ] s.0" in text
        assert "[skip] s.1" in text
        assert text.endswith("1 passed, 0 failed, 1 skipped of 2")
