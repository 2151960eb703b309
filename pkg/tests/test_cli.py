"""Tests for the command-line interface."""

import json
from pathlib import Path

import pytest
from typer.testing import CliRunner

from theta_instantons import config
from theta_instantons.cli import app

runner = CliRunner()


@pytest.fixture(autouse=True)
def workdir(tmp_path: Path, monkeypatch: pytest.MonkeyPatch) -> Path:
    """Run every command from an empty directory with no user config."""
    monkeypatch.setattr(config, "USER_CONFIG_FILE", tmp_path / "user" / "config.json")
    for key in config._KEYS:
        monkeypatch.delenv(config.ENV_PREFIX + key.upper(), raising=False)
    project = tmp_path / "project"
    project.mkdir()
    monkeypatch.chdir(project)
    return project


class TestExpand:
    """Tests for the expand command."""

    def test_normal_form(self):
        result = runner.invoke(app, ["expand", "--algebra", "c4", "z3*z1"])
        assert result.exit_code == 0
        assert result.stdout.strip() == "mubar * z1*z3"

    def test_json(self):
        result = runner.invoke(app, ["expand", "-a", "sl2h", "-f", "json", "a1*b1"])
        assert result.exit_code == 0
        assert json.loads(result.stdout)["algebra"] == ["sl2h"]

    def test_parse_error_exits_2(self):
        result = runner.invoke(app, ["expand", "--algebra", "c4", "z1 + w1"])
        assert result.exit_code == 2

    def test_unknown_algebra_exits_2(self):
        result = runner.invoke(app, ["expand", "--algebra", "nope", "1"])
        assert result.exit_code == 2

    def test_theta_from_config(self, workdir: Path):
        folder = workdir / ".theta-instantons"
        folder.mkdir()
        (folder / "config.json").write_text('{"theta": 0.5}')
        result = runner.invoke(app, ["expand", "-a", "c4", "-f", "json", "z3*z1"])
        assert result.exit_code == 0
        data = json.loads(result.stdout)
        assert data["theta"] == 0.5
        assert data["numeric"]

    def test_theta_flag_overrides_config(self, workdir: Path):
        folder = workdir / ".theta-instantons"
        folder.mkdir()
        (folder / "config.json").write_text('{"theta": 0.5}')
        args = ["expand", "-a", "c4", "-f", "json", "--theta", "0", "z3*z1"]
        result = runner.invoke(app, args)
        assert json.loads(result.stdout)["theta"] == 0.0

    def test_no_theta_no_numeric(self):
        result = runner.invoke(app, ["expand", "-a", "c4", "-f", "json", "z3*z1"])
        assert "numeric" not in json.loads(result.stdout)


class TestTable:
    """Tests for the table command."""

    def test_nontrivial_tsv(self):
        result = runner.invoke(app, ["table", "--nontrivial"])
        assert result.exit_code == 0
        assert "c1\td1\tmubar" in result.stdout
        assert len(result.stdout.strip().splitlines()) == 48

    def test_write_file(self, workdir: Path):
        out = workdir / "tables" / "c4.tsv"
        result = runner.invoke(app, ["table", "--algebra", "c4", "--out", str(out)])
        assert result.exit_code == 0
        assert "z1\tz3\tmu" in out.read_text()


class TestVerify:
    """Tests for the verify command."""

    def test_unknown_suite(self):
        result = runner.invoke(app, ["verify", "--suite", "nonexistent"])
        assert result.exit_code == 2

    def test_appendix_a_json(self):
        result = runner.invoke(app, ["verify", "--suite", "appendix-a", "--format", "json"])
        assert result.exit_code == 0
        data = json.loads(result.stdout)
        assert data["suite"] == "appendix-a"
        assert data["summary"]["fail"] == 0

    def test_out_writes_report(self, workdir: Path):
        out = workdir / "report.json"
        args = ["verify", "-s", "appendix-a", "-f", "text", "-o", str(out)]
        result = runner.invoke(app, args)
        assert result.exit_code == 0
        assert json.loads(out.read_text())["suite"] == "appendix-a"

    def test_text_report(self):
        result = runner.invoke(app, ["verify", "-s", "appendix-a", "-f", "text"])
        assert result.exit_code == 0
        assert "[ok  ] appendix-a.fixture" in result.stdout

    def test_relation_table_alias(self):
        result = runner.invoke(app, ["verify", "--suite", "relation-table", "--format", "json"])
        assert result.exit_code == 0
        assert json.loads(result.stdout)["suite"] == "appendix-a"

    def test_theta_option(self):
        args = ["verify", "-s", "appendix-a", "-f", "json", "--theta", "0.25"]
        result = runner.invoke(app, args)
        assert result.exit_code == 0


class TestConfigCommands:
    """Tests for suites, init and config."""

    def test_suites(self):
        result = runner.invoke(app, ["suites", "--format", "json"])
        assert result.exit_code == 0
        names = [row["name"] for row in json.loads(result.stdout)["suites"]]
        assert "mtheta" in names

    def test_init_then_config(self, workdir: Path):
        result = runner.invoke(app, ["init", "--parallelism", "2", "--format", "json"])
        assert result.exit_code == 0
        assert (workdir / ".theta-instantons" / "config.json").exists()

        result = runner.invoke(app, ["config", "--format", "json"])
        assert result.exit_code == 0
        data = json.loads(result.stdout)
        assert data["config_source"] == "directory"
        assert data["parallelism"] == 2

    def test_init_refuses_overwrite(self, workdir: Path):
        runner.invoke(app, ["init"])
        result = runner.invoke(app, ["init", "--parallelism", "3"], input="n\n")
        assert result.exit_code == 0
        assert json.loads((workdir / ".theta-instantons" / "config.json").read_text())[
            "parallelism"
        ] == 1

    def test_bad_config_exits_2(self, workdir: Path):
        folder = workdir / ".theta-instantons"
        folder.mkdir()
        (folder / "config.json").write_text('{"colour": 1}')
        result = runner.invoke(app, ["verify", "--suite", "appendix-a"])
        assert result.exit_code == 2
