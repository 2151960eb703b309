"""Tests for run configuration resolution."""

import json
from pathlib import Path

import pytest

from theta_instantons import config
from theta_instantons.config import (
    RUN_CONFIG_DIR,
    RUN_CONFIG_FILE,
    create_run_config,
    find_run_config,
    get_context_help_message,
    resolve_context,
)
from theta_instantons.errors import ConfigError


@pytest.fixture(autouse=True)
def isolated(tmp_path: Path, monkeypatch: pytest.MonkeyPatch):
    """Keep the real user config and environment out of every test."""
    monkeypatch.setattr(config, "USER_CONFIG_FILE", tmp_path / "user" / "config.json")
    for key in config._KEYS:
        monkeypatch.delenv(config.ENV_PREFIX + key.upper(), raising=False)


def write_config(directory: Path, data: dict) -> Path:
    folder = directory / RUN_CONFIG_DIR
    folder.mkdir(parents=True, exist_ok=True)
    path = folder / RUN_CONFIG_FILE
    path.write_text(json.dumps(data))
    return path


class TestFindConfig:
    """Tests for walking up the directory tree."""

    def test_finds_in_directory(self, tmp_path: Path):
        path = write_config(tmp_path, {})
        assert find_run_config(tmp_path) == path

    def test_finds_in_parent(self, tmp_path: Path):
        path = write_config(tmp_path, {})
        nested = tmp_path / "a" / "b"
        nested.mkdir(parents=True)
        assert find_run_config(nested) == path

    def test_none(self, tmp_path: Path):
        assert find_run_config(tmp_path) is None


class TestResolveContext:
    """Tests for the layered resolution order."""

    def test_defaults(self, tmp_path: Path):
        project = tmp_path / "project"
        project.mkdir()
        context = resolve_context(project)
        assert context.parallelism == 1
        assert context.format == "toon"

    def test_directory(self, tmp_path: Path):
        write_config(tmp_path, {"parallelism": 4, "format": "json", "theta": 0.25})
        context = resolve_context(tmp_path)
        assert context.config_source == "directory"
        assert context.parallelism == 4
        assert context.format == "json"
        assert context.theta == 0.25

    def test_parent(self, tmp_path: Path):
        write_config(tmp_path, {"completion_limit": 50})
        nested = tmp_path / "sub"
        nested.mkdir()
        context = resolve_context(nested)
        assert context.config_source == "parent"
        assert context.completion_limit == 50

    def test_user(self, tmp_path: Path):
        user_file = config.USER_CONFIG_FILE
        user_file.parent.mkdir(parents=True)
        user_file.write_text(json.dumps({"stretch": True}))
        project = tmp_path / "project"
        project.mkdir()
        context = resolve_context(project)
        assert context.config_source == "user"
        assert context.stretch is True

    def test_env_overrides_file(self, tmp_path: Path, monkeypatch: pytest.MonkeyPatch):
        write_config(tmp_path, {"parallelism": 4})
        monkeypatch.setenv("THETA_INSTANTONS_PARALLELISM", "2")
        monkeypatch.setenv("THETA_INSTANTONS_STRETCH", "yes")
        context = resolve_context(tmp_path)
        assert context.parallelism == 2
        assert context.stretch is True
        assert context.config_source == "directory"

    def test_bad_json(self, tmp_path: Path):
        folder = tmp_path / RUN_CONFIG_DIR
        folder.mkdir()
        (folder / RUN_CONFIG_FILE).write_text("{not json")
        with pytest.raises(ConfigError, match="not valid JSON"):
            resolve_context(tmp_path)

    def test_unknown_key(self, tmp_path: Path):
        write_config(tmp_path, {"colour": "blue"})
        with pytest.raises(ConfigError) as exc:
            resolve_context(tmp_path)
        assert "colour" in str(exc.value)
        assert exc.value.suggestions

    def test_bad_value(self, tmp_path: Path, monkeypatch: pytest.MonkeyPatch):
        write_config(tmp_path, {})
        monkeypatch.setenv("THETA_INSTANTONS_STRETCH", "maybe")
        with pytest.raises(ConfigError, match="boolean"):
            resolve_context(tmp_path)

    def test_bad_format(self, tmp_path: Path):
        write_config(tmp_path, {"format": "xml"})
        with pytest.raises(ConfigError, match="unknown output format"):
            resolve_context(tmp_path)


class TestCreateConfig:
    """Tests for writing a config folder."""

    def test_create(self, tmp_path: Path):
        path = create_run_config(tmp_path, parallelism=3, output_format="json")
        data = json.loads(path.read_text())
        assert data["parallelism"] == 3
        assert data["format"] == "json"
        assert resolve_context(tmp_path).parallelism == 3

    def test_create_rejects_bad_values(self, tmp_path: Path):
        with pytest.raises(ConfigError):
            create_run_config(tmp_path, parallelism=0)

    def test_report_dir_relative_to_config(self, tmp_path: Path):
        write_config(tmp_path, {"report_dir": "reports", "save_reports": True})
        context = resolve_context(tmp_path)
        assert context.get_report_dir() == tmp_path.resolve() / "reports"
        assert "Reports:" in get_context_help_message(context)

    def test_help_without_config(self, tmp_path: Path):
        project = tmp_path / "project"
        project.mkdir()
        context = resolve_context(project)
        assert context.config_source == "none"
        assert "theta-instantons init" in get_context_help_message(context)
