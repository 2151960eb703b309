"""Run configuration with directory-based detection.

## .theta-instantons/ Folder

```
.theta-instantons/
└── config.json
```

### config.json Structure

```json
{
  "parallelism": 4,
  "completion_limit": 200,
  "format": "json",
  "theta": 0.25,
  "stretch": false,
  "save_reports": true,
  "report_dir": "reports"
}
```

### Resolution Order

1. .theta-instantons/config.json in the current directory
2. Walk up parent directories looking for .theta-instantons/config.json
3. Fall back to ~/.config/theta-instantons/config.json (user default)
4. THETA_INSTANTONS_* environment variables
5. Built-in defaults

Command-line flags override whatever is resolved here.
"""

import json
import os
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Optional

from platformdirs import user_cache_dir

from .errors import ConfigError

# User-level config location
USER_CONFIG_DIR = Path.home() / ".config" / "theta-instantons"
USER_CONFIG_FILE = USER_CONFIG_DIR / "config.json"

# Directory-level config
RUN_CONFIG_DIR = ".theta-instantons"
RUN_CONFIG_FILE = "config.json"

ENV_PREFIX = "THETA_INSTANTONS_"
FORMATS = ("toon", "json", "text")


@dataclass
class RunContext:
    """Resolved run configuration for a directory."""

    # Source of config
    config_path: Optional[Path] = None
    config_source: str = "none"  # "directory", "parent", "user", "env", "none"

    parallelism: int = 1
    completion_limit: int = 200
    format: str = "toon"
    theta: Optional[float] = None
    stretch: bool = False
    seed: int = 7
    samples: int = 1000

    # Reports
    save_reports: bool = False
    report_dir: Optional[str] = None

    def get_report_dir(self) -> Path:
        """Where saved reports go.

        A relative ``report_dir`` is taken relative to the directory that
        holds the config folder; without one, reports go to the user cache.
        """
        if self.report_dir:
            path = Path(self.report_dir)
            if not path.is_absolute() and self.config_path and self.config_source != "user":
                return self.config_path.parent.parent / path
            return path
        return Path(user_cache_dir("theta-instantons")) / "reports"


def find_run_config(start_path: Optional[Path] = None) -> Optional[Path]:
    """Find the nearest .theta-instantons/config.json by walking up the directory tree."""
    if start_path is None:
        start_path = Path.cwd()

    current = Path(start_path).resolve()
    while True:
        config_path = current / RUN_CONFIG_DIR / RUN_CONFIG_FILE
        if config_path.exists():
            return config_path
        if current == current.parent:
            return None
        current = current.parent


def load_config_file(config_path: Path) -> dict:
    try:
        with open(config_path) as f:
            data = json.load(f) or {}
    except json.JSONDecodeError as exc:
        raise ConfigError(
            f"{config_path} is not valid JSON: {exc.msg} (line {exc.lineno})",
            ["fix the file or remove it to use defaults"],
        ) from None
    if not isinstance(data, dict):
        raise ConfigError(f"{config_path} must hold a JSON object")
    return data


def load_user_config() -> Optional[dict]:
    """Load user-level config from ~/.config/theta-instantons/config.json."""
    if USER_CONFIG_FILE.exists():
        return load_config_file(USER_CONFIG_FILE)
    return None


def _coerce(key: str, value: Any, kind: type) -> Any:
    if kind is bool and isinstance(value, str):
        lowered = value.strip().lower()
        if lowered in ("1", "true", "yes", "on"):
            return True
        if lowered in ("0", "false", "no", "off"):
            return False
        raise ConfigError(f"{key} must be a boolean, got {value!r}")
    try:
        return kind(value)
    except (TypeError, ValueError):
        raise ConfigError(f"{key} must be of type {kind.__name__}, got {value!r}") from None


_KEYS: dict[str, type] = {
    "parallelism": int,
    "completion_limit": int,
    "format": str,
    "theta": float,
    "stretch": bool,
    "seed": int,
    "samples": int,
    "save_reports": bool,
    "report_dir": str,
}


def _apply(context: RunContext, data: dict, origin: str) -> None:
    for key, value in data.items():
        kind = _KEYS.get(key)
        if kind is None:
            raise ConfigError(
                f"unknown configuration key {key!r} in {origin}",
                [f"known keys: {', '.join(_KEYS)}"],
            )
        if value is None:
            continue
        setattr(context, key, _coerce(key, value, kind))


def _validate(context: RunContext) -> None:
    if context.parallelism < 1:
        raise ConfigError("parallelism must be at least 1")
    if context.completion_limit < 1:
        raise ConfigError("completion_limit must be at least 1")
    if context.format not in FORMATS:
        raise ConfigError(
            f"unknown output format {context.format!r}", [f"use one of {', '.join(FORMATS)}"]
        )


def resolve_context(path: Optional[Path] = None) -> RunContext:
    """Resolve the run configuration for a path.

    Args:
        path: Directory to resolve configuration for (default: cwd)

    Returns:
        RunContext with every layer applied
    """
    context = RunContext()

    config_path = find_run_config(path)
    if config_path:
        target_dir = Path(path).resolve() if path else Path.cwd().resolve()
        context.config_path = config_path
        context.config_source = (
            "directory" if config_path.parent.parent == target_dir else "parent"
        )
        _apply(context, load_config_file(config_path), str(config_path))
    else:
        user_config = load_user_config()
        if user_config is not None:
            context.config_path = USER_CONFIG_FILE
            context.config_source = "user"
            _apply(context, user_config, str(USER_CONFIG_FILE))

    env = {
        key: os.environ[ENV_PREFIX + key.upper()]
        for key in _KEYS
        if ENV_PREFIX + key.upper() in os.environ
    }
    if env:
        _apply(context, env, "the environment")
        if context.config_source == "none":
            context.config_source = "env"

    _validate(context)
    return context


def create_run_config(
    path: Path,
    parallelism: int = 1,
    completion_limit: int = 200,
    output_format: str = "toon",
    save_reports: bool = False,
) -> Path:
    """Create a .theta-instantons/config.json file in the specified directory.

    Returns:
        Path to created config file
    """
    config_dir = Path(path) / RUN_CONFIG_DIR
    config_dir.mkdir(parents=True, exist_ok=True)

    config = {
        "parallelism": parallelism,
        "completion_limit": completion_limit,
        "format": output_format,
        "save_reports": save_reports,
    }
    _validate(
        RunContext(
            parallelism=parallelism, completion_limit=completion_limit, format=output_format
        )
    )

    config_path = config_dir / RUN_CONFIG_FILE
    with open(config_path, "w") as f:
        json.dump(config, f, indent=2)
        f.write("\n")
    return config_path


def get_context_help_message(context: RunContext) -> str:
    """Describe the resolved configuration."""
    if context.config_source == "none":
        return """No configuration found; using defaults.

To configure runs for this directory, create .theta-instantons/config.json:

```json
{
  "parallelism": 4,
  "format": "json"
}
```

Or run: theta-instantons init
"""

    lines = [f"Configuration (from {context.config_source}):"]
    if context.config_path:
        lines.append(f"  Config: {context.config_path}")
    lines.append(f"  Parallelism: {context.parallelism}")
    lines.append(f"  Completion limit: {context.completion_limit}")
    lines.append(f"  Format: {context.format}")
    if context.theta is not None:
        lines.append(f"  Theta: {context.theta}")
    lines.append(f"  Stretch checks: {'on' if context.stretch else 'off'}")
    if context.save_reports:
        lines.append(f"  Reports: {context.get_report_dir()}")
    return "\n".join(lines)
