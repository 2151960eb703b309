"""Configuration helpers shared by the CLI commands."""

from __future__ import annotations

from pathlib import Path
from typing import Optional

from ..config import get_context_help_message, resolve_context


def resolve_context_info(path: Optional[Path] = None) -> dict:
    """Return the resolved configuration and help text if nothing is configured."""
    context = resolve_context(path)
    return {
        "config_source": context.config_source,
        "config_path": str(context.config_path) if context.config_path else None,
        "parallelism": context.parallelism,
        "completion_limit": context.completion_limit,
        "format": context.format,
        "theta": context.theta,
        "stretch": context.stretch,
        "save_reports": context.save_reports,
        "report_dir": str(context.get_report_dir()),
        "help": get_context_help_message(context) if context.config_source == "none" else None,
    }
