"""Shared service layer for the CLI."""

from .context import resolve_context_info
from .expressions import expand_expression, relation_table_payload, render_relation_table
from .verification import SUITES, list_suites, run_suite, save_report, suite_groups, verify

__all__ = [
    "resolve_context_info",
    "expand_expression",
    "relation_table_payload",
    "render_relation_table",
    "SUITES",
    "list_suites",
    "run_suite",
    "save_report",
    "suite_groups",
    "verify",
]
