"""Exception hierarchy for the verification engine.

Every error carries a human-readable message plus optional suggestions the
CLI prints underneath it.
"""

from __future__ import annotations

from typing import Optional


class ThetaError(Exception):
    """Base class for all engine errors."""

    def __init__(self, message: str, suggestions: Optional[list[str]] = None):
        super().__init__(message)
        self.suggestions = suggestions or []


class PresentationError(ThetaError):
    """A presentation is inconsistent or a letter is unknown."""


class HomomorphismError(ThetaError):
    """A proposed map does not preserve a defining relation."""

    def __init__(self, message: str, relation: str = "", residual: str = ""):
        super().__init__(message)
        self.relation = relation
        self.residual = residual


class DegreeError(ThetaError):
    """Degree vectors have mismatched arity or a non-integral pairing."""


class CompletionError(ThetaError):
    """Completion produced a relation whose leading coefficient is not a unit."""


class CompletionLimitExceeded(CompletionError):
    """Completion or reduction ran past its configured bound."""

    def __init__(self, message: str, limit: int):
        super().__init__(message, [f"raise the bound with --completion-limit (current: {limit})"])
        self.limit = limit


class ExpressionError(ThetaError):
    """An expression string could not be parsed."""

    def __init__(self, message: str, text: str = "", position: int = 0):
        super().__init__(message)
        self.text = text
        self.position = position

    def __str__(self) -> str:
        base = super().__str__()
        if not self.text:
            return base
        return f"{base}\n  {self.text}\n  {' ' * self.position}^"


class UnknownSuiteError(ThetaError):
    """The requested verification suite does not exist."""


class ConfigError(ThetaError):
    """A configuration file or environment override is malformed."""
