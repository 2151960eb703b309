"""Exact verification engine for theta-deformed SL(2,H) instantons."""

__version__ = "0.1.0"
