"""Expression expansion and relation tables for the CLI."""

from __future__ import annotations

from typing import Optional

from ..catalog import format_relation_table, relation_table, resolve_presentation, standard_symbols
from ..parser import parse_expression
from ..phase import ONE


def expand_expression(algebra: str, expression: str, theta: Optional[float] = None) -> dict:
    """Normal form of ``expression``; ``algebra`` may list legs as ``sl2h,c4``."""
    legs = tuple(resolve_presentation(name.strip()) for name in algebra.split(","))
    symbols = standard_symbols(legs[0]) if len(legs) == 1 else {}
    value = parse_expression(expression, legs, symbols)
    payload = {
        "algebra": [p.name for p in legs],
        "input": expression,
        "normal_form": value.to_text(),
        "terms": len(value),
    }
    if theta is not None:
        payload["theta"] = theta
        payload["numeric"] = value.to_text(theta)
    return payload


def relation_table_payload(algebra: str, nontrivial: bool = False) -> dict:
    p = resolve_presentation(algebra)
    rows = [
        {"left": x, "right": y, "coefficient": c.to_text()}
        for x, y, c in relation_table(p)
        if not nontrivial or c != ONE
    ]
    return {"algebra": p.name, "count": len(rows), "relations": rows}


def render_relation_table(algebra: str, fmt: str, nontrivial: bool = False) -> str:
    return format_relation_table(resolve_presentation(algebra), fmt, nontrivial)
