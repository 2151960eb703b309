"""Reference displays shipped with the package.

Fixture files hold ``name = expression`` entries; an expression continues
on indented lines and ``#`` starts a comment. ``.tsv`` fixtures are
whitespace separated rows.
"""

from __future__ import annotations

from functools import cache
from importlib import resources

from ..errors import ThetaError


def _read(filename: str) -> str:
    try:
        return resources.files(__name__).joinpath(filename).read_text(encoding="utf-8")
    except FileNotFoundError:
        raise ThetaError(f"missing fixture {filename}") from None


def parse_entries(text: str) -> dict[str, str]:
    entries: dict[str, str] = {}
    current: str | None = None
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        if line[0].isspace():
            if current is None:
                raise ThetaError(f"continuation line without an entry: {raw!r}")
            entries[current] += " " + line.strip()
            continue
        name, sep, expr = line.partition("=")
        if not sep:
            raise ThetaError(f"fixture line is not 'name = expression': {raw!r}")
        current = name.strip()
        entries[current] = expr.strip()
    return entries


@cache
def load_fixture(name: str) -> dict[str, str]:
    """Entries of ``<name>.txt`` in declaration order."""
    return parse_entries(_read(f"{name}.txt"))


@cache
def load_rows(name: str) -> tuple[tuple[str, ...], ...]:
    rows = []
    for raw in _read(f"{name}.tsv").splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            rows.append(tuple(line.split()))
    return tuple(rows)
