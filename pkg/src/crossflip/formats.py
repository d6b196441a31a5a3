"""Text formats: facet lists, protected edges, colorings, flip logs, reports.

Facet files hold one facet per line, written ``[v1,v2,...,vk]``. Lines
starting with ``#`` are comments. A comment of the form ``# map NAME = INT``
declares an integer for a symbolic label (bundled fixtures use names such as
``v_12``); symbolic labels without such a declaration are rejected.
"""
from __future__ import annotations

import re
from pathlib import Path
from typing import Iterable

from .core import Complex, make_complex
from .errors import NeedsNameMap, ParseError, VoidComplex

_MAP_RE = re.compile(r"^#\s*map\s+(\S+)\s*=\s*(\d+)\s*$")
_SPLIT_RE = re.compile(r"[,\s]+")


def _normalize_name(token: str) -> str:
    return token.replace("{", "").replace("}", "").replace("$", "")


def parse_name_map(lines: Iterable[str]) -> dict[str, int]:
    out = {}
    for line in lines:
        m = _MAP_RE.match(line.strip())
        if m:
            out[_normalize_name(m.group(1))] = int(m.group(2))
    return out


def _parse_vertex_lists(text: str, name_map: dict[str, int] | None = None) -> list[list[int]]:
    lines = text.splitlines()
    names = parse_name_map(lines)
    if name_map:
        names.update(name_map)
    rows = []
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("["):
            if not line.endswith("]"):
                raise ParseError(f"unterminated facet {line!r}", lineno)
            line = line[1:-1]
        tokens = [t for t in _SPLIT_RE.split(line) if t]
        if not tokens:
            raise ParseError("empty facet", lineno)
        row = []
        for tok in tokens:
            if tok.lstrip("-").isdigit():
                value = int(tok)
                if value < 0:
                    raise ParseError(f"negative label {tok}", lineno)
                row.append(value)
                continue
            key = _normalize_name(tok)
            if key not in names:
                raise NeedsNameMap(f"symbolic label {tok!r} has no integer mapping", lineno)
            row.append(names[key])
        if len(set(row)) != len(row):
            raise ParseError(f"repeated vertex in {raw.strip()!r}", lineno)
        rows.append(row)
    return rows


def parse_facets(text: str, name_map: dict[str, int] | None = None) -> tuple[Complex, list[frozenset]]:
    """Parse a facet file; returns the complex and the facets in file order."""
    rows = _parse_vertex_lists(text, name_map)
    if not rows:
        raise VoidComplex("no facets in input")
    return make_complex(rows), [frozenset(r) for r in rows]


def load_facets(path, name_map=None) -> Complex:
    return parse_facets(Path(path).read_text(), name_map)[0]


def load_order(path, name_map=None) -> list[frozenset]:
    return parse_facets(Path(path).read_text(), name_map)[1]


def format_facets(cx: Complex, order: Iterable[Iterable[int]] | None = None,
                  header: Iterable[str] = ()) -> str:
    facets = [tuple(sorted(f)) for f in order] if order is not None else cx.sorted_facets()
    out = [f"# {h}\n" for h in header]
    out.extend("[" + ",".join(map(str, f)) + "]\n" for f in facets)
    return "".join(out)


def save_facets(path, cx: Complex, order=None, header=()) -> None:
    Path(path).write_text(format_facets(cx, order, header))


def parse_edges(text: str, name_map: dict[str, int] | None = None) -> list[frozenset]:
    rows = _parse_vertex_lists(text, name_map)
    for r in rows:
        if len(r) != 2:
            raise ParseError(f"expected an edge, got {r}")
    return [frozenset(r) for r in rows]


def load_edges(path, name_map=None) -> list[frozenset]:
    return parse_edges(Path(path).read_text(), name_map)


def format_report(items) -> str:
    """Flat ``key=value`` lines; tuples are comma-joined, booleans lowercase."""
    lines = []
    for key, value in items:
        if isinstance(value, bool):
            value = "true" if value else "false"
        elif isinstance(value, (tuple, list)):
            value = ",".join(str(x) for x in value)
        lines.append(f"{key}={value}")
    return "\n".join(lines) + "\n"
