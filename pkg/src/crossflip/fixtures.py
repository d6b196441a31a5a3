"""Bundled facet lists with their expected invariants."""
from __future__ import annotations

import os
from dataclasses import dataclass
from pathlib import Path

from .core import Complex
from .formats import load_edges, parse_facets

ENV_VAR = "CROSSFLIP_FIXTURES"


def fixture_dir() -> Path:
    override = os.environ.get(ENV_VAR)
    return Path(override) if override else Path(__file__).with_name("data")


@dataclass(frozen=True)
class Fixture:
    name: str
    filename: str
    f_vector: tuple[int, ...]
    betti: tuple[int, ...]
    class_sizes: tuple[int, ...]
    provenance: str
    shelling: bool = False
    knot_file: str | None = None

    @property
    def path(self) -> Path:
        return fixture_dir() / self.filename

    def load(self) -> Complex:
        return self.load_with_order()[0]

    def load_with_order(self) -> tuple[Complex, list[frozenset]]:
        return parse_facets(self.path.read_text())

    def knot_edges(self) -> list[frozenset]:
        if self.knot_file is None:
            return []
        return load_edges(fixture_dir() / self.knot_file)


FIXTURES = {
    f.name: f for f in [
        Fixture("rp3_16", "rp3_16.txt", (1, 16, 88, 144, 72), (1, 1, 1, 1), (4, 4, 4, 4),
                "facet table of the 16-vertex balanced RP^3"),
        Fixture("double_trefoil_22", "double_trefoil_22.txt", (1, 22, 136, 228, 114),
                (1, 0, 0, 1), (5, 5, 6, 6),
                "facet table of the 22-vertex balanced 3-sphere with a double-trefoil knot; "
                "file order is the column order of the table",
                shelling=True, knot_file="double_trefoil_22.knot"),
        Fixture("triple_trefoil_28", "triple_trefoil_28.txt", (1, 28, 204, 352, 176),
                (1, 0, 0, 1), (6, 7, 7, 8),
                "facet table of the 28-vertex balanced 3-sphere with a triple-trefoil knot",
                knot_file="triple_trefoil_28.knot"),
    ]
}


def catalog() -> list[Fixture]:
    return [FIXTURES[k] for k in sorted(FIXTURES)]


def get(name: str) -> Fixture:
    try:
        return FIXTURES[name]
    except KeyError:
        raise KeyError(f"unknown fixture {name!r}; known: {', '.join(sorted(FIXTURES))}") from None
