"""Proper (d+1)-colorings witnessing balancedness."""
from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Mapping

from .core import Complex, dual_graph
from .errors import NotPure


@dataclass(frozen=True)
class Coloring:
    """Vertex -> color map with colors in ``0..d``."""

    assignment: Mapping[int, int]
    num_colors: int

    def __getitem__(self, v: int) -> int:
        return self.assignment[v]

    def __contains__(self, v) -> bool:
        return v in self.assignment

    def __eq__(self, other):
        if not isinstance(other, Coloring):
            return NotImplemented
        return self.num_colors == other.num_colors and dict(self.assignment) == dict(other.assignment)

    def __hash__(self):
        return hash((self.num_colors, frozenset(self.assignment.items())))

    @property
    def class_sizes(self) -> tuple[int, ...]:
        cnt = Counter(self.assignment.values())
        return tuple(cnt.get(c, 0) for c in range(self.num_colors))

    def classes(self) -> list[frozenset]:
        out = [set() for _ in range(self.num_colors)]
        for v, c in self.assignment.items():
            out[c].add(v)
        return [frozenset(s) for s in out]

    def canonical(self) -> "Coloring":
        """Renumber colors: classes by increasing size, ties by smallest label."""
        classes = self.classes()
        order = sorted(range(self.num_colors),
                       key=lambda c: (len(classes[c]), min(classes[c], default=float("inf"))))
        new_of = {old: new for new, old in enumerate(order)}
        return Coloring({v: new_of[c] for v, c in self.assignment.items()}, self.num_colors)

    def permuted(self, perm: Mapping[int, int]) -> "Coloring":
        return Coloring({v: perm[c] for v, c in self.assignment.items()}, self.num_colors)

    def restrict(self, vertices: Iterable[int]) -> "Coloring":
        return Coloring({v: self.assignment[v] for v in vertices}, self.num_colors)

    def extended(self, extra: Mapping[int, int]) -> "Coloring":
        merged = dict(self.assignment)
        merged.update(extra)
        return Coloring(merged, self.num_colors)

    def equivalent(self, other: "Coloring") -> bool:
        """Equal up to a permutation of the colors."""
        if self.assignment.keys() != other.assignment.keys():
            return False
        perm: dict[int, int] = {}
        for v, c in self.assignment.items():
            if perm.setdefault(c, other.assignment[v]) != other.assignment[v]:
                return False
        return len(set(perm.values())) == len(perm)


def is_proper(cx: Complex, coloring: Coloring) -> bool:
    if coloring.num_colors != cx.dim + 1:
        return False
    if not cx.vertex_set <= coloring.assignment.keys():
        return False
    return all(coloring[a] != coloring[b] for a, b in (tuple(e) for e in cx.edges))


def is_facet_rainbow(cx: Complex, coloring: Coloring) -> bool:
    full = set(range(cx.dim + 1))
    return all({coloring[v] for v in f} == full for f in cx.facets)


def cross_polytope_coloring(d: int) -> Coloring:
    return Coloring({v: v % (d + 1) for v in range(2 * d + 2)}, d + 1)


def _propagate(graph, component: list[int]) -> dict[int, int] | None:
    """Force colors through one dual-graph component; None on conflict."""
    nodes = graph.nodes
    col: dict[int, int] = {}
    first = nodes[component[0]]
    for c, v in enumerate(sorted(first)):
        col[v] = c
    seen = {component[0]}
    stack = [component[0]]
    while stack:
        i = stack.pop()
        for j in graph.adjacency[i]:
            if j in seen:
                continue
            seen.add(j)
            f = nodes[j]
            missing = set(range(len(f))) - {col[v] for v in f if v in col}
            fresh = [v for v in f if v not in col]
            if len(fresh) == 1 and len(missing) == 1:
                col[fresh[0]] = missing.pop()
            # facets sharing a ridge leave at most one vertex undetermined
            if len({col.get(v) for v in f}) != len(f) or None in {col.get(v) for v in f}:
                return None
            stack.append(j)
    return col


def find_coloring(cx: Complex) -> Coloring | None:
    """Proper (d+1)-coloring of a pure complex, or None if there is none.

    Inside each dual-graph component the coloring is forced by the first
    facet. Components are then aligned by backtracking over color
    permutations where they share vertices.
    """
    if not cx.is_pure:
        raise NotPure("colorings are defined for pure complexes")
    k = cx.dim + 1
    if k == 0:
        return Coloring({}, 0)
    graph = dual_graph(cx)
    local = []
    for comp in graph.components:
        col = _propagate(graph, comp)
        if col is None:
            return None
        local.append(col)
    # deterministic order
    local.sort(key=lambda c: min(c))
    perms = list(itertools.permutations(range(k)))

    def solve(i: int, acc: dict[int, int]):
        if i == len(local):
            return acc
        col = local[i]
        shared = [v for v in col if v in acc]
        for p in perms:
            if any(acc[v] != p[col[v]] for v in shared):
                continue
            nxt = dict(acc)
            nxt.update((v, p[c]) for v, c in col.items())
            out = solve(i + 1, nxt)
            if out is not None:
                return out
        return None

    result = solve(0, {})
    if result is None:
        return None
    coloring = Coloring(result, k)
    if not is_proper(cx, coloring):
        return None
    return coloring.canonical()


def coloring_is_forced(cx: Complex) -> bool:
    """True when the dual graph is connected, so the coloring is unique up to permutation."""
    return dual_graph(cx).is_strongly_connected


def color_signature(cx: Complex, coloring: Coloring, sub: Complex) -> dict[int, Counter]:
    """Multiset of color sets of the faces of ``sub``, grouped by dimension."""
    out: dict[int, Counter] = {}
    for k in range(-1, sub.dim + 1):
        out[k] = Counter(tuple(sorted(coloring[v] for v in f)) for f in sub.faces(k))
    return out


def vertex_color_signature(coloring: Coloring, vertices: Iterable[int]) -> Counter:
    return Counter(coloring[v] for v in vertices)


def parse_coloring(lines: Iterable[str], num_colors: int | None = None) -> Coloring:
    assignment = {}
    for raw in lines:
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        v, c = line.split(":")
        assignment[int(v)] = int(c)
    k = num_colors if num_colors is not None else max(assignment.values(), default=-1) + 1
    return Coloring(assignment, k)


def format_coloring(coloring: Coloring) -> str:
    return "".join(f"{v}:{c}\n" for v, c in sorted(coloring.assignment.items()))
