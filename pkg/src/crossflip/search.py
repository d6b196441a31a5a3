"""Vertex reduction by greedy down-flips with random up-flip kicks, and flip-graph exploration."""
from __future__ import annotations

import random
import time
from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Iterable

from .balance import Coloring, find_coloring, is_proper
from .core import Complex
from .errors import BadConstraint, NotBalanced
from .flips import (Embedding, FlipResult, FlipTemplate, HostIndex, flip, flip_catalog,
                    full_scan, refresh_cache)
from .isomorphism import invariant_key, is_isomorphic


def removable_candidates(cx: Complex, coloring: Coloring | None = None) -> frozenset:
    """Vertices whose link has exactly 2d vertices (necessary for removability)."""
    target = 2 * cx.dim
    return frozenset(v for v in cx.vertex_set if cx.degree(v) == target)


def score(cx: Complex, coloring: Coloring | None = None) -> tuple[int, int]:
    target = 2 * cx.dim
    degs = [cx.degree(v) for v in cx.vertex_set]
    return sum(1 for g in degs if g == target), sum(g * g for g in degs)


@dataclass
class LogEntry:
    step: int
    template_id: str
    kind: str
    image_vertices: tuple[int, ...]
    new_vertices: tuple[int, ...]

    def __str__(self):
        img = ",".join(map(str, self.image_vertices))
        new = ",".join(map(str, self.new_vertices)) or "-"
        return f"{self.step} {self.template_id} {self.kind} {img}->{new}"


class SearchState:
    """Complex, coloring and embedding cache, advanced one flip at a time."""

    def __init__(self, cx: Complex, coloring: Coloring | None = None,
                 templates: Iterable[FlipTemplate] | None = None,
                 constraints: Iterable[Iterable[int]] = (), seed: int | None = 0,
                 debug: bool = False):
        if coloring is None:
            coloring = find_coloring(cx)
            if coloring is None:
                raise NotBalanced("complex admits no proper (d+1)-coloring")
        elif not is_proper(cx, coloring):
            raise NotBalanced("supplied coloring is not proper")
        self.constraints = frozenset(frozenset(e) for e in constraints)
        for e in self.constraints:
            if len(e) != 2 or not cx.contains_face(e):
                raise BadConstraint(f"protected edge {sorted(e)} is not an edge of the complex")
        self.templates = list(templates) if templates is not None else flip_catalog(cx.dim)
        self.complex = cx
        self.coloring = coloring
        self.rng = random.Random(seed)
        self.debug = debug
        self.host = HostIndex(cx, coloring)
        self.cache = full_scan(cx, coloring, self.templates, self.host)
        self.history: list[LogEntry] = []
        self.best = cx
        self.best_coloring = coloring
        self._protected_at: dict[int, list[int]] = {}
        for e in self.constraints:
            a, b = tuple(e)
            self._protected_at.setdefault(a, []).append(b)
            self._protected_at.setdefault(b, []).append(a)

    @property
    def steps(self) -> int:
        return len(self.history)

    def allowed(self, emb: Embedding) -> bool:
        """Reject embeddings with a protected edge in the open interior of the image."""
        if not self._protected_at:
            return True
        inv = None
        verts = emb.image_vertices
        t = emb.template
        for a, others in self._protected_at.items():
            if a not in verts:
                continue
            for b in others:
                if b in verts:
                    if inv is None:
                        inv = {hv: tv for tv, hv in emb.vertex_map}
                    te = frozenset((inv[a], inv[b]))
                    if te in t.phi_faces and te not in t.boundary_faces:
                        return False
        return True

    def candidates(self, kind: str | None = None) -> list[Embedding]:
        out = [e for e in self.cache.values()
               if (kind is None or e.template.kind == kind) and self.allowed(e)]
        out.sort(key=lambda e: e.sort_key)
        return out

    def score_after(self, emb: Embedding) -> tuple[int, int]:
        """Score of the complex obtained by flipping ``emb``, computed locally."""
        cx = self.complex
        t = emb.template
        target = 2 * cx.dim
        vmap = emb.mapping
        full = dict(vmap)
        for k, tv in enumerate(t.new_vertices):
            full[tv] = -1 - k
        added = [frozenset(full[v] for v in f) for f in t.complement.facets]
        count, sumsq = self._base_score()
        removed = emb.removed_vertices
        vf = cx.vertex_facets
        image = emb.image
        affected = set(emb.image_vertices) | {full[v] for v in t.new_vertices}
        for v in affected:
            if v >= 0:
                g = cx.degree(v)
                count -= g == target
                sumsq -= g * g
            if v in removed:
                continue
            nb = set()
            if v >= 0:
                for f in vf[v]:
                    if f not in image:
                        nb.update(f)
            for f in added:
                if v in f:
                    nb.update(f)
            g = len(nb) - 1
            count += g == target
            sumsq += g * g
        return count, sumsq

    def _base_score(self) -> tuple[int, int]:
        cached = getattr(self, "_score_cache", None)
        if cached is None or cached[0] is not self.complex:
            self._score_cache = (self.complex, score(self.complex))
        return self._score_cache[1]

    def apply(self, emb: Embedding) -> FlipResult:
        old = self.complex
        result = flip(old, self.coloring, emb, check=self.debug)
        self.complex = result.complex
        self.coloring = result.coloring
        self.host = HostIndex(self.complex, self.coloring)
        self.cache = refresh_cache(old, self.complex, self.cache, self.coloring,
                                   self.templates, self.host)
        if self.debug:
            self.verify_cache()
        self.history.append(LogEntry(self.steps + 1, emb.template.template_id,
                                     emb.template.kind, tuple(sorted(emb.image_vertices)),
                                     result.new_vertices))
        if self.complex.num_vertices < self.best.num_vertices:
            self.best = self.complex
            self.best_coloring = self.coloring
        return result

    def verify_cache(self) -> None:
        fresh = full_scan(self.complex, self.coloring, self.templates, self.host)
        if fresh.keys() != self.cache.keys():
            raise AssertionError("incremental embedding cache diverged from a full rescan")

    def log_text(self) -> str:
        return "".join(f"{e}\n" for e in self.history)


def _choose_up(state: SearchState) -> Embedding | None:
    ups = state.candidates("up")
    if not ups:
        return None
    by_template: dict[str, list[Embedding]] = {}
    for e in ups:
        by_template.setdefault(e.template.template_id, []).append(e)
    names = sorted(by_template)
    sites = by_template[names[state.rng.randrange(len(names))]]
    return sites[state.rng.randrange(len(sites))]


def reduce(cx: Complex, coloring: Coloring | None = None, budget: int = 500, seed: int = 0,
           constraints: Iterable[Iterable[int]] = (), upflip_burst: int = 3,
           target_f0: int | None = None, time_limit: float | None = None,
           templates: Iterable[FlipTemplate] | None = None, debug: bool = False,
           callback: Callable[[SearchState], None] | None = None) -> SearchState:
    """Greedy down-flips ranked by ``score``; ``upflip_burst`` random up-flips when stuck.

    Stops after ``budget`` flips, when the vertex count reaches
    ``target_f0``, or after ``time_limit`` seconds. ``callback`` sees the
    state after every flip.
    """
    state = SearchState(cx, coloring, templates, constraints, seed, debug)
    start = time.monotonic()
    while state.steps < budget:
        if target_f0 is not None and state.complex.num_vertices <= target_f0:
            break
        if time_limit is not None and time.monotonic() - start > time_limit:
            break
        downs = state.candidates("down")
        if downs:
            scored = [(state.score_after(e), e) for e in downs]
            top = max(s for s, _ in scored)
            ties = [e for s, e in scored if s == top]
            state.apply(ties[state.rng.randrange(len(ties))])
            if callback:
                callback(state)
            continue
        moved = False
        for _ in range(upflip_burst):
            if state.steps >= budget:
                break
            emb = _choose_up(state)
            if emb is None:
                break
            state.apply(emb)
            if callback:
                callback(state)
            moved = True
        if not moved:
            break
    return state


def is_irreducible(cx: Complex, coloring: Coloring | None = None) -> bool:
    """True iff no down-flip applies, i.e. no vertex can be removed by a basic cross-flip."""
    if coloring is None:
        coloring = find_coloring(cx)
        if coloring is None:
            raise NotBalanced("complex is not balanced")
    downs = [t for t in flip_catalog(cx.dim) if t.kind == "down"]
    if not removable_candidates(cx):
        # every down-flip removes an interior vertex whose link has 2d vertices
        return True
    return not full_scan(cx, coloring, downs)


# -- flip graph -----------------------------------------------------------------

@dataclass
class FlipGraphNode:
    key: int
    complex: Complex
    coloring: Coloring
    f0: int


@dataclass
class FlipGraph:
    nodes: list[FlipGraphNode] = field(default_factory=list)
    edges: set[tuple[int, int, str]] = field(default_factory=set)

    def ranks(self) -> dict[int, list[int]]:
        out: dict[int, list[int]] = {}
        for n in self.nodes:
            out.setdefault(n.f0, []).append(n.key)
        return dict(sorted(out.items()))

    def to_dot(self) -> str:
        lines = ["graph crossflips {", "  node [shape=circle];"]
        for f0, keys in self.ranks().items():
            members = " ".join(f"n{k};" for k in keys)
            lines.append(f"  {{ rank=same; {members} }}")
        for n in self.nodes:
            lines.append(f'  n{n.key} [label="{n.f0}"];')
        for a, b, tid in sorted(self.edges):
            lines.append(f'  n{a} -- n{b} [label="{tid}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def explore_flip_graph(cx: Complex, coloring: Coloring | None = None, f0_cap: int = 14,
                       sufficient_only: bool = False, max_nodes: int | None = None) -> FlipGraph:
    """Breadth-first search over isomorphism classes reachable by basic cross-flips.

    Up-flips are only applied to complexes with fewer than ``f0_cap``
    vertices. This does not enumerate every balanced triangulation.
    """
    if coloring is None:
        coloring = find_coloring(cx)
        if coloring is None:
            raise NotBalanced("complex is not balanced")
    templates = flip_catalog(cx.dim, sufficient_only)
    graph = FlipGraph()
    buckets: dict[tuple, list[int]] = {}

    def lookup(c: Complex) -> int | None:
        for k in buckets.get(invariant_key(c), ()):
            if is_isomorphic(graph.nodes[k].complex, c) is not None:
                return k
        return None

    def add(c: Complex, k: Coloring) -> int:
        key = len(graph.nodes)
        graph.nodes.append(FlipGraphNode(key, c, k, c.num_vertices))
        buckets.setdefault(invariant_key(c), []).append(key)
        return key

    queue = deque([add(cx, coloring)])
    while queue:
        k = queue.popleft()
        node = graph.nodes[k]
        cache = full_scan(node.complex, node.coloring, templates)
        seen_results: set = set()
        for emb in sorted(cache.values(), key=lambda e: e.sort_key):
            if emb.template.kind == "up" and node.f0 >= f0_cap:
                continue
            res = flip(node.complex, node.coloring, emb, check=False)
            target = lookup(res.complex)
            if target is None:
                if max_nodes is not None and len(graph.nodes) >= max_nodes:
                    continue
                target = add(res.complex, res.coloring)
                queue.append(target)
            if target != k and (target, emb.template.template_id) not in seen_results:
                seen_results.add((target, emb.template.template_id))
                a, b = sorted((k, target))
                graph.edges.add((a, b, emb.template.template_id if a == k else emb.template.reverse_id))
    return graph
