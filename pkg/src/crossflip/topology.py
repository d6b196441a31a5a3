"""Homology over the two-element field, surfaces, pseudomanifold checks and shellings."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .core import Complex, dual_graph, is_pseudomanifold, link
from .errors import BadOrder, NotClosedSurface
from .isomorphism import VERTEX_CAP, is_isomorphic, isomorphisms


def _rank_f2(rows: Iterable[int]) -> int:
    """Rank of a 0/1 matrix given as integer bit rows."""
    pivots: dict[int, int] = {}
    rank = 0
    for r in rows:
        while r:
            top = r.bit_length() - 1
            p = pivots.get(top)
            if p is None:
                pivots[top] = r
                rank += 1
                break
            r ^= p
    return rank


def boundary_rank(cx: Complex, k: int) -> int:
    """Rank of the boundary map from k-faces to (k-1)-faces; k = 0 maps to the empty face."""
    if k < 0 or k > cx.dim:
        return 0
    lower = {f: i for i, f in enumerate(cx.faces(k - 1))}
    rows = []
    for f in cx.faces(k):
        bits = 0
        for v in f:
            bits |= 1 << lower[f - {v}]
        rows.append(bits)
    return _rank_f2(rows)


@dataclass(frozen=True)
class BettiProfile:
    betti: tuple[int, ...]
    reduced: tuple[int, ...]

    @property
    def euler(self) -> int:
        return sum((-1) ** i * b for i, b in enumerate(self.betti))

    def __getitem__(self, i: int) -> int:
        return self.betti[i]


def betti_f2(cx: Complex) -> BettiProfile:
    d = cx.dim
    if d < 0:
        return BettiProfile((), ())
    ranks = [boundary_rank(cx, k) for k in range(d + 2)]
    f = cx.f_vector[1:]
    reduced = tuple(f[k] - ranks[k] - ranks[k + 1] for k in range(d + 1))
    betti = (reduced[0] + 1,) + reduced[1:]
    return BettiProfile(betti, reduced)


def euler_characteristic(cx: Complex) -> int:
    return sum((-1) ** i * n for i, n in enumerate(cx.f_vector[1:]))


# -- orientation ---------------------------------------------------------------

def orientation(cx: Complex) -> dict[frozenset, int] | None:
    """Coherent +-1 signs on facets (relative to sorted vertex order), or None.

    Expects a pure complex in which every ridge lies in at most two facets.
    """
    graph = dual_graph(cx)
    sign: dict[int, int] = {}
    for comp in graph.components:
        sign[comp[0]] = 1
        stack = [comp[0]]
        while stack:
            i = stack.pop()
            fi = sorted(graph.nodes[i])
            for j in graph.adjacency[i]:
                fj = sorted(graph.nodes[j])
                # induced signs on the shared ridge must be opposite
                pi = next(p for p, v in enumerate(fi) if v not in graph.nodes[j])
                pj = next(p for p, v in enumerate(fj) if v not in graph.nodes[i])
                want = -sign[i] * (-1) ** pi * (-1) ** pj
                if j in sign:
                    if sign[j] != want:
                        return None
                else:
                    sign[j] = want
                    stack.append(j)
    return {graph.nodes[i]: s for i, s in sign.items()}


def is_orientable(cx: Complex) -> bool:
    return orientation(cx) is not None


@dataclass(frozen=True)
class SurfaceType:
    orientable: bool
    euler: int

    @property
    def name(self) -> str:
        if self.orientable:
            g = (2 - self.euler) // 2
            return "S^2" if g == 0 else ("T" if g == 1 else f"T^#{g}")
        k = 2 - self.euler
        return "RP^2" if k == 1 else f"(RP^2)^#{k}"


def _is_cycle(cx: Complex) -> bool:
    if cx.dim != 1 or not cx.is_pure:
        return False
    if any(cx.degree(v) != 2 for v in cx.vertex_set):
        return False
    return dual_graph(cx).is_strongly_connected


def classify_surface(cx: Complex) -> SurfaceType:
    if cx.dim != 2 or not cx.is_pure:
        raise NotClosedSurface("expected a pure 2-dimensional complex")
    for e in cx.faces(1):
        n = sum(1 for f in cx.vertex_facets[min(e)] if e <= f)
        if n != 2:
            raise NotClosedSurface(f"edge {sorted(e)} lies in {n} triangles")
    for v in cx.vertex_set:
        if not _is_cycle(link(cx, [v])):
            raise NotClosedSurface(f"link of vertex {v} is not a cycle")
    if not dual_graph(cx).is_strongly_connected:
        raise NotClosedSurface("surface is not connected")
    return SurfaceType(is_orientable(cx), euler_characteristic(cx))


# -- pseudomanifolds -------------------------------------------------------------

def _connected(cx: Complex) -> bool:
    verts = cx.vertex_set
    if not verts:
        return True
    nb = cx.neighbors
    start = next(iter(verts))
    seen = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        for w in nb[v]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == len(verts)


def is_normal_pseudomanifold(cx: Complex) -> bool:
    if not is_pseudomanifold(cx):
        return False
    for k in range(cx.dim - 1):
        for face in cx.faces(k):
            if not _connected(link(cx, face)):
                return False
    return True


def singular_faces(cx: Complex) -> tuple[list[frozenset], list[int]]:
    """Edges not in exactly two triangles, and vertices whose link is not a cycle."""
    edges = []
    for e in sorted(cx.faces(1), key=sorted):
        n = sum(1 for f in cx.vertex_facets[min(e)] if e <= f and len(f) == 3)
        if n != 2:
            edges.append(e)
    verts = [v for v in sorted(cx.vertex_set) if not _is_cycle(link(cx, [v]))]
    return edges, verts


def dunce_counts_hold(f: Sequence[int], f0_sing: int) -> bool:
    """Euler characteristic 1 and the triple-edge count identity for a 2-complex.

    ``f`` is (f_-1, f_0, f_1, f_2).
    """
    _, f0, f1, f2 = f
    return f0 - f1 + f2 == 1 and f0_sing + 2 * f1 - 3 * f2 == 0


def dunce_relations(cx: Complex) -> bool:
    """Relations satisfied by a 2-complex whose singular edges each lie in three triangles."""
    if cx.dim != 2 or not cx.is_pure:
        return False
    edges, verts = singular_faces(cx)
    if not edges:
        return False
    sing = set(verts)
    for e in edges:
        sing |= e
    return dunce_counts_hold(cx.f_vector, len(sing))


# -- shellings -------------------------------------------------------------------

def verify_shelling(cx: Complex, order: Sequence[Iterable[int]]) -> bool:
    """Check that each facet meets the union of its predecessors in a pure (d-1)-complex."""
    seq = [frozenset(f) for f in order]
    if len(seq) != len(set(seq)) or set(seq) != cx.facets:
        raise BadOrder("order is not a permutation of the facets")
    if not cx.is_pure:
        return False
    seen_ridges: set[frozenset] = set()
    for i, f in enumerate(seq):
        if i > 0:
            shared = {x for x in f if f - {x} in seen_ridges}
            if not shared:
                return False
            for g in seq[:i]:
                # f & g must sit inside some shared ridge f - {x}
                if all(x in g for x in shared):
                    return False
        for x in f:
            seen_ridges.add(f - {x})
    return True


# -- symmetry --------------------------------------------------------------------

def all_vertex_links_isomorphic(cx: Complex, cap: int = VERTEX_CAP) -> bool:
    verts = sorted(cx.vertex_set)
    if not verts:
        return True
    first = link(cx, [verts[0]])
    return all(is_isomorphic(first, link(cx, [v]), cap) is not None for v in verts[1:])


def find_free_involution(cx: Complex, cap: int = VERTEX_CAP) -> dict[int, int] | None:
    """An automorphism of order two fixing no face, or None. Can be slow."""
    faces = cx.all_faces()
    for sigma in isomorphisms(cx, cx, cap):
        if any(sigma[v] == v or sigma[sigma[v]] != v for v in sigma):
            continue
        if any(len(f) and frozenset(sigma[v] for v in f) == f for f in faces):
            continue
        return sigma
    return None
