"""Pure simplicial complexes stored by their facets, and face-level operations."""
from __future__ import annotations

import itertools
from collections import defaultdict
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable

from .errors import FaceNotPresent, LabelCollision, NotPure, VoidComplex

Face = frozenset


def _antichain(sets: Iterable[frozenset]) -> frozenset:
    """Drop duplicates and every set contained in another one."""
    by_size = defaultdict(set)
    for s in sets:
        by_size[len(s)].add(s)
    if len(by_size) <= 1:
        return frozenset(itertools.chain.from_iterable(by_size.values()))
    kept: list[frozenset] = []
    index: dict[int, list[frozenset]] = defaultdict(list)
    for size in sorted(by_size, reverse=True):
        for s in by_size[size]:
            if not s:
                if not kept:
                    kept.append(s)
                continue
            pivot = min(s, key=lambda v: len(index[v]))
            if any(s <= t for t in index[pivot]):
                continue
            kept.append(s)
            for v in s:
                index[v].append(s)
    return frozenset(kept)


class Complex:
    """An abstract simplicial complex given by its facets.

    Instances are immutable. ``next_label`` is a monotone counter used to hand
    out labels for new vertices, so that vertices introduced by a flip never
    reuse a label that was seen earlier in the same lineage.
    """

    def __init__(self, facets: Iterable[Iterable[int]], next_label: int | None = None,
                 *, reduced: bool = False):
        fs = frozenset(frozenset(f) for f in facets)
        if not fs:
            raise VoidComplex("a complex needs at least one facet")
        if not reduced:
            fs = _antichain(fs)
        self._facets = fs
        top = max(self.vertex_set, default=-1) + 1
        self._next_label = top if next_label is None else max(next_label, top)

    # -- basic data ---------------------------------------------------------
    @property
    def facets(self) -> frozenset:
        return self._facets

    @property
    def next_label(self) -> int:
        return self._next_label

    @cached_property
    def vertex_set(self) -> frozenset:
        return frozenset().union(*self._facets)

    @cached_property
    def dim(self) -> int:
        return max(len(f) for f in self._facets) - 1

    @cached_property
    def is_pure(self) -> bool:
        size = self.dim + 1
        return all(len(f) == size for f in self._facets)

    @property
    def num_vertices(self) -> int:
        return len(self.vertex_set)

    def sorted_facets(self) -> list[tuple[int, ...]]:
        return sorted(tuple(sorted(f)) for f in self._facets)

    def __len__(self):
        return len(self._facets)

    def __iter__(self):
        return iter(self.sorted_facets())

    def __eq__(self, other):
        if not isinstance(other, Complex):
            return NotImplemented
        return self._facets == other._facets

    def __hash__(self):
        return hash(self._facets)

    def __repr__(self):
        return f"Complex(dim={self.dim}, f={self.f_vector})"

    # -- faces ----------------------------------------------------------------
    @cached_property
    def _faces_by_size(self) -> dict[int, frozenset]:
        out: dict[int, set] = defaultdict(set)
        for f in self._facets:
            items = sorted(f)
            for k in range(len(items) + 1):
                out[k].update(frozenset(c) for c in itertools.combinations(items, k))
        return {k: frozenset(v) for k, v in out.items()}

    def faces(self, k: int) -> frozenset:
        """All faces of dimension ``k`` (``k = -1`` gives the empty face)."""
        return self._faces_by_size.get(k + 1, frozenset())

    def all_faces(self) -> frozenset:
        return frozenset().union(*self._faces_by_size.values())

    @cached_property
    def f_vector(self) -> tuple[int, ...]:
        return tuple(len(self.faces(k)) for k in range(-1, self.dim + 1))

    @cached_property
    def vertex_facets(self) -> dict[int, frozenset]:
        idx: dict[int, list] = defaultdict(list)
        for f in self._facets:
            for v in f:
                idx[v].append(f)
        return {v: frozenset(fs) for v, fs in idx.items()}

    def contains_face(self, face: Iterable[int]) -> bool:
        face = frozenset(face)
        if not face:
            return True
        vf = self.vertex_facets
        if not face <= vf.keys():
            return False
        pivot = min(face, key=lambda v: len(vf[v]))
        return any(face <= f for f in vf[pivot])

    @cached_property
    def edges(self) -> frozenset:
        return self.faces(1)

    @cached_property
    def neighbors(self) -> dict[int, frozenset]:
        nb: dict[int, set] = {v: set() for v in self.vertex_set}
        for f in self._facets:
            for v in f:
                nb[v].update(f)
        return {v: frozenset(s - {v}) for v, s in nb.items()}

    def degree(self, v: int) -> int:
        """Number of vertices of the link of ``v``."""
        return len(self.neighbors[v])

    def fresh_labels(self, n: int) -> list[int]:
        return list(range(self._next_label, self._next_label + n))

    def relabel(self, mapping) -> "Complex":
        return Complex(([mapping[v] for v in f] for f in self._facets), reduced=True)


FVector = tuple


def make_complex(facet_list: Iterable[Iterable[int]]) -> Complex:
    facets = [frozenset(f) for f in facet_list]
    if not facets:
        raise VoidComplex("empty facet list")
    for f in facets:
        for v in f:
            if not isinstance(v, int) or v < 0:
                raise ValueError(f"vertex labels must be non-negative integers, got {v!r}")
    return Complex(facets)


def f_vector(cx: Complex) -> tuple[int, ...]:
    return cx.f_vector


def link(cx: Complex, face: Iterable[int]) -> Complex:
    face = frozenset(face)
    if not face:
        return cx
    if not cx.contains_face(face):
        raise FaceNotPresent(f"{sorted(face)} is not a face")
    vf = cx.vertex_facets
    pivot = min(face, key=lambda v: len(vf[v]))
    return Complex([f - face for f in vf[pivot] if face <= f])


def star(cx: Complex, face: Iterable[int]) -> Complex:
    face = frozenset(face)
    if not face:
        return cx
    if not cx.contains_face(face):
        raise FaceNotPresent(f"{sorted(face)} is not a face")
    vf = cx.vertex_facets
    pivot = min(face, key=lambda v: len(vf[v]))
    return Complex([f for f in vf[pivot] if face <= f], reduced=True)


def simplex(vertices: Iterable[int]) -> Complex:
    return Complex([frozenset(vertices)])


def join(a: Complex, b: Complex) -> Complex:
    if a.vertex_set & b.vertex_set:
        raise LabelCollision(f"shared labels {sorted(a.vertex_set & b.vertex_set)}")
    return Complex((f | g for f in a.facets for g in b.facets), reduced=True,
                   next_label=max(a.next_label, b.next_label))


def cone(cx: Complex, apex: int | None = None) -> Complex:
    if apex is None:
        apex = cx.next_label
    return join(cx, simplex([apex]))


def suspension(cx: Complex, poles: tuple[int, int] | None = None) -> Complex:
    if poles is None:
        poles = tuple(cx.fresh_labels(2))
    return join(cx, Complex([[poles[0]], [poles[1]]]))


def barycentric_subdivision(cx: Complex, with_map: bool = False):
    """Order complex of the face poset.

    New vertices are numbered by nonempty faces sorted by (size, sorted
    labels). With ``with_map`` the face -> label dictionary is returned too.
    """
    faces = sorted((f for f in cx.all_faces() if f), key=lambda f: (len(f), sorted(f)))
    label = {f: i for i, f in enumerate(faces)}
    chains = set()
    for facet in cx.facets:
        for perm in itertools.permutations(sorted(facet)):
            chains.add(frozenset(label[frozenset(perm[:k])] for k in range(1, len(perm) + 1)))
    bd = Complex(chains, reduced=True)
    return (bd, label) if with_map else bd


def standard_sphere(d: int) -> Complex:
    """Boundary of the (d+1)-simplex on labels 0..d+1."""
    if d < 0:
        raise ValueError("d must be non-negative")
    return Complex(itertools.combinations(range(d + 2), d + 1), reduced=True)


def cross_polytope_boundary(d: int) -> Complex:
    """Boundary of the (d+1)-cross-polytope.

    Vertex ``i`` and its antipode ``v_i`` (label ``d+1+i``) span the
    non-edges; every facet picks one vertex from each pair.
    """
    if d < 0:
        raise ValueError("d must be non-negative")
    pairs = [(i, d + 1 + i) for i in range(d + 1)]
    return Complex(itertools.product(*pairs), reduced=True)


def antipode(d: int, v: int) -> int:
    return v + d + 1 if v <= d else v - d - 1


@dataclass
class DualGraph:
    nodes: list[frozenset]
    edges: set[tuple[int, int]]
    ridge_map: dict[frozenset, list[int]]
    adjacency: list[list[int]] = field(repr=False)

    @property
    def is_pseudomanifold(self) -> bool:
        return self.is_strongly_connected and all(len(v) == 2 for v in self.ridge_map.values())

    @cached_property
    def components(self) -> list[list[int]]:
        seen = [False] * len(self.nodes)
        comps = []
        for s in range(len(self.nodes)):
            if seen[s]:
                continue
            seen[s] = True
            comp, stack = [], [s]
            while stack:
                u = stack.pop()
                comp.append(u)
                for w in self.adjacency[u]:
                    if not seen[w]:
                        seen[w] = True
                        stack.append(w)
            comps.append(sorted(comp))
        return comps

    @property
    def is_strongly_connected(self) -> bool:
        return len(self.components) == 1

    def distances_from(self, source: int) -> list[int]:
        dist = [-1] * len(self.nodes)
        dist[source] = 0
        frontier = [source]
        while frontier:
            nxt = []
            for u in frontier:
                for w in self.adjacency[u]:
                    if dist[w] < 0:
                        dist[w] = dist[u] + 1
                        nxt.append(w)
            frontier = nxt
        return dist


def dual_graph(cx: Complex) -> DualGraph:
    if not cx.is_pure:
        raise NotPure("dual graph needs a pure complex")
    nodes = [frozenset(f) for f in cx.sorted_facets()]
    ridge_map: dict[frozenset, list[int]] = defaultdict(list)
    for i, f in enumerate(nodes):
        for v in f:
            ridge_map[f - {v}].append(i)
    edges = set()
    adjacency: list[set] = [set() for _ in nodes]
    for ids in ridge_map.values():
        for a, b in itertools.combinations(ids, 2):
            edges.add((a, b))
            adjacency[a].add(b)
            adjacency[b].add(a)
    return DualGraph(nodes, edges, dict(ridge_map), [sorted(a) for a in adjacency])


def is_pseudomanifold(cx: Complex) -> bool:
    return cx.is_pure and dual_graph(cx).is_pseudomanifold


def induced_subcomplex(cx: Complex, vertices: Iterable[int]) -> Complex:
    vs = frozenset(vertices)
    return Complex([f & vs for f in cx.facets] or [frozenset()])


def is_induced(cx: Complex, sub: Complex) -> bool:
    return induced_subcomplex(cx, sub.vertex_set) == sub


def is_subcomplex(cx: Complex, sub: Complex) -> bool:
    return all(cx.contains_face(f) for f in sub.facets)
