"""Isomorphism of small simplicial complexes by refinement and backtracking."""
from __future__ import annotations

from collections import Counter
from typing import Iterator

from .core import Complex
from .errors import NotPure, SizeExceeded

VERTEX_CAP = 64


def _initial_colors(cx: Complex, coloring=None) -> dict[int, tuple]:
    nb = cx.neighbors
    vf = cx.vertex_facets
    out = {}
    for v in cx.vertex_set:
        # link f-vector truncated to vertices and edges is cheap and already sharp
        link_edges = sum(len(f) - 1 for f in vf[v])
        key = (len(nb[v]), len(vf[v]), link_edges)
        if coloring is not None:
            key = key + (coloring[v],)
        out[v] = key
    return out


def _refine(complexes: list[Complex], colorings: list[dict]) -> list[dict[int, int]]:
    """Joint 1-dimensional Weisfeiler-Leman refinement over several complexes.

    Colors are shared integers, so classes can be compared across inputs.
    """
    current = [dict(c) for c in colorings]
    n_classes = -1
    while True:
        table: dict = {}
        nxt = []
        for cx, col in zip(complexes, current):
            vf = cx.vertex_facets
            new = {}
            for v in cx.vertex_set:
                sig = (col[v], tuple(sorted(
                    tuple(sorted(col[w] for w in f if w != v)) for f in vf[v])))
                new[v] = table.setdefault(sig, len(table))
            nxt.append(new)
        current = nxt
        if len(table) == n_classes:
            return current
        n_classes = len(table)


class _Matcher:
    def __init__(self, a: Complex, b: Complex, ca: dict, cb: dict):
        self.a, self.b = a, b
        self.ca, self.cb = ca, cb
        self.nb_a, self.nb_b = a.neighbors, b.neighbors
        self.facets_b = b.facets
        self.vf_a = a.vertex_facets
        by_class: dict[int, list[int]] = {}
        for v in sorted(b.vertex_set):
            by_class.setdefault(cb[v], []).append(v)
        self.by_class = by_class
        self.order = self._order()

    def _order(self) -> list[int]:
        sizes = Counter(self.ca.values())
        remaining = set(self.a.vertex_set)
        order: list[int] = []
        placed: set[int] = set()
        while remaining:
            # prefer vertices with many placed neighbors, then small classes
            v = min(remaining, key=lambda u: (-len(self.nb_a[u] & placed), sizes[self.ca[u]], u))
            order.append(v)
            placed.add(v)
            remaining.discard(v)
        return order

    def run(self) -> Iterator[dict[int, int]]:
        fmap: dict[int, int] = {}
        used: set[int] = set()
        order = self.order
        n = len(order)

        def extend(i):
            if i == n:
                yield dict(fmap)
                return
            v = order[i]
            mapped_nb = [u for u in self.nb_a[v] if u in fmap]
            mapped_non = None
            for w in self.by_class.get(self.ca[v], ()):
                if w in used:
                    continue
                nbw = self.nb_b[w]
                if any(fmap[u] not in nbw for u in mapped_nb):
                    continue
                if mapped_non is None:
                    mapped_non = [u for u in fmap if u not in self.nb_a[v]]
                if any(fmap[u] in nbw for u in mapped_non):
                    continue
                fmap[v] = w
                ok = True
                for f in self.vf_a[v]:
                    if all(u in fmap for u in f):
                        if frozenset(fmap[u] for u in f) not in self.facets_b:
                            ok = False
                            break
                if ok:
                    used.add(w)
                    yield from extend(i + 1)
                    used.discard(w)
                del fmap[v]

        yield from extend(0)


def _prepare(a: Complex, b: Complex, cap: int, ka=None, kb=None):
    for cx in (a, b):
        if cx.num_vertices > cap:
            raise SizeExceeded(f"{cx.num_vertices} vertices exceeds cap {cap}")
    if a.f_vector != b.f_vector or a.is_pure != b.is_pure:
        return None
    if sorted(a.degree(v) for v in a.vertex_set) != sorted(b.degree(v) for v in b.vertex_set):
        return None
    ca, cb = _refine([a, b], [_initial_colors(a, ka), _initial_colors(b, kb)])
    if Counter(ca.values()) != Counter(cb.values()):
        return None
    return _Matcher(a, b, ca, cb)


def is_isomorphic(a: Complex, b: Complex, cap: int = VERTEX_CAP) -> dict[int, int] | None:
    """Return a face-preserving vertex bijection ``a -> b``, or None."""
    if not (a.is_pure and b.is_pure):
        raise NotPure("isomorphism test expects pure complexes")
    m = _prepare(a, b, cap)
    if m is None:
        return None
    return next(m.run(), None)


def isomorphisms(a: Complex, b: Complex, cap: int = VERTEX_CAP) -> Iterator[dict[int, int]]:
    m = _prepare(a, b, cap)
    if m is None:
        return iter(())
    return m.run()


def automorphisms(cx: Complex, cap: int = VERTEX_CAP) -> list[dict[int, int]]:
    return list(isomorphisms(cx, cx, cap))


def invariant_key(cx: Complex) -> tuple:
    """Isomorphism invariant used to bucket complexes before exact tests."""
    colors = _refine([cx], [_initial_colors(cx)])[0]
    # refinement ids are only comparable within one call, so hash the
    # multiset of (degree, facet count) pairs plus the class-size profile
    base = sorted(_initial_colors(cx).values())
    return (cx.f_vector, tuple(base), tuple(sorted(Counter(colors.values()).values())))
