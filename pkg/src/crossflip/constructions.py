"""Connected sums, balanced handle additions and explicit members of the balanced Walkup class."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb
from typing import Iterable, Mapping

from .balance import Coloring, cross_polytope_coloring
from .core import Complex, cross_polytope_boundary, dual_graph, suspension
from .errors import BadGluing, ColorMismatch, LabelCollision


@dataclass(frozen=True)
class Gluing:
    """Identify each ``v`` in facet ``F`` with ``phi[v]`` in facet ``G``."""

    F: frozenset
    G: frozenset
    phi: Mapping[int, int]
    mode: str = "sum"

    @classmethod
    def make(cls, F: Iterable[int], G: Iterable[int], phi: Mapping[int, int] | None = None,
             mode: str = "sum", colorings: tuple[Coloring, Coloring] | None = None) -> "Gluing":
        """Build a gluing; without ``phi`` vertices are matched by color, else by sorted order."""
        F, G = frozenset(F), frozenset(G)
        if phi is None:
            if len(F) != len(G):
                raise BadGluing("facets of different sizes")
            if colorings is not None:
                ka, kb = colorings
                by_color = {kb[w]: w for w in G}
                try:
                    phi = {v: by_color[ka[v]] for v in F}
                except KeyError as exc:
                    raise ColorMismatch("facets do not carry the same colors") from exc
            else:
                phi = dict(zip(sorted(F), sorted(G)))
        g = cls(F, G, dict(phi), mode)
        g.check_bijection()
        return g

    def check_bijection(self) -> None:
        if set(self.phi) != set(self.F) or set(self.phi.values()) != set(self.G) \
                or len(self.F) != len(self.G):
            raise BadGluing("phi is not a bijection F -> G")


def _check_colors(g: Gluing, ka: Coloring | None, kb: Coloring | None) -> None:
    if ka is None or kb is None:
        return
    for v, w in g.phi.items():
        if ka[v] != kb[w]:
            raise ColorMismatch(f"vertex {v} (color {ka[v]}) glued to {w} (color {kb[w]})")


def connected_sum(a: Complex, b: Complex, g: Gluing, colorings=None):
    """Delete F from ``a`` and G from ``b`` and glue along their boundaries.

    Labels of ``a`` are kept; each ``phi[v]`` in ``b`` is renamed to ``v``.
    With ``colorings=(ka, kb)`` the result is returned together with its
    coloring.
    """
    g.check_bijection()
    if a.vertex_set & b.vertex_set:
        raise LabelCollision("connected sum expects disjoint vertex sets")
    if g.F not in a.facets or g.G not in b.facets:
        raise BadGluing("F and G must be facets of the two summands")
    if a.dim != b.dim:
        raise BadGluing("summands have different dimensions")
    ka, kb = colorings if colorings is not None else (None, None)
    _check_colors(g, ka, kb)
    back = {w: v for v, w in g.phi.items()}
    facets = [f for f in a.facets if f != g.F]
    facets += [frozenset(back.get(w, w) for w in f) for f in b.facets if f != g.G]
    cx = Complex(facets, next_label=max(a.next_label, b.next_label), reduced=True)
    if colorings is None:
        return cx
    merged = dict(ka.assignment)
    merged.update((w, c) for w, c in kb.assignment.items() if w not in back)
    return cx, Coloring(merged, ka.num_colors)


def expected_sum_fvector(fa, fb) -> tuple[int, ...]:
    """f-vector of a connected sum of two pure d-complexes (entries include f_-1)."""
    d = len(fa) - 2
    out = [1]
    for i in range(d + 1):
        out.append(fa[i + 1] + fb[i + 1] - (2 if i == d else comb(d + 1, i + 1)))
    return tuple(out)


def handle_addition(cx: Complex, g: Gluing, coloring: Coloring | None = None,
                    strict: bool = False):
    """Remove facets F and G and identify each ``v`` with ``phi[v]``.

    Requires disjoint links for identified pairs and, with a coloring, equal
    colors. ``strict`` also demands an even dual-graph distance from F to G.
    """
    g.check_bijection()
    if g.F not in cx.facets or g.G not in cx.facets:
        raise BadGluing("F and G must be facets")
    if g.F & g.G:
        raise BadGluing("F and G must be disjoint")
    for v, w in g.phi.items():
        if cx.neighbors[v] & cx.neighbors[w]:
            raise BadGluing(f"links of {v} and {w} intersect")
    _check_colors(g, coloring, coloring)
    if strict and dual_distance(cx, g.F, g.G) % 2:
        raise BadGluing("dual-graph distance between F and G is odd")
    back = {w: v for v, w in g.phi.items()}
    facets = [frozenset(back.get(u, u) for u in f) for f in cx.facets if f != g.F and f != g.G]
    out = Complex(facets, next_label=cx.next_label, reduced=True)
    if coloring is None:
        return out
    return out, Coloring({v: c for v, c in coloring.assignment.items() if v not in back},
                         coloring.num_colors)


def dual_distance(cx: Complex, F: frozenset, G: frozenset) -> int:
    graph = dual_graph(cx)
    index = {f: i for i, f in enumerate(graph.nodes)}
    return graph.distances_from(index[frozenset(F)])[index[frozenset(G)]]


def walkup_equality_gap(cx: Complex, beta1: int) -> int:
    """2 f_1 - 3 d f_0 - 4 C(d+1, 2) (beta1 - 1); zero exactly at equality."""
    d = cx.dim
    f0, f1 = cx.f_vector[1], cx.f_vector[2]
    return 2 * f1 - 3 * d * f0 - 4 * comb(d + 1, 2) * (beta1 - 1)


def balanced_suspension(cx: Complex, coloring: Coloring) -> tuple[Complex, Coloring]:
    poles = tuple(cx.fresh_labels(2))
    c = coloring.num_colors
    col = Coloring({**coloring.assignment, poles[0]: c, poles[1]: c}, c + 1)
    return suspension(cx, poles), col


def suspension_tower(cx: Complex, k: int, coloring: Coloring | None = None):
    """k-fold suspension with fresh poles; with a coloring, each pair gets a new color."""
    out = cx
    col = coloring
    for _ in range(k):
        if col is None:
            out = suspension(out)
        else:
            out, col = balanced_suspension(out, col)
    return out if coloring is None else (out, col)


def stacked_cross_polytopal_sphere(d: int, copies: int) -> tuple[Complex, Coloring]:
    """Iterated connected sum of ``copies`` boundaries of the (d+1)-cross-polytope."""
    if copies < 1:
        raise ValueError("need at least one copy")
    cx, col = cross_polytope_boundary(d), cross_polytope_coloring(d)
    for _ in range(copies - 1):
        base = cx.next_label
        piece = cross_polytope_boundary(d).relabel({v: v + base for v in range(2 * d + 2)})
        pcol = Coloring({v + base: v % (d + 1) for v in range(2 * d + 2)}, d + 1)
        F = max(cx.facets, key=lambda f: sorted(f, reverse=True))
        G = frozenset(range(base, base + d + 1))
        g = Gluing.make(F, G, colorings=(col, pcol))
        cx, col = connected_sum(cx, piece, g, (col, pcol))
    return cx, col


def rp2_6() -> Complex:
    """Six-vertex real projective plane (hemi-icosahedron)."""
    return Complex([[0, 1, 2], [0, 2, 3], [0, 3, 4], [0, 4, 5], [0, 5, 1],
                    [1, 2, 4], [2, 3, 5], [3, 4, 1], [4, 5, 2], [5, 1, 3]])


def torus_9() -> tuple[Complex, Coloring]:
    """Balanced 9-vertex torus from the 3x3 grid, colored by (i + j) mod 3."""
    def lab(i, j):
        return 3 * (i % 3) + (j % 3)
    facets = []
    for i, j in itertools.product(range(3), repeat=2):
        facets.append([lab(i, j), lab(i + 1, j), lab(i + 1, j + 1)])
        facets.append([lab(i, j), lab(i, j + 1), lab(i + 1, j + 1)])
    cx = Complex(facets)
    return cx, Coloring({lab(i, j): (i + j) % 3 for i in range(3) for j in range(3)}, 3)


# -- named recipes -------------------------------------------------------------------

class _Names:
    """Symbolic vertex names to integers, with aliases created by gluing."""

    def __init__(self):
        self.ids: dict[str, int] = {}

    def __getitem__(self, name: str) -> int:
        return self.ids.setdefault(name, len(self.ids))

    def alias(self, name: str, target: str) -> None:
        self.ids[name] = self.ids[target]


def _cross(names: _Names, vs: list[str], ws: list[str]) -> tuple[Complex, Coloring]:
    """Boundary of the 4-cross-polytope on named vertices; v_i and w_i are the non-edges."""
    pairs = [(names[v], names[w]) for v, w in zip(vs, ws)]
    facets = [frozenset(choice) for choice in itertools.product(*pairs)]
    col = {}
    for i, (v, w) in enumerate(pairs):
        col[v] = col[w] = i
    return Complex(facets, reduced=True), Coloring(col, len(pairs))


def _idx(prefix: str) -> list[str]:
    return [f"{prefix}{i}" for i in range(1, 5)]


def _sum(names, state, piece, own, other):
    """Sum along facet ``own`` (names in the current complex) and ``other`` (names in piece)."""
    cx, col = state
    pcx, pcol = piece
    F = frozenset(names[n] for n in own)
    G = frozenset(names[n] for n in other)
    g = Gluing(F, G, {names[a]: names[b] for a, b in zip(own, other)})
    out = connected_sum(cx, pcx, g, (col, pcol))
    for a, b in zip(own, other):
        names.alias(b, a)
    return out


def _handle(names, state, keep, drop, strict=False):
    cx, col = state
    g = Gluing(frozenset(names[n] for n in keep), frozenset(names[n] for n in drop),
               {names[a]: names[b] for a, b in zip(keep, drop)}, mode="handle")
    out = handle_addition(cx, g, col, strict)
    for a, b in zip(keep, drop):
        names.alias(b, a)
    return out


def _compact(cx: Complex, col: Coloring, names: _Names) -> tuple[Complex, Coloring, dict[str, int]]:
    """Relabel surviving vertices to 0..n-1 and restrict the name map accordingly."""
    new = {v: i for i, v in enumerate(sorted(cx.vertex_set))}
    name_map = {n: new[v] for n, v in names.ids.items() if v in new}
    return (cx.relabel(new), Coloring({new[v]: c for v, c in col.assignment.items() if v in new},
                                      col.num_colors), name_map)


def _twisted_12(names: _Names):
    x, y, z = _idx("x"), _idx("y"), _idx("z")
    yp, zp, xp = _idx("y'"), _idx("z'"), _idx("x'")
    state = _cross(names, x, yp)
    state = _sum(names, state, _cross(names, y, zp), yp, y)
    state = _sum(names, state, _cross(names, z, xp), zp, z)
    return _handle(names, state, x, xp)


def s2_twisted_s1_12() -> tuple[Complex, Coloring, dict[str, int]]:
    """Twelve-vertex balanced S^2-bundle over S^1 built from three cross-polytope boundaries."""
    names = _Names()
    cx, col = _twisted_12(names)
    return _compact(cx, col, names)


def _first_even_disjoint(cx: Complex, F: frozenset) -> frozenset:
    graph = dual_graph(cx)
    index = {f: i for i, f in enumerate(graph.nodes)}
    dist = graph.distances_from(index[F])
    for G in cx.sorted_facets():
        G = frozenset(G)
        if not (G & F) and dist[index[G]] % 2 == 0:
            return G
    raise BadGluing("no disjoint facet at even distance")


def _bundle_twisted() -> tuple[Complex, Coloring, _Names]:
    names = _Names()
    cx, col = _twisted_12(names)
    F = frozenset(cx.sorted_facets()[0])
    G = _first_even_disjoint(cx, F)
    # the r and u vertices are named by color
    for v in F:
        names.alias(f"r{col[v] + 1}", _name_of(names, v))
    for v in G:
        names.alias(f"u{col[v] + 1}", _name_of(names, v))
    r, s, t = _idx("r"), _idx("s"), _idx("t")
    rp, sp = _idx("r'"), _idx("s'")
    state = _sum(names, (cx, col), _cross(names, s, rp), r, rp)
    state = _sum(names, state, _cross(names, t, sp), s, sp)
    state = _handle(names, state, _idx("u"), t)
    return state[0], state[1], names


def _name_of(names: _Names, v: int) -> str:
    return min(n for n, i in names.ids.items() if i == v)


def s2_times_s1_16() -> tuple[Complex, Coloring, dict[str, int]]:
    names = _Names()
    cx, col = _orientable_16(names)
    return _compact(cx, col, names)


def _orientable_16(names: _Names):
    x, yp, y, z, w, wp = _idx("x"), _idx("y'"), _idx("y"), _idx("z"), _idx("w"), _idx("w'")
    c_second = ["x''1", "y''2", "y''3", "y''4"]
    d_second = ["y''1", "z''2", "z''3", "z''4"]
    state = _cross(names, x, yp)
    state = _sum(names, state, _cross(names, y, z), yp, y)
    state = _sum(names, state, _cross(names, w, c_second), ["x1", "y2", "y3", "y4"], c_second)
    state = _sum(names, state, _cross(names, wp, d_second), w, wp)
    return _handle(names, state, ["y1", "z2", "z3", "z4"], d_second)


def _bundle_orientable() -> tuple[Complex, Coloring, _Names]:
    names = _Names()
    state = _orientable_16(names)
    F = frozenset(names[n] for n in _idx("x"))
    G = frozenset(names[n] for n in ["w1", "z2", "z3", "z4"])
    if dual_distance(state[0], F, G) % 2:
        raise BadGluing("recipe facets are at odd dual distance")
    xt = _idx("x'''")
    e_second = ["w'''1", "z'''2", "z'''3", "z'''4"]
    state = _sum(names, state, _cross(names, xt, e_second), _idx("x"), xt)
    state = _handle(names, state, ["w1", "z2", "z3", "z4"], e_second)
    return state[0], state[1], names


def build_bundle_double(kind: str) -> tuple[Complex, Coloring, dict[str, int]]:
    """Balanced 16-vertex triangulation of the connected sum of two S^2-bundles over S^1.

    ``kind`` is ``"twisted"`` or ``"orientable"``. Returns the complex, its
    coloring and the map from recipe vertex names to labels.
    """
    if kind == "twisted":
        cx, col, names = _bundle_twisted()
    elif kind == "orientable":
        cx, col, names = _bundle_orientable()
    else:
        raise ValueError(f"unknown bundle kind {kind!r}")
    return _compact(cx, col, names)
