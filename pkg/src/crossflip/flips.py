"""Basic cross-flips: the Phi_I family, the flip catalog, embeddings and moves.

Embeddings are found by matching dual graphs. In a balanced pseudomanifold the
match is rigid: once a template facet is sent to a host facet with a global
color permutation, every neighbouring facet across a ridge is forced, so the
whole embedding follows from one (root facet, permutation) pair. The walk
below is the dual-graph VF2 search with that forcing built in; lifting to
vertices is immediate because facets are stored indexed by color.
"""
from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Iterable

from .balance import Coloring, cross_polytope_coloring
from .core import Complex, cross_polytope_boundary, dual_graph
from .errors import DimMismatch, EmptyIndexSet, NotPseudomanifold, StaleEmbedding
from .isomorphism import automorphisms, is_isomorphic


def phi_complex(index_set: Iterable[int], d: int) -> Complex:
    """Union of the pieces Phi_i, i in ``index_set``, inside the boundary of the cross-polytope.

    Labels are ``0..d`` and ``v_i = d+1+i``. Phi_0 is the star of ``v_0``;
    Phi_i (1 <= i <= d) is the simplex on ``0..i-1, v_i`` joined with the
    pairs ``{j, v_j}`` for j > i; Phi_{d+1} is the facet ``0..d``.
    """
    idx = sorted(set(index_set))
    if not idx:
        raise EmptyIndexSet("I must be nonempty")
    if idx[0] < 0 or idx[-1] > d + 1:
        raise ValueError(f"indices must lie in 0..{d + 1}")
    facets = []
    for i in idx:
        if i == d + 1:
            facets.append(tuple(range(d + 1)))
            continue
        head = (d + 1,) if i == 0 else tuple(range(i)) + (d + 1 + i,)
        tails = [(j, d + 1 + j) for j in range(i + 1, d + 1)]
        facets.extend(head + t for t in itertools.product(*tails))
    return Complex(facets, reduced=True)


def _boundary_facets(cx: Complex) -> list[frozenset]:
    ridges: dict[frozenset, int] = {}
    for f in cx.facets:
        for v in f:
            r = f - {v}
            ridges[r] = ridges.get(r, 0) + 1
    return [r for r, n in ridges.items() if n == 1]


def _label(index_set) -> str:
    return "[" + ",".join(str(i) for i in sorted(index_set)) + "]"


@dataclass(eq=False)
class FlipTemplate:
    """One directed basic cross-flip: replace ``phi`` by ``complement``."""

    template_id: str
    d: int
    index_set: tuple[int, ...]
    complement_index_set: tuple[int, ...]
    phi: Complex
    complement: Complex
    boundary: Complex
    coloring: Coloring
    delta_f: tuple[int, ...]
    kind: str
    reverse_id: str = ""
    reverse_map: dict = field(default_factory=dict, repr=False)
    sufficient: bool = False

    def __repr__(self):
        return f"FlipTemplate({self.template_id}->{self.reverse_id}, {self.kind})"

    @property
    def name(self) -> str:
        return f"{self.template_id}->{self.reverse_id}"

    @cached_property
    def interior_vertices(self) -> frozenset:
        """Vertices of phi that disappear when the flip is applied."""
        return self.phi.vertex_set - self.complement.vertex_set

    @cached_property
    def new_vertices(self) -> tuple[int, ...]:
        return tuple(sorted(self.complement.vertex_set - self.phi.vertex_set))

    @cached_property
    def phi_faces(self) -> frozenset:
        return self.phi.all_faces()

    @cached_property
    def boundary_faces(self) -> frozenset:
        return self.boundary.all_faces()

    @cached_property
    def plan(self) -> "_Plan":
        return _Plan(self)


def _make_template(d, I, K, phi, comp, trivial, sufficient=False) -> FlipTemplate:
    boundary = Complex(_boundary_facets(phi) or [frozenset()])
    fp, fc = phi.f_vector, comp.f_vector
    delta = tuple(b - a for a, b in itertools.zip_longest(fp, fc, fillvalue=0))
    if trivial:
        kind = "trivial"
    else:
        kind = "up" if comp.num_vertices > phi.num_vertices else "down"
    return FlipTemplate(_label(I), d, tuple(sorted(I)), tuple(sorted(K)), phi, comp, boundary,
                        cross_polytope_coloring(d), delta, kind, sufficient=sufficient)


def sufficient_index_sets(d: int) -> list[tuple[int, ...]]:
    """Default generating set: J inside {1..d} with d in J, plus the reverse flips.

    There are 2^(d-1) such J, so 2^d directed flips in total.
    """
    rest = range(1, d)
    out = []
    for k in range(d):
        for extra in itertools.combinations(rest, k):
            out.append(tuple(sorted(extra + (d,))))
    return out


@lru_cache(maxsize=None)
def _catalog(d: int) -> tuple[tuple[FlipTemplate, ...], FlipTemplate]:
    if d < 1:
        raise ValueError("flips need d >= 1")
    universe = list(range(d + 2))
    subsets = [s for k in range(1, d + 2) for s in itertools.combinations(universe, k)]
    complexes = {s: phi_complex(s, d) for s in subsets}

    # group index sets into isomorphism classes; prefer representatives inside 0..d
    classes: list[list[tuple]] = []
    for s in sorted(subsets, key=lambda s: (d + 1 in s, len(s), s)):
        for cls in classes:
            if is_isomorphic(complexes[cls[0]], complexes[s]) is not None:
                cls.append(s)
                break
        else:
            classes.append([s])
    rep_of = {s: cls[0] for cls in classes for s in cls}

    def complement_of(s):
        return tuple(i for i in universe if i not in s)

    templates: dict[tuple, FlipTemplate] = {}
    trivial_rep = rep_of[(0,)]
    suff = set(sufficient_index_sets(d))
    for cls in classes:
        rep = cls[0]
        comp_literal = complement_of(rep)
        K = rep_of[comp_literal]
        is_suff = rep in suff or K in suff
        templates[rep] = _make_template(d, rep, K, complexes[rep], complexes[comp_literal],
                                        rep == trivial_rep, is_suff)
    for rep, t in templates.items():
        rev = templates[t.complement_index_set]
        t.reverse_id = rev.template_id
        t.reverse_map = is_isomorphic(rev.phi, t.complement)
    trivial = templates.pop(trivial_rep)
    ordered = sorted(templates.values(), key=lambda t: (len(t.phi), t.index_set))
    return tuple(ordered), trivial


def flip_catalog(d: int, sufficient_only: bool = False) -> list[FlipTemplate]:
    """All non-trivial basic cross-flips in dimension ``d``, both directions counted."""
    templates, _ = _catalog(d)
    if sufficient_only:
        return [t for t in templates if t.sufficient]
    return list(templates)


def trivial_template(d: int) -> FlipTemplate:
    return _catalog(d)[1]


def template_by_id(d: int, template_id: str) -> FlipTemplate:
    templates, trivial = _catalog(d)
    for t in templates + (trivial,):
        if t.template_id == template_id:
            return t
    raise KeyError(template_id)


# -- host structure -----------------------------------------------------------

class HostIndex:
    """Color-indexed facets and ridge adjacency of a balanced pseudomanifold."""

    def __init__(self, cx: Complex, coloring: Coloring):
        d = cx.dim
        self.complex = cx
        self.coloring = coloring
        self.d = d
        facets = []
        for f in cx.sorted_facets():
            row = [-1] * (d + 1)
            for v in f:
                c = coloring[v]
                if row[c] != -1:
                    raise ValueError(f"facet {f} is not rainbow under the coloring")
                row[c] = v
            facets.append(tuple(row))
        self.facets = facets
        self.sets = [frozenset(f) for f in facets]
        self.index = {s: i for i, s in enumerate(self.sets)}
        nbr = [[-1] * (d + 1) for _ in facets]
        ridges: dict[tuple, int] = {}
        for i, f in enumerate(facets):
            for c in range(d + 1):
                key = f[:c] + (-1,) + f[c + 1:]
                j = ridges.pop(key, None)
                if j is None:
                    ridges[key] = i
                    continue
                if j == -2:
                    raise NotPseudomanifold(f"ridge {key} lies in more than two facets")
                nbr[i][c] = j
                nbr[j][c] = i
                ridges[key] = -2
        self.nbr = nbr
        vf: dict[int, list[int]] = {}
        for i, f in enumerate(facets):
            for v in f:
                vf.setdefault(v, []).append(i)
        self.vertex_facets = vf
        self.count = {v: len(fs) for v, fs in vf.items()}

    def ball(self, seeds: Iterable[int], radius: int) -> dict[int, int]:
        dist = {s: 0 for s in seeds}
        frontier = list(dist)
        for r in range(1, radius + 1):
            nxt = []
            for u in frontier:
                for w in self.nbr[u]:
                    if w >= 0 and w not in dist:
                        dist[w] = r
                        nxt.append(w)
            frontier = nxt
        return dist


@dataclass(frozen=True, eq=False)
class Embedding:
    """Injective face-preserving map of a template's phi onto an induced subcomplex."""

    template: FlipTemplate
    vertex_map: tuple[tuple[int, int], ...]
    image: frozenset

    @cached_property
    def key(self) -> tuple:
        return (self.template.template_id, self.image)

    @cached_property
    def sort_key(self) -> tuple:
        return (self.template.template_id, tuple(sorted(tuple(sorted(f)) for f in self.image)))

    @cached_property
    def mapping(self) -> dict[int, int]:
        return dict(self.vertex_map)

    @cached_property
    def image_vertices(self) -> frozenset:
        return frozenset(v for _, v in self.vertex_map)

    @cached_property
    def facet_map(self) -> dict[frozenset, frozenset]:
        m = self.mapping
        return {f: frozenset(m[v] for v in f) for f in self.template.phi.facets}

    @cached_property
    def removed_vertices(self) -> frozenset:
        m = self.mapping
        return frozenset(m[v] for v in self.template.interior_vertices)

    def __eq__(self, other):
        if not isinstance(other, Embedding):
            return NotImplemented
        return self.template is other.template and self.vertex_map == other.vertex_map

    def __hash__(self):
        return hash((self.template.template_id, self.vertex_map))

    def __repr__(self):
        return f"Embedding({self.template.name}, {sorted(self.image_vertices)})"


class _Plan:
    """Precomputed walk over the template dual graph used by the matcher."""

    def __init__(self, t: FlipTemplate):
        d = t.d
        col = t.coloring
        tf = []
        for f in t.phi.sorted_facets():
            row = [0] * (d + 1)
            for v in f:
                row[col[v]] = v
            tf.append(tuple(row))
        index = {frozenset(f): i for i, f in enumerate(tf)}
        nbr = [[-1] * (d + 1) for _ in tf]
        for i, f in enumerate(tf):
            for c in range(d + 1):
                ridge = frozenset(f) - {f[c]}
                for j, g in enumerate(tf):
                    if j != i and ridge <= frozenset(g):
                        nbr[i][c] = j
        # root at a center of the dual graph so local rescans need a small radius
        ecc = []
        for s in range(len(tf)):
            dist = {s: 0}
            q = deque([s])
            while q:
                u = q.popleft()
                for w in nbr[u]:
                    if w >= 0 and w not in dist:
                        dist[w] = dist[u] + 1
                        q.append(w)
            ecc.append(max(dist.values()))
        root = min(range(len(tf)), key=lambda s: (ecc[s], s))
        self.radius = ecc[root]
        order = [root]
        pos = {root: 0}
        steps = []
        q = deque([root])
        while q:
            u = q.popleft()
            for c in range(d + 1):
                w = nbr[u][c]
                if w >= 0 and w not in pos:
                    pos[w] = len(order)
                    order.append(w)
                    steps.append((pos[u], c, tf[w][c]))
                    q.append(w)
        self.root = tf[root]
        self.steps = steps
        self.faces = t.phi_faces
        # a facet outside the image may only meet it in the boundary
        self.boundary_masks = frozenset(_mask(f) for f in t.boundary_faces)
        tvf = t.phi.vertex_facets
        self.exact = {tv: len(tvf[tv]) for tv in t.interior_vertices}
        self.at_least = {tv: len(tvf[tv]) for tv in t.phi.vertex_set}
        # facet-count window per template vertex, checked before anything else
        self.window = {tv: (n, self.exact.get(tv, 1 << 30)) for tv, n in self.at_least.items()}
        self.step_windows = [self.window[tv] for _, _, tv in self.steps]
        pnb = t.phi.neighbors
        self.non_edges = [(a, b) for a, b in itertools.combinations(sorted(t.phi.vertex_set), 2)
                          if b not in pnb[a]]
        autos = automorphisms(t.phi)
        self.automorphisms = [tuple(sorted(a.items())) for a in autos]
        # automorphisms fixing the root facet give the same image; keep one permutation per orbit
        slot = {tv: c for c, tv in enumerate(self.root)}
        stab = [tuple(slot[a[tv]] for tv in self.root) for a in autos
                if all(a[tv] in slot for tv in self.root)]
        self.root_perms = frozenset(
            p for p in itertools.permutations(range(d + 1))
            if all(p <= tuple(p[s[c]] for c in range(d + 1)) for s in stab))
        self.num_facets = len(tf)


def _mask(face) -> int:
    m = 0
    for v in face:
        m |= 1 << v
    return m


def _canonical_map(plan: _Plan, vmap: dict[int, int]) -> tuple[tuple[int, int], ...]:
    best = None
    for auto in plan.automorphisms:
        cand = tuple((tv, vmap[sv]) for tv, sv in auto)
        if best is None or cand < best:
            best = cand
    return best


def _induced(plan: _Plan, host: HostIndex, image: frozenset, inv: dict[int, int]) -> bool:
    """Every host facet outside the image meets it in a boundary face of the template."""
    masks = plan.boundary_masks
    facets = host.facets
    bits = {hv: 1 << tv for hv, tv in inv.items()}
    seen = set(image)
    for hv in inv:
        for fi in host.vertex_facets[hv]:
            if fi in seen:
                continue
            seen.add(fi)
            m = 0
            for x in facets[fi]:
                b = bits.get(x)
                if b:
                    m |= b
            if m not in masks:
                return False
    return True


def _meets_boundary_only(emb: Embedding, facets: Iterable[frozenset]) -> bool:
    masks = emb.template.plan.boundary_masks
    bits = {hv: 1 << tv for tv, hv in emb.vertex_map}
    for f in facets:
        if f in emb.image:
            continue
        m = 0
        for x in f:
            b = bits.get(x)
            if b:
                m |= b
        if m and m not in masks:
            return False
    return True


def _scan(template: FlipTemplate, host: HostIndex, roots: Iterable[int],
          out: dict | None = None) -> dict:
    plan = template.plan
    if out is None:
        out = {}
    seen_images: set[frozenset] = set()
    hfacets = host.facets
    nbr = host.nbr
    root = plan.root
    steps = plan.steps
    tid = template.template_id
    hnb = host.complex.neighbors
    count = host.count
    root_windows = [plan.window[tv] for tv in root]
    walk = list(zip(steps, plan.step_windows))
    slots = range(len(root))
    reps = plan.root_perms
    for h in roots:
        hf = hfacets[h]
        counts = [count[v] for v in hf]
        allowed = [[k for k in slots if lo <= counts[k] <= hi] for lo, hi in root_windows]
        for perm in itertools.product(*allowed):
            if perm not in reps:
                continue
            vmap = {tv: hf[perm[c]] for c, tv in enumerate(root)}
            used = set(hf)
            img = [h]
            ok = True
            for (parent, c, tv), (lo, hi) in walk:
                pc = perm[c]
                nh = nbr[img[parent]][pc]
                if nh < 0:
                    ok = False
                    break
                hv = hfacets[nh][pc]
                old = vmap.get(tv)
                if old is None:
                    if hv in used or not lo <= count[hv] <= hi:
                        ok = False
                        break
                    vmap[tv] = hv
                    used.add(hv)
                elif old != hv:
                    ok = False
                    break
                img.append(nh)
            if not ok:
                continue
            image_ids = frozenset(img)
            if image_ids in seen_images:
                continue
            seen_images.add(image_ids)
            image = frozenset(host.sets[i] for i in image_ids)
            key = (tid, image)
            if key in out:
                continue
            if any(vmap[b] in hnb[vmap[a]] for a, b in plan.non_edges):
                continue
            inv = {hv: tv for tv, hv in vmap.items()}
            if not _induced(plan, host, image_ids, inv):
                continue
            out[key] = Embedding(template, _canonical_map(plan, vmap), image)
    return out


def _check_host(cx: Complex, template: FlipTemplate):
    if cx.dim != template.d:
        raise DimMismatch(f"host has dimension {cx.dim}, template {template.d}")


def find_embeddings(cx: Complex, coloring: Coloring, template: FlipTemplate,
                    host: HostIndex | None = None) -> list[Embedding]:
    """Every induced copy of ``template.phi`` in ``cx``, once each, sorted."""
    _check_host(cx, template)
    if host is None:
        host = HostIndex(cx, coloring)
    found = _scan(template, host, range(len(host.facets)))
    return sorted(found.values(), key=lambda e: e.sort_key)


def full_scan(cx: Complex, coloring: Coloring, templates: Iterable[FlipTemplate],
              host: HostIndex | None = None) -> dict[tuple, Embedding]:
    """Embedding cache from scratch: ``Embedding.key -> Embedding``."""
    if host is None:
        host = HostIndex(cx, coloring)
    out: dict = {}
    for t in templates:
        _check_host(cx, t)
        _scan(t, host, range(len(host.facets)), out)
    return out


def refresh_cache(old: Complex, new: Complex, cache: dict, coloring: Coloring,
                  templates: Iterable[FlipTemplate], host: HostIndex | None = None) -> dict:
    """Update an embedding cache after ``old`` was turned into ``new`` by a flip.

    Embeddings away from the modified region are kept as they are; the
    region and a ball around it, as wide as each template's radius in the
    dual graph, are scanned again.
    """
    if host is None:
        host = HostIndex(new, coloring)
    changed = old.facets ^ new.facets
    touched = frozenset().union(*changed) if changed else frozenset()
    # removing facets cannot spoil an embedding that survives; only added facets can
    added = new.facets - old.facets
    out: dict = {}
    new_facets = new.facets
    for key, emb in cache.items():
        if not emb.image <= new_facets:
            continue
        if emb.image_vertices & touched and not _meets_boundary_only(emb, added):
            continue
        out[key] = emb
    seeds = {fi for v in touched if v in host.vertex_facets for fi in host.vertex_facets[v]}
    templates = list(templates)
    if seeds and templates:
        radius = max(t.plan.radius for t in templates)
        dist = host.ball(seeds, radius)
        for t in templates:
            roots = sorted(fi for fi, r in dist.items() if r <= t.plan.radius)
            _scan(t, host, roots, out)
    return out


# -- applying flips -----------------------------------------------------------

@dataclass(frozen=True)
class FlipResult:
    complex: Complex
    coloring: Coloring
    embedding: Embedding
    full_map: dict
    removed_facets: frozenset
    added_facets: frozenset
    removed_vertices: frozenset
    new_vertices: tuple

    def inverse_embedding(self) -> Embedding:
        """The embedding of the reverse flip that undoes this one."""
        t = self.embedding.template
        rev = template_by_id(t.d, t.reverse_id)
        vmap = {r: self.full_map[lit] for r, lit in t.reverse_map.items()}
        return Embedding(rev, _canonical_map(rev.plan, vmap), self.added_facets)


def is_valid_embedding(cx: Complex, emb: Embedding) -> bool:
    """Image present, and every other facet meets it in a boundary face of the template."""
    if not emb.image <= cx.facets:
        return False
    inv = {hv: tv for tv, hv in emb.vertex_map}
    faces = emb.template.boundary_faces
    vf = cx.vertex_facets
    for hv in inv:
        for f in vf.get(hv, ()):
            if f in emb.image:
                continue
            if frozenset(inv[x] for x in f if x in inv) not in faces:
                return False
    return True


def flip(cx: Complex, coloring: Coloring, emb: Embedding, check: bool = True) -> FlipResult:
    t = emb.template
    if cx.dim != t.d:
        raise DimMismatch(f"host has dimension {cx.dim}, template {t.d}")
    if check and not is_valid_embedding(cx, emb):
        raise StaleEmbedding(f"{emb!r} is not an induced copy in this complex")
    vmap = emb.mapping
    fresh = cx.fresh_labels(len(t.new_vertices))
    full = dict(vmap)
    full.update(zip(t.new_vertices, fresh))
    perm = {}
    tcol = t.coloring
    for tv, hv in vmap.items():
        perm[tcol[tv]] = coloring[hv]
    added = frozenset(frozenset(full[v] for v in f) for f in t.complement.facets)
    facets = (cx.facets - emb.image) | added
    removed_vertices = emb.removed_vertices
    assignment = {v: c for v, c in coloring.assignment.items() if v not in removed_vertices}
    for tv, hv in zip(t.new_vertices, fresh):
        assignment[hv] = perm[tcol[tv]]
    new_cx = Complex(facets, next_label=cx.next_label + len(fresh), reduced=True)
    return FlipResult(new_cx, Coloring(assignment, coloring.num_colors), emb, full,
                      emb.image, added, removed_vertices, tuple(fresh))


def apply_flip(cx: Complex, coloring: Coloring, emb: Embedding) -> tuple[Complex, Coloring]:
    r = flip(cx, coloring, emb)
    return r.complex, r.coloring
