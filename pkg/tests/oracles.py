"""Independent reference computations used to cross-check the library."""
from __future__ import annotations

import itertools

import networkx as nx
import numpy as np
from networkx.algorithms import isomorphism as nxiso


def all_faces(facets):
    out = set()
    for f in facets:
        f = tuple(sorted(f))
        for k in range(len(f) + 1):
            out.update(frozenset(c) for c in itertools.combinations(f, k))
    return out


def brute_f_vector(facets):
    faces = all_faces(facets)
    top = max(len(f) for f in faces)
    return tuple(sum(1 for f in faces if len(f) == k) for k in range(top + 1))


def rank_mod2(matrix: np.ndarray) -> int:
    m = matrix.copy() % 2
    rows, cols = m.shape
    r = 0
    for c in range(cols):
        pivot = next((i for i in range(r, rows) if m[i, c]), None)
        if pivot is None:
            continue
        m[[r, pivot]] = m[[pivot, r]]
        for i in range(rows):
            if i != r and m[i, c]:
                m[i] ^= m[r]
        r += 1
        if r == rows:
            break
    return r


def dense_betti(facets):
    """Unreduced mod-2 Betti numbers from dense boundary matrices."""
    faces = all_faces(facets)
    by_dim = {}
    for f in faces:
        if f:
            by_dim.setdefault(len(f) - 1, []).append(f)
    d = max(by_dim)
    ranks = {}
    for k in range(1, d + 1):
        lower = {f: i for i, f in enumerate(by_dim[k - 1])}
        m = np.zeros((len(by_dim[k]), len(lower)), dtype=np.uint8)
        for i, f in enumerate(by_dim[k]):
            for v in f:
                m[i, lower[f - {v}]] = 1
        ranks[k] = rank_mod2(m)
    return tuple(len(by_dim[k]) - ranks.get(k, 0) - ranks.get(k + 1, 0) for k in range(d + 1))


def skeleton_graph(facets):
    g = nx.Graph()
    for f in facets:
        g.add_nodes_from(f)
        g.add_edges_from(itertools.combinations(f, 2))
    return g


def nx_embedding_images(host_facets, phi_facets, boundary_faces):
    """Images of copies of phi in the host, found by induced graph matching on 1-skeleta.

    A vertex-induced copy of the skeleton is accepted when the facets map to
    host facets and every other host facet meets the image in a boundary face.
    """
    host_facets = [frozenset(f) for f in host_facets]
    host_set = set(host_facets)
    phi_facets = [frozenset(f) for f in phi_facets]
    gm = nxiso.GraphMatcher(skeleton_graph(host_facets), skeleton_graph(phi_facets))
    images = set()
    for m in gm.subgraph_isomorphisms_iter():
        inv = {t: h for h, t in m.items()}
        image = frozenset(frozenset(inv[v] for v in f) for f in phi_facets)
        if image in images or not image <= host_set:
            continue
        ok = True
        for f in host_facets:
            if f in image:
                continue
            meet = frozenset(m[v] for v in f if v in m)
            if meet and meet not in boundary_faces:
                ok = False
                break
        if ok:
            images.add(image)
    return images


def brute_shelling(facets_in_order):
    """Pure (d-1)-dimensional intersection with the earlier facets, computed face by face."""
    seq = [frozenset(f) for f in facets_in_order]
    d = len(seq[0]) - 1
    for i in range(1, len(seq)):
        earlier = all_faces(seq[:i])
        mine = all_faces([seq[i]])
        inter = earlier & mine
        maximal = [f for f in inter if not any(f < g for g in inter)]
        if not maximal or any(len(f) != d for f in maximal):
            return False
    return True


def degree_census(facets):
    g = skeleton_graph(facets)
    return sorted(d for _, d in g.degree())
