import itertools

import pytest

from crossflip.balance import cross_polytope_coloring, find_coloring, is_proper
from crossflip.constructions import (Gluing, build_bundle_double, connected_sum,
                                     expected_sum_fvector, handle_addition, s2_times_s1_16,
                                     s2_twisted_s1_12, stacked_cross_polytopal_sphere,
                                     suspension_tower, walkup_equality_gap)
from crossflip.core import Complex, cross_polytope_boundary, standard_sphere
from crossflip.errors import BadGluing, ColorMismatch
from crossflip.fixtures import get
from crossflip.isomorphism import is_isomorphic
from crossflip.topology import betti_f2, is_orientable

from oracles import brute_f_vector


def shifted(cx, k):
    return cx.relabel({v: v + k for v in cx.vertex_set})


def test_sum_of_two_cross_polytopes():
    s, col = stacked_cross_polytopal_sphere(3, 2)
    assert s.f_vector == (1, 12, 42, 60, 30)
    assert is_proper(s, col)


def test_sum_of_simplex_boundaries():
    for d in (1, 2, 3):
        a, b = standard_sphere(d), shifted(standard_sphere(d), 100)
        g = Gluing.make(sorted(a.facets, key=sorted)[0], sorted(b.facets, key=sorted)[0])
        assert connected_sum(a, b, g).num_vertices == d + 3


def test_stacked_sphere_vertex_count():
    for d, copies in ((2, 3), (3, 3)):
        s, col = stacked_cross_polytopal_sphere(d, copies)
        assert s.num_vertices == (d + 1) * (copies + 1)
        assert betti_f2(s).reduced[-1] == 1


@pytest.mark.parametrize("pair", [p for d in "23" for p in itertools.combinations_with_replacement(
    ["sphere" + d, "cross" + d], 2)])
def test_sum_f_vector_formula(pair):
    make = {"sphere2": lambda: standard_sphere(2), "cross2": lambda: cross_polytope_boundary(2),
            "sphere3": lambda: standard_sphere(3), "cross3": lambda: cross_polytope_boundary(3)}
    a, b = make[pair[0]](), shifted(make[pair[1]](), 100)
    g = Gluing.make(min(a.facets, key=sorted), min(b.facets, key=sorted))
    cx = connected_sum(a, b, g)
    assert cx.f_vector == expected_sum_fvector(a.f_vector, b.f_vector) == brute_f_vector(cx.facets)


def test_gluing_must_be_bijective():
    with pytest.raises(BadGluing):
        Gluing.make([0, 1, 2], [5, 6, 7], {0: 5, 1: 5, 2: 7})


def test_colored_sum_rejects_mismatch():
    a, ka = cross_polytope_boundary(2), cross_polytope_coloring(2)
    b = shifted(a, 10)
    kb = cross_polytope_coloring(2)
    kb = type(kb)({v + 10: c for v, c in kb.assignment.items()}, 3)
    g = Gluing([frozenset({0, 1, 2})][0], frozenset({10, 11, 12}), {0: 11, 1: 10, 2: 12})
    with pytest.raises(ColorMismatch):
        connected_sum(a, b, g, (ka, kb))


def test_handle_on_adjacent_facets_fails():
    s, col = stacked_cross_polytopal_sphere(3, 3)
    F = min(s.facets, key=sorted)
    G = next(f for f in s.facets if len(f & F) == 3)
    with pytest.raises(BadGluing):
        handle_addition(s, Gluing.make(F, G, colorings=(col, col)), col)


def test_twisted_bundle_twelve():
    cx, col, names = s2_twisted_s1_12()
    assert cx.f_vector == (1, 12, 54, 84, 42)
    assert is_proper(cx, col)
    assert betti_f2(cx).reduced[1] == 1
    assert not is_orientable(cx)


def test_handle_raises_first_betti_by_one():
    s, col = stacked_cross_polytopal_sphere(3, 3)
    assert betti_f2(s).reduced[1] == 0
    twelve, _, _ = s2_twisted_s1_12()
    assert betti_f2(twelve).reduced[1] == 1
    assert s.num_vertices - 4 == twelve.num_vertices
    assert s.f_vector[-1] - 2 == twelve.f_vector[-1]


def test_orientable_bundle_sixteen():
    cx, col, _ = s2_times_s1_16()
    assert cx.f_vector == (1, 16, 72, 112, 56)
    assert is_orientable(cx)
    assert betti_f2(cx).reduced[1] == 1


@pytest.mark.parametrize("kind,orientable", [("twisted", False), ("orientable", True)])
def test_bundle_doubles(kind, orientable):
    cx, col, names = build_bundle_double(kind)
    assert cx.f_vector == (1, 16, 84, 136, 68)
    beta1 = betti_f2(cx).reduced[1]
    assert beta1 == 2
    assert walkup_equality_gap(cx, beta1) == 0
    assert is_proper(cx, col) and find_coloring(cx) is not None
    assert is_orientable(cx) == orientable
    assert names["x1"] in cx.vertex_set


def test_equality_gap_examples():
    assert walkup_equality_gap(cross_polytope_boundary(3), 0) == 0
    rp3 = get("rp3_16").load()
    assert walkup_equality_gap(rp3, betti_f2(rp3).reduced[1]) == 32


def test_suspensions():
    two = cross_polytope_boundary(2)
    assert is_isomorphic(suspension_tower(two, 1), cross_polytope_boundary(3)) is not None
    big = suspension_tower(get("rp3_16").load(), 2)
    assert big.num_vertices == 20 and big.dim == 5
    col = cross_polytope_coloring(2)
    tower, tcol = suspension_tower(two, 2, col)
    assert is_proper(tower, tcol)
