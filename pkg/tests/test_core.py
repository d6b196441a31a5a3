import itertools

import pytest
from hypothesis import given, settings, strategies as st

from crossflip.core import (Complex, barycentric_subdivision, cone, cross_polytope_boundary,
                            dual_graph, induced_subcomplex, is_induced, is_pseudomanifold, join,
                            link, make_complex, simplex, standard_sphere, star, suspension)
from crossflip.errors import FaceNotPresent, LabelCollision, NotPure, VoidComplex

from oracles import brute_f_vector


def test_facets_are_an_antichain():
    cx = Complex([[0, 1, 2], [0, 1], [2, 3], [3]])
    assert cx.sorted_facets() == [(0, 1, 2), (2, 3)]
    assert not cx.is_pure


def test_empty_input_is_rejected():
    with pytest.raises(VoidComplex):
        make_complex([])


def test_negative_labels_are_rejected():
    with pytest.raises(ValueError):
        make_complex([[0, -1]])


def test_cross_polytope_f_vectors():
    assert cross_polytope_boundary(1).f_vector == (1, 4, 4)
    assert cross_polytope_boundary(2).f_vector == (1, 6, 12, 8)
    assert cross_polytope_boundary(3).f_vector == (1, 8, 24, 32, 16)


def test_simplex_boundary_subdivisions():
    assert barycentric_subdivision(standard_sphere(2)).f_vector == (1, 14, 36, 24)
    assert barycentric_subdivision(standard_sphere(3)).f_vector == (1, 30, 150, 240, 120)


def test_link_and_star_of_cross_polytope_vertex():
    cx = cross_polytope_boundary(3)
    lk = link(cx, [0])
    assert lk.f_vector == (1, 6, 12, 8)
    assert star(cx, [0]).f_vector[-1] == 8
    with pytest.raises(FaceNotPresent):
        link(cx, [0, 4])


def test_link_of_empty_face_is_the_complex():
    cx = standard_sphere(2)
    assert link(cx, []) == cx


def test_join_cone_suspension():
    a, b = simplex([0, 1]), simplex([2])
    assert join(a, b).f_vector == (1, 3, 3, 1)
    with pytest.raises(LabelCollision):
        join(a, simplex([1]))
    assert cone(standard_sphere(1)).f_vector == (1, 4, 6, 3)
    s = suspension(cross_polytope_boundary(1))
    assert s.f_vector == cross_polytope_boundary(2).f_vector


def test_dual_graph_of_cross_polytope():
    g = dual_graph(cross_polytope_boundary(2))
    assert len(g.nodes) == 8 and len(g.edges) == 12
    assert g.is_strongly_connected and g.is_pseudomanifold


def test_dual_graph_needs_purity():
    with pytest.raises(NotPure):
        dual_graph(Complex([[0, 1, 2], [2, 3]]))


def test_two_spheres_sharing_a_vertex_are_not_a_pseudomanifold():
    a = standard_sphere(2)
    b = a.relabel({0: 0, 1: 4, 2: 5, 3: 6})
    assert not is_pseudomanifold(Complex(list(a.facets) + list(b.facets)))


def test_induced_subcomplex():
    cx = cross_polytope_boundary(2)
    sub = induced_subcomplex(cx, [0, 1, 3])
    assert sub.sorted_facets() == [(0, 1), (1, 3)]  # 0 and 3 are antipodal
    assert is_induced(cx, sub)


facet_lists = st.lists(st.sets(st.integers(0, 7), min_size=1, max_size=4), min_size=1, max_size=6)


@given(facet_lists)
@settings(max_examples=80)
def test_f_vector_matches_brute_force(fl):
    cx = make_complex(fl)
    assert cx.f_vector == brute_f_vector(cx.facets)


@given(facet_lists)
@settings(max_examples=60)
def test_link_faces_are_disjoint_and_complete(fl):
    cx = make_complex(fl)
    for face in list(cx.all_faces())[:10]:
        if not face:
            continue
        lk = link(cx, face)
        for g in lk.all_faces():
            assert not (g & face) and cx.contains_face(g | face)


@given(st.integers(1, 3))
def test_subdivision_has_one_vertex_per_face(d):
    base = standard_sphere(d)
    bd = barycentric_subdivision(base)
    assert bd.num_vertices == sum(base.f_vector[1:])
    assert bd.f_vector[-1] == len(base.facets) * len(list(itertools.permutations(range(d + 1))))
