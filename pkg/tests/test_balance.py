import pytest

from crossflip.balance import (Coloring, coloring_is_forced, cross_polytope_coloring,
                               find_coloring, format_coloring, is_proper, parse_coloring)
from crossflip.core import Complex, barycentric_subdivision, cross_polytope_boundary, standard_sphere
from crossflip.errors import NotPure


def test_cross_polytope_coloring_is_proper():
    for d in range(1, 4):
        cx = cross_polytope_boundary(d)
        assert is_proper(cx, cross_polytope_coloring(d))
        found = find_coloring(cx)
        assert found is not None and found.class_sizes == (2,) * (d + 1)


def test_simplex_boundary_is_not_balanced():
    assert find_coloring(standard_sphere(2)) is None


def test_subdivision_is_balanced_by_dimension():
    bd, label = barycentric_subdivision(standard_sphere(2), with_map=True)
    col = Coloring({i: len(f) - 1 for f, i in label.items()}, 3)
    assert is_proper(bd, col)
    assert find_coloring(bd).equivalent(col)


def test_coloring_is_forced_on_connected_dual_graph():
    cx = cross_polytope_boundary(2)
    assert coloring_is_forced(cx)
    a = find_coloring(cx)
    assert a.equivalent(cross_polytope_coloring(2))


def test_disconnected_components_are_aligned():
    # two triangles sharing a vertex: still properly 3-colorable
    cx = Complex([[0, 1, 2], [0, 3, 4]])
    col = find_coloring(cx)
    assert col is not None and is_proper(cx, col)


def test_non_pure_rejected():
    with pytest.raises(NotPure):
        find_coloring(Complex([[0, 1, 2], [3, 4]]))


def test_canonical_orders_classes_by_size():
    col = Coloring({0: 2, 1: 2, 2: 0, 3: 1, 4: 1}, 3).canonical()
    assert col.class_sizes == (1, 2, 2)


def test_coloring_text_round_trip():
    col = cross_polytope_coloring(2)
    assert parse_coloring(format_coloring(col).splitlines(), 3) == col
