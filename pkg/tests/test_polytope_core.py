from fractions import Fraction
from math import factorial, prod

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from src.errors import DegenerateHull, InvalidInput, UnsupportedDimension
from src.schemas import PolytopeFamily
from src.tools.exact_linalg import det, minors_gcd, rank, sub
from src.tools.polytope_core import (
    build_family,
    convex_hull,
    face_volumes,
    family_normalized_volume,
    load_polytope,
    normalized_volume,
    points_on_face,
    polytope_summary,
    prism,
    pyramid,
    simplices,
    truncated_prism,
)


def test_hull_drops_point_on_edge():
    P = convex_hull([(0, 2), (1, 0), (3, 4), (2, 2)])
    assert set(P.vertices) == {(0, 2), (1, 0), (3, 4)}
    edge = next(e for e in P.faces[1] if {P.vertices[i] for i in e.vertex_ids} == {(1, 0), (3, 4)})
    assert points_on_face(P, edge, [(2, 2), (0, 2)]) == [0]


def test_unit_square_faces(unit_square):
    assert len(unit_square.vertices) == 4
    assert len(unit_square.faces[1]) == 4
    assert len(unit_square.faces[2]) == 1


def test_collinear_points_are_degenerate():
    with pytest.raises(DegenerateHull):
        convex_hull([(0, 0), (1, 1), (2, 2)])


def test_lower_dimensional_hull_allowed_on_request():
    P = convex_hull([(0, 0), (1, 1), (2, 2)], full_dimensional=False)
    assert P.affine_dim == 1
    assert set(P.vertices) == {(0, 0), (2, 2)}


def test_empty_and_ragged_input():
    with pytest.raises(InvalidInput):
        convex_hull([])
    with pytest.raises(InvalidInput):
        convex_hull([(0, 0), (1, 0, 0)])


def test_hull_dimension_limit():
    points = [tuple(1 if i == j else 0 for i in range(7)) for j in range(7)] + [(0,) * 7]
    with pytest.raises(UnsupportedDimension):
        convex_hull(points)


@pytest.mark.parametrize("points, expected", [
    ([(0, 3), (1, 1), (3, 0)], 3),
    ([(0, 0), (1, 0), (0, 1)], 1),
    ([(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)], 1),
    ([(0, 0, 0, 0), (1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)], 1),
])
def test_normalized_volume(points, expected):
    assert normalized_volume(convex_hull(points)) == expected


def test_prism_volume_and_face_data():
    P = prism((2, 3, 4))
    assert normalized_volume(P) == 144
    fv = face_volumes(P)
    assert fv.U == (Fraction(8), Fraction(36), Fraction(52), Fraction(24))
    assert (fv.V, fv.E, fv.F, fv.W1) == (8, 12, 6, 24)


def test_pyramid_face_data():
    a, b, c = 2, 3, 5
    fv = face_volumes(pyramid(a, b, c))
    assert fv.U == (Fraction(5), Fraction(2 * a + 2 * b + 4), Fraction(a * b + a + b), Fraction(a * b * c, 3))
    assert (fv.E, fv.F, fv.W1) == (8, 5, 16)


def test_pyramid_rejects_non_primitive_sides():
    with pytest.raises(InvalidInput):
        pyramid(3, 2, 2)  # gcd(c, a - 1) = 2


def test_triangle_face_data(thin_triangle):
    fv = face_volumes(thin_triangle)
    assert fv.U == (Fraction(3), Fraction(5), Fraction(3, 2))


@pytest.mark.parametrize("family", [
    PolytopeFamily(family="prism", sides=(2, 3, 4)),
    PolytopeFamily(family="pyramid", sides=(2, 3, 5)),
    PolytopeFamily(family="truncated_prism", sides=(3, 4, 5), corner=(1, 1, 1)),
    PolytopeFamily(family="truncated_prism", sides=(2, 3), corner=(1, 1)),
])
def test_family_volume_matches_hull(family):
    assert normalized_volume(build_family(family)) == family_normalized_volume(family)


def test_truncated_prism_volume():
    assert normalized_volume(truncated_prism((3, 4, 5), (1, 1, 1))) == 359


def test_load_polytope_shapes():
    P = load_polytope({"dim": 2, "vertices": [[0, 0], [1, 0], [0, 1]]})
    assert normalized_volume(P) == 1
    assert load_polytope({"family": "prism", "sides": [1, 2]}).family.sides == (1, 2)
    with pytest.raises(InvalidInput):
        load_polytope({"dim": 3, "vertices": [[0, 0], [1, 0], [0, 1]]})
    with pytest.raises(InvalidInput):
        load_polytope({"dim": 2})


def test_summary_of_cube():
    summary = polytope_summary(prism((1, 1, 1)))
    assert summary["f_vector"] == [8, 12, 6, 1]
    assert summary["normalized_volume"] == 6


def test_exact_linalg_basics():
    assert det([[2, 0, 0], [0, 3, 0], [1, 1, 4]]) == 24
    assert rank([[1, 2], [2, 4]]) == 1
    assert minors_gcd([[2, 4]]) == 2
    assert minors_gcd([[1, 0, 0], [0, 2, 0]]) == 2


@settings(max_examples=25, deadline=None)
@given(st.lists(st.integers(min_value=1, max_value=5), min_size=2, max_size=3))
def test_box_volume_is_factorial_times_product(sides):
    assert normalized_volume(prism(sides)) == factorial(len(sides)) * prod(sides)


def _simplex_volume_sum(P):
    return sum(abs(det([sub(P.vertices[i], P.vertices[s[0]]) for i in s[1:]])) for s in simplices(P))


def _hull_or_skip(points):
    try:
        return convex_hull(points)
    except DegenerateHull:
        assume(False)


@settings(max_examples=60)
@given(st.lists(st.tuples(st.integers(-6, 6), st.integers(-6, 6)), min_size=3, max_size=10, unique=True))
def test_planar_volume_is_decomposition_independent(points):
    P = _hull_or_skip(points)
    volume = normalized_volume(P)
    assert _simplex_volume_sum(P) == volume
    # reflection reverses the vertex order, so the triangulation is pulled from another vertex
    mirrored = convex_hull([(-x, -y) for x, y in points])
    assert normalized_volume(mirrored) == volume
    twice_area = sum(p[0] * q[1] - q[0] * p[1] for p, q in zip(P.vertices, P.vertices[1:] + P.vertices[:1]))
    assert abs(twice_area) == volume


@settings(max_examples=30)
@given(st.lists(st.tuples(st.integers(-3, 3), st.integers(-3, 3), st.integers(-3, 3)),
                min_size=4, max_size=8, unique=True))
def test_solid_volume_is_decomposition_independent(points):
    P = _hull_or_skip(points)
    volume = normalized_volume(P)
    assert _simplex_volume_sum(P) == volume
    assert normalized_volume(convex_hull([(-x, -y, -z) for x, y, z in points])) == volume
    # a unimodular shear keeps the volume and reorders the vertices
    sheared = convex_hull([(x + 2 * y - z, y + z, z) for x, y, z in points])
    assert normalized_volume(sheared) == volume


def _is_simple(P):
    return all(sum(i in facet.vertex_ids for facet in P.facets) == 3 for i in range(len(P.vertices)))


@settings(max_examples=30)
@given(
    st.tuples(st.integers(2, 6), st.integers(2, 6), st.integers(2, 6)),
    st.tuples(st.integers(1, 5), st.integers(1, 5), st.integers(1, 5)),
)
def test_simple_truncated_prisms_have_three_facets_per_vertex(sides, corner):
    assume(all(a < b for a, b in zip(corner, sides)))
    P = truncated_prism(sides, corner)
    fv = face_volumes(P)
    assert _is_simple(P)
    assert fv.W1 == 3 * fv.U[0]


@settings(max_examples=30)
@given(st.lists(st.tuples(st.integers(-4, 4), st.integers(-4, 4), st.integers(-4, 4)),
                min_size=4, max_size=4, unique=True))
def test_tetrahedra_have_three_facets_per_vertex(points):
    P = _hull_or_skip(points)
    fv = face_volumes(P)
    assert (fv.V, fv.F) == (4, 4)
    assert fv.W1 == 3 * fv.U[0] == 12
