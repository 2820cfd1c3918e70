from itertools import product

import pytest

from src.errors import UnsupportedCornerConfiguration
from src.schemas import StratumKind
from src.tools.polytope_core import convex_hull, normalized_volume, prism, pyramid, truncated_prism
from src.tools.surface_weights import (
    assemble_surface_weights,
    prism_weights,
    pyramid_weights,
    stratify_surface,
    truncated_prism_top_weight,
)


def test_prism_closed_form():
    assert prism_weights(2, 2, 2).descending() == (4, 6, 28, 6, 4)
    assert prism_weights(2, 2, 2).total == 48
    assert prism_weights(1, 1, 1).descending() == (1, 0, 4, 0, 1)


def test_pyramid_closed_form():
    w = pyramid_weights(2, 2, 3)
    assert (w.mult[3], w.mult[2]) == (2, 21)
    assert w.total == 2 * 2 * 2 * 3


@pytest.mark.parametrize("sides, expected", [
    ((3, 4, 5), 10),
    ((2, 3), 4),
    ((1, 1, 1, 1, 1), 1),
])
def test_truncated_prism_top_weight(sides, expected):
    assert truncated_prism_top_weight(sides) == expected


def test_top_weight_rejects_short_input():
    with pytest.raises(ValueError):
        truncated_prism_top_weight((3,))


@pytest.mark.parametrize("a, b, c", list(product(range(1, 5), repeat=3)))
def test_engine_matches_prism_closed_form(a, b, c):
    assert assemble_surface_weights(prism((a, b, c))).mult == prism_weights(a, b, c).mult


@pytest.mark.parametrize("a, b, c", [(2, 2, 1), (2, 2, 2), (2, 2, 3), (2, 3, 1), (2, 3, 3), (3, 3, 1), (3, 2, 5)])
def test_engine_matches_pyramid_closed_form(a, b, c):
    assert assemble_surface_weights(pyramid(a, b, c)).mult == pyramid_weights(a, b, c).mult


@pytest.mark.parametrize("sides", [(2, 2, 2), (2, 3, 4), (3, 4, 5), (4, 4, 4)])
def test_truncated_prism_weights(sides):
    a, b, c = sides
    s, p = a + b + c, a * b + b * c + c * a
    q = p - 2 * s + 3
    weights = assemble_surface_weights(truncated_prism(sides, (1, 1, 1)))
    assert weights.ascending() == (s - 3, 2 * q, 6 * a * b * c - 4 * p + 6 * s - 8, 2 * q, s - 2)
    assert weights.mult[4] == truncated_prism_top_weight(sides)
    assert weights.total == 6 * a * b * c - 1


def test_top_weight_ladder_is_corner_independent():
    for corner in [(1, 1, 1), (2, 1, 1), (1, 2, 3)]:
        weights = assemble_surface_weights(truncated_prism((3, 4, 5), corner))
        assert weights.mult[4] == 10
        assert weights.total == normalized_volume(truncated_prism((3, 4, 5), corner))


def test_strata_cover_all_boundary_patterns():
    strata = stratify_surface(prism((2, 2, 2)))
    assert strata[0].kind == StratumKind.CODIM0
    # torus + 26 boundary patterns, the all-torus pattern is the codim-0 entry
    assert len(strata) == 27
    kinds = {s.infinite: s.kind for s in strata if not s.zero}
    assert kinds[(0, 1)] == StratumKind.EDGE_POINTS
    assert kinds[(0, 1, 2)] == StratumKind.SINGLE_TERM


def test_uncovered_corner():
    simplex = convex_hull([(0, 0, 0), (3, 0, 0), (0, 3, 0), (0, 0, 3)])
    with pytest.raises(UnsupportedCornerConfiguration):
        assemble_surface_weights(simplex)


def test_non_surface_rejected(unit_square):
    with pytest.raises(UnsupportedCornerConfiguration):
        stratify_surface(unit_square)
