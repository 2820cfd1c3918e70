from fractions import Fraction
from itertools import product
from math import factorial, sqrt

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from src.errors import DegenerateHull, InsufficientMultiplicity, InvalidHodgeVector, NegativeHodgeNumber, UnsupportedN
from src.schemas import DistributionMode
from src.tools import hodge_eulerian as he
from src.tools.hodge_eulerian import (
    adjoint_hodge,
    analytic_bound_check,
    beta_lemma_report,
    check_conditions,
    eulerian_closed_form,
    eulerian_deviation,
    eulerian_distribution,
    eulerian_number,
    eulerian_row,
    hodge_numbers,
    ideal_adjoint,
    t_g,
)
from src.tools.polytope_core import convex_hull, truncated_prism


# ---------------------------------------------------------------------------
# Eulerian numbers
# ---------------------------------------------------------------------------

def test_small_eulerian_numbers():
    assert eulerian_number(3, 1) == 4
    assert eulerian_number(4, 1) == 11
    assert all(eulerian_number(n, 0) == 1 for n in range(1, 12))
    assert eulerian_row(4) == (1, 11, 11, 1)


def test_eulerian_out_of_range():
    with pytest.raises(ValueError):
        eulerian_number(3, 3)


@pytest.mark.parametrize("n", range(1, 15))
def test_recurrence_matches_closed_form(n):
    row = eulerian_row(n)
    assert sum(row) == factorial(n)
    assert row == tuple(eulerian_closed_form(n, k) for k in range(n))
    assert row == row[::-1]


# ---------------------------------------------------------------------------
# Hodge numbers
# ---------------------------------------------------------------------------

def test_unit_square_classes(unit_square):
    table = hodge_numbers(unit_square, 2, (1, 1))
    assert table.h == {0: 1, 1: 1}
    assert table.total == 2
    assert not table.corrected

    table = hodge_numbers(unit_square, 2, (0, 1))
    assert table.h == {0: 0, 1: 2}


def test_trivial_class_gets_torus_correction(unit_square):
    table = hodge_numbers(unit_square, 1, (0, 0))
    assert table.corrected
    assert table.h == {0: 2, 1: 2}
    assert hodge_numbers(unit_square, 1, (0, 0), torus_correction=False).h == {0: 0, 1: 1}


def test_negative_hodge_number(unit_square, monkeypatch):
    monkeypatch.setattr(he, "alternating_counts", lambda *args, **kwargs: {0: 1, 1: -1})
    with pytest.raises(NegativeHodgeNumber):
        hodge_numbers(unit_square, 2, (1, 1))


def test_eulerian_deviation_vanishes_on_square(unit_square):
    assert eulerian_deviation(unit_square, 20, (1, 1)) == 0


@settings(max_examples=20)
@given(
    st.lists(st.tuples(st.integers(0, 3), st.integers(0, 3)), min_size=3, max_size=6, unique=True),
    st.integers(1, 4),
)
def test_classes_partition_the_plain_count(points, m):
    try:
        P = convex_hull(points)
    except DegenerateHull:
        assume(False)
    by_class = [he.alternating_counts(P, m, lam) for lam in product(range(m), repeat=2)]
    plain = he.alternating_counts(P, m, None)
    assert {q: sum(h[q] for h in by_class) for q in plain} == plain


@pytest.mark.slow
@pytest.mark.parametrize("m", [2, 3])
def test_deviation_shrinks_along_truncated_prism_ladder(m):
    deviations = [
        eulerian_deviation(truncated_prism((side, side + 1, side + 2), (1, 1, 1)), m, (1, 1, 1))
        for side in (4, 6, 8)
    ]
    assert deviations[0] >= deviations[1] >= deviations[2]


# ---------------------------------------------------------------------------
# Descent distribution
# ---------------------------------------------------------------------------

def test_distribution_n2():
    dist = eulerian_distribution(2)
    assert dist.beta == (Fraction(1, 4), Fraction(1, 2), Fraction(1, 4))
    assert dist.beta_at(5) == 0


@pytest.mark.parametrize("n", [1, 2, 5, 30])
def test_distribution_sums_to_one(n):
    dist = eulerian_distribution(n)
    assert sum(dist.beta) == 1
    assert dist.beta == dist.beta[::-1]


def test_scaled_matches_exact():
    exact = eulerian_distribution(60, DistributionMode.EXACT)
    scaled = eulerian_distribution(60, DistributionMode.SCALED)
    assert [float(x) for x in exact.beta] == pytest.approx(list(scaled.beta), abs=1e-12)


def test_mode_limits():
    with pytest.raises(UnsupportedN):
        eulerian_distribution(0)
    with pytest.raises(UnsupportedN):
        eulerian_distribution(2001, DistributionMode.EXACT)
    with pytest.raises(UnsupportedN):
        eulerian_distribution(50001, DistributionMode.SCALED)


def test_beta_zero_bound_at_100():
    report = beta_lemma_report(eulerian_distribution(100))
    assert report.upper_holds
    assert float(report.beta0) <= sqrt(3) / sqrt(104)


@pytest.mark.parametrize("n", [2, 3, 10, 50, 200])
def test_beta_lemmas_exact(n):
    report = beta_lemma_report(eulerian_distribution(n))
    assert report.upper_holds and report.lower_holds and report.variance_holds
    assert report.second_moment == Fraction(n + 1, 12)


@pytest.mark.slow
def test_beta_lemmas_exact_at_mode_limit():
    report = beta_lemma_report(eulerian_distribution(2000))
    assert report.upper_holds and report.lower_holds and report.variance_holds


@pytest.mark.parametrize("n", [500, 5000])
def test_beta_lemmas_scaled(n):
    report = beta_lemma_report(eulerian_distribution(n, DistributionMode.SCALED))
    assert report.upper_holds and report.lower_holds and report.variance_holds


# ---------------------------------------------------------------------------
# Adjoint vectors and conditions
# ---------------------------------------------------------------------------

def test_adjoint_gl():
    ha = adjoint_hodge((1, 2, 1), "GL")
    assert ha.ha == {-2: Fraction(1, 2), -1: 2, 0: 3, 1: 2, 2: Fraction(1, 2)}
    assert ha.t == 4
    assert adjoint_hodge((1,), "GL").ha == {0: Fraction(1, 2)}


@pytest.mark.parametrize("sign, expected, total", [
    (-1, {-2: 0, -1: 2, 0: 2, 1: 2, 2: 0}, 6),
    (1, {-2: 1, -1: 2, 0: 4, 1: 2, 2: 1}, 10),
])
def test_adjoint_go_both_signs(sign, expected, total):
    ha = adjoint_hodge((1, 2, 1), "GO", sign)
    assert ha.ha == expected
    assert ha.total == total
    assert ha.t == 2


def test_adjoint_validation():
    with pytest.raises(InvalidHodgeVector):
        adjoint_hodge((1, 2), "GO")
    with pytest.raises(InvalidHodgeVector):
        adjoint_hodge((1, -1, 1), "GL")


@settings(max_examples=50)
@given(st.lists(st.integers(0, 6), min_size=1, max_size=6))
def test_gl_adjoint_mass_is_half_rank_squared(h):
    ha = adjoint_hodge(h, "GL")
    assert ha.total == Fraction(sum(h) ** 2, 2)
    assert all(ha.ha[p] == ha.ha[-p] for p in ha.ha)


def test_t_g_greedy():
    ha = {1: 2, 0: 3, -1: 2}
    assert t_g(ha, 3) == 2
    assert t_g(ha, 0) == 0
    assert t_g({1: Fraction(1, 2), 0: 1}, 1) == Fraction(1, 2)
    with pytest.raises(InsufficientMultiplicity):
        t_g(ha, 8)


def test_simplified_condition_ladder():
    assert not check_conditions(ideal_adjoint(100), mode="simplified").holds
    assert check_conditions(ideal_adjoint(13000, DistributionMode.SCALED), mode="simplified").holds


def test_full_condition_reports_shortfall():
    report = check_conditions(adjoint_hodge((1, 2, 1), "GL"), 10, mode="full")
    assert report.mode == "full"
    assert not report.holds
    assert len(report.checks) == 2
    assert report.notes


def test_ideal_adjoint_scaling():
    assert ideal_adjoint(3).total == 1
    assert ideal_adjoint(3, total_dimension=10).total == 50


@pytest.mark.parametrize("n, group, holds", [
    (500000, "SO", True),
    (40000, "SO", False),
    (1000, "SO", False),
    (100000, "GL", True),
    (1000, "GL", False),
])
def test_analytic_bounds(n, group, holds):
    report = analytic_bound_check(n, group)
    assert report.mode == "analytic"
    assert report.holds is holds
