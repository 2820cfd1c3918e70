import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.errors import BoundViolated, BudgetExceeded, DegenerateHull, InvalidInput
from src.schemas import FiniteFieldPoly
from src.tools import ff_oracle
from src.tools.exact_linalg import minors_gcd, sub
from src.tools.ff_oracle import (
    FiniteField,
    count_points,
    is_nondegenerate,
    main_term,
    weil_bound_check,
)
from src.tools.polytope_core import convex_hull


@pytest.fixture
def line_f5():
    """x + y + 1 over F_5"""
    return FiniteFieldPoly.from_terms(5, {(1, 0): 1, (0, 1): 1, (0, 0): 1})


@pytest.fixture
def hyperbola_f7():
    """xy - 1 over F_7"""
    return FiniteFieldPoly.from_terms(7, {(1, 1): 1, (0, 0): -1})


def test_field_arithmetic():
    field = FiniteField(5, 2)
    assert field.size == 25
    assert field.power(field.generator, field.order) == 1
    assert all(field.power(field.generator, field.order // p) != 1 for p in (2, 3))
    assert sorted(field.log[1:].tolist()) == list(range(24))


def test_field_limits():
    with pytest.raises(InvalidInput):
        FiniteField(6)
    with pytest.raises(InvalidInput):
        FiniteField(5, 4)


def test_coefficients_are_reduced():
    f = FiniteFieldPoly.from_terms(7, {(1, 1): 1, (0, 0): -1})
    assert f.coefficients == (1, 6)
    with pytest.raises(ValueError):
        FiniteFieldPoly.from_terms(5, {(1, 0): 5, (0, 0): 1})


def test_counts(line_f5, hyperbola_f7):
    assert count_points(line_f5) == 3
    assert count_points(line_f5, 2) == 23
    assert count_points(hyperbola_f7) == 6
    assert count_points(FiniteFieldPoly.from_terms(5, {(1, 1): 1, (0, 0): -1}), 2) == 24


def test_count_is_thread_independent(line_f5):
    assert count_points(line_f5, 3, threads=4) == count_points(line_f5, 3, threads=1) == 123


def test_budget(line_f5):
    with pytest.raises(BudgetExceeded):
        count_points(line_f5, budget=10)


def test_nondegeneracy(line_f5):
    assert is_nondegenerate(line_f5)
    square = FiniteFieldPoly.from_terms(5, {(2, 0): 1, (1, 0): 2, (0, 0): 1})
    assert not is_nondegenerate(square)
    assert is_nondegenerate(FiniteFieldPoly.from_terms(7, {(3, 0): 1, (1, 1): 1, (0, 3): 1}))


def test_face_polynomial_must_vanish_too():
    # every x·d/dx term vanishes mod 5, and x^10 + 2 = (x^2 + 2)^5 has no root in F_5
    f = FiniteFieldPoly.from_terms(5, {(10,): 1, (0,): 2})
    assert is_nondegenerate(f, 1)
    assert not is_nondegenerate(f, 2)


def test_main_term():
    assert main_term(2, 5) == 5
    assert main_term(3, 5) == 10


def test_weil_line_is_tight(line_f5):
    report = weil_bound_check(line_f5)
    entry = report.entries[0]
    assert (entry.count, entry.main_term, entry.deviation) == (3, 5, -2)
    assert entry.bound == 2
    assert entry.margin == 0
    assert report.holds


def test_weil_plane_surface():
    f = FiniteFieldPoly.from_terms(5, {(1, 0, 0): 1, (0, 1, 0): 1, (0, 0, 1): 1, (0, 0, 0): 1})
    report = weil_bound_check(f)
    entry = report.entries[0]
    assert (entry.count, entry.main_term) == (13, 10)
    assert {w: d for w, d in report.weight_dims.items() if d} == {0: 3}
    assert entry.margin == 0


def test_weil_cubic_curve():
    f = FiniteFieldPoly.from_terms(7, {(3, 0): 1, (1, 1): 1, (0, 3): 1})
    report = weil_bound_check(f, degrees=(1, 2))
    assert 3 <= report.entries[0].count <= 11
    assert [e.field_size for e in report.entries] == [7, 49]


def test_weil_input_limits(hyperbola_f7):
    with pytest.raises(DegenerateHull):
        weil_bound_check(hyperbola_f7)
    f = FiniteFieldPoly.from_terms(11, {(1, 0, 0): 1, (0, 1, 0): 1, (0, 0, 1): 1, (0, 0, 0): 1})
    with pytest.raises(InvalidInput):
        weil_bound_check(f)


def test_violation_is_raised(line_f5, monkeypatch):
    monkeypatch.setattr(ff_oracle, "count_points", lambda *args, **kwargs: 40)
    with pytest.raises(BoundViolated) as info:
        weil_bound_check(line_f5)
    assert info.value.degree == 1
    assert info.value.exit_code == 3


@settings(max_examples=15)
@given(st.integers(-2, 2), st.integers(-2, 2))
def test_translation_does_not_change_counts(dx, dy):
    base = {(3, 0): 1, (1, 1): 2, (0, 2): 1, (0, 0): 3}
    shifted = {(a + dx, b + dy): c for (a, b), c in base.items()}
    assert count_points(FiniteFieldPoly.from_terms(7, shifted)) == count_points(FiniteFieldPoly.from_terms(7, base))


def _random_curves(rng, q, count):
    found = []
    while len(found) < count:
        size = rng.randint(3, 8)
        exps = {(rng.randint(0, 6), rng.randint(0, 6)) for _ in range(size)}
        if len(exps) < 3:
            continue
        try:
            convex_hull(exps)
        except DegenerateHull:
            continue
        origin = min(exps)
        if minors_gcd([sub(e, origin) for e in exps if e != origin]) != 1:
            continue
        f = FiniteFieldPoly.from_terms(q, {e: rng.randint(1, q - 1) for e in exps})
        if is_nondegenerate(f, 1) and is_nondegenerate(f, 2):
            found.append(f)
    return found


@pytest.mark.slow
@pytest.mark.parametrize("q", [11, 13, 17, 19, 23, 29, 31])
def test_random_nondegenerate_curves_satisfy_window(q):
    rng = random.Random(q)
    # 15 curves per field, 105 in total
    for f in _random_curves(rng, q, 15):
        report = weil_bound_check(f, degrees=(1, 2))
        assert report.holds
        assert all(e.margin >= 0 for e in report.entries)
