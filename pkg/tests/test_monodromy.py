from math import factorial, prod

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import support
from src.errors import DegenerateSupport, InvalidInput
from src.schemas import GabberVerdict, WeightPartition, WeightVector
from src.tools.monodromy import (
    curve_monodromy_check,
    find_prime_truncation,
    gabber_check,
    is_prime,
    minimal_rank_parameter,
    primality,
    pyramid_monodromy_check,
    theorem_a_check,
    truncated_prism_monodromy,
)


def test_small_primes():
    assert is_prime(2) and is_prime(11) and is_prime(47)
    assert not any(is_prime(n) for n in (0, 1, 48, 561))


def test_agrees_with_sympy_below_3000():
    assert [n for n in range(3000) if is_prime(n)] == [n for n in range(3000) if sympy.isprime(n)]


def test_large_inputs():
    mersenne = primality(2 ** 89 - 1)
    assert mersenne.prime and mersenne.probabilistic
    assert not primality(2 ** 64 + 1).prime
    assert primality(2 ** 61 - 1) == primality(2 ** 61 - 1, rounds=0)
    assert not primality(2 ** 61 - 1).probabilistic


def test_negative_input():
    with pytest.raises(InvalidInput):
        primality(-7)


@settings(max_examples=60)
@given(st.integers(min_value=2 ** 64, max_value=2 ** 96))
def test_agrees_with_sympy_above_deterministic_range(n):
    assert is_prime(n) == sympy.isprime(n)


@settings(max_examples=40)
@given(st.integers(min_value=2 ** 33, max_value=2 ** 48), st.integers(min_value=2 ** 33, max_value=2 ** 48))
def test_large_semiprimes_are_composite(p, q):
    p, q = sympy.nextprime(p), sympy.nextprime(q)
    assert not is_prime(p * q)
    assert is_prime(p) and is_prime(q)


# ---------------------------------------------------------------------------
# Eigenvalue-partition test
# ---------------------------------------------------------------------------

def test_theorem_a_boundary():
    assert theorem_a_check(WeightPartition.of([288, 1]), 1).large
    result = theorem_a_check(WeightPartition.of([287, 1]), 1)
    assert not result.large
    assert result.failed_conditions == ["dimension_bound"]


def test_theorem_a_reports_every_failure():
    result = theorem_a_check(WeightPartition.of([5, 5]), 4)
    assert result.failed_conditions == ["singleton", "second_part", "dimension_bound"]
    assert len(result.conditions) == 4


partitions = st.lists(st.integers(min_value=1, max_value=40), min_size=1, max_size=5)


@settings(max_examples=200)
@given(partitions, st.integers(min_value=1, max_value=6), st.integers(min_value=1, max_value=10 ** 6))
def test_partition_test_is_monotone_in_r_total(parts, r, extra):
    small = WeightPartition.of(parts)
    grown = WeightPartition.of([small.c[0] + extra, *small.c[1:]])
    before = theorem_a_check(small, r)
    after = theorem_a_check(grown, r)
    assert set(after.failed_conditions) <= set(before.failed_conditions)
    if before.large:
        assert after.large


def test_minimal_rank_parameter():
    assert minimal_rank_parameter(WeightPartition.of([9])) == 1
    assert minimal_rank_parameter(WeightPartition.of([40, 2, 1])) == 2
    assert minimal_rank_parameter(WeightPartition.of([10, 3, 3, 1])) == 3


def test_curve_triangle_configuration():
    report = curve_monodromy_check(support((0, 0), (2, 0), (3, 7302)))
    assert report.triangle_configuration
    assert report.large
    assert report.R == 2 * 7302


def test_curve_examples(example_two, square_poly):
    report = curve_monodromy_check(example_two)
    assert report.R == 3
    assert report.triangle_configuration is False
    assert not report.large

    report = curve_monodromy_check(square_poly)
    assert report.triangle_configuration is False
    assert any("not a triangle" in note for note in report.notes)


def test_curve_degenerate():
    with pytest.raises(DegenerateSupport):
        curve_monodromy_check(support((0, 0), (1, 1), (2, 2)))


@pytest.mark.parametrize("c, verbatim", [(10441, True), (10440, False)])
def test_pyramid_literal_bound(c, verbatim):
    report = pyramid_monodromy_check(2, 2, c)
    assert report.verbatim.large is verbatim
    assert report.r == 2
    assert report.large


@pytest.mark.parametrize("c, large", [(226, True), (225, False)])
def test_pyramid_canonical_bound(c, large):
    report = pyramid_monodromy_check(2, 2, c)
    assert report.large is large
    assert report.partition.c == (8 * c - 3, 2, 1)
    assert not report.verbatim.large
    if large:
        assert report.notes


def test_pyramid_rank_condition():
    report = pyramid_monodromy_check(1, 1, 50)
    assert "rank" in report.verbatim.failed_conditions
    assert not report.large


def test_pyramid_rejects_nonpositive():
    with pytest.raises(InvalidInput):
        pyramid_monodromy_check(0, 2, 3)


# ---------------------------------------------------------------------------
# Prime-dimension test
# ---------------------------------------------------------------------------

def test_gabber_top_multiplicity():
    assert gabber_check(11, top_multiplicity=4).verdict == GabberVerdict.CONTAINS
    assert gabber_check(12, top_multiplicity=4).verdict == GabberVerdict.INCONCLUSIVE
    assert gabber_check(11, top_multiplicity=1).verdict == GabberVerdict.INCONCLUSIVE


def test_gabber_seven_needs_waiver():
    report = gabber_check(7, top_multiplicity=3)
    assert report.verdict == GabberVerdict.INCONCLUSIVE
    assert any("G2" in reason for reason in report.reasons)
    assert gabber_check(7, top_multiplicity=3, waive_g2=True).verdict == GabberVerdict.CONTAINS


def test_gabber_weight_multisets():
    constant = WeightVector(n=2, mult={1: 11})
    distinct = WeightVector(n=3, mult={0: 1, 1: 1, 2: 1})
    mixed = WeightVector(n=2, mult={0: 5, 1: 4, 2: 2})
    assert gabber_check(11, constant).verdict == GabberVerdict.INCONCLUSIVE
    assert gabber_check(3, distinct).verdict == GabberVerdict.INCONCLUSIVE
    assert gabber_check(11, mixed).verdict == GabberVerdict.CONTAINS


def test_gabber_input_errors():
    with pytest.raises(InvalidInput):
        gabber_check(11, WeightVector(n=2, mult={0: 1, 1: 2}))
    with pytest.raises(InvalidInput):
        gabber_check(11)


def test_truncated_prism_certificate():
    report = truncated_prism_monodromy((2, 3), (1, 1))
    assert report.R == 11
    assert report.verdict == GabberVerdict.CONTAINS
    with pytest.raises(InvalidInput):
        truncated_prism_monodromy((2, 3), (2, 1))


@pytest.mark.parametrize("sides, b, N", [((2, 3), 1, 11), ((2, 2, 2), 1, 47), ((5, 4), 3, 37)])
def test_find_prime_truncation(sides, b, N):
    result = find_prime_truncation(sides)
    assert result.found and (result.b, result.N) == (b, N)
    assert find_prime_truncation(sides, threads=3) == result


def test_no_prime_truncation():
    assert not find_prime_truncation((1, 1)).found
    with pytest.raises(InvalidInput):
        find_prime_truncation((4,))


@settings(max_examples=60)
@given(st.lists(st.integers(min_value=1, max_value=40), min_size=2, max_size=4))
def test_prime_truncation_is_smallest_prime_corner(sides):
    base = factorial(len(sides)) * prod(sides)
    result = find_prime_truncation(sides)
    primes = [b for b in range(1, sides[0]) if sympy.isprime(base - b)]
    if not result.found:
        assert primes == []
        return
    assert 1 <= result.b < sides[0]
    assert result.N == base - result.b
    assert sympy.isprime(result.N)
    assert result.b == primes[0]
