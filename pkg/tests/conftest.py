import os
import sys

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), "..")))

import pytest
from hypothesis import HealthCheck, settings

from src.config import Config
from src.schemas import MonomialSupport
from src.tools.polytope_core import convex_hull

settings.register_profile("toolkit", deadline=None, suppress_health_check=[HealthCheck.function_scoped_fixture])
settings.load_profile("toolkit")


def support(*exponents, coeffs=None):
    """Laurent polynomial with the given exponents and unit (or given) coefficients."""
    coeffs = coeffs or [1] * len(exponents)
    return MonomialSupport.from_terms({tuple(e): c for e, c in zip(exponents, coeffs)})


@pytest.fixture(autouse=True)
def isolated_outputs(tmp_path, monkeypatch):
    monkeypatch.setattr(Config, "OUTPUT_DIR", str(tmp_path / "outputs"))
    monkeypatch.setattr(Config, "DEBUG_IO", False)
    monkeypatch.setattr(Config, "THREADS", 1)
    monkeypatch.setattr(Config, "SEED", 0)


@pytest.fixture
def unit_square():
    return convex_hull([(0, 0), (1, 0), (0, 1), (1, 1)])


@pytest.fixture
def thin_triangle():
    # area 3/2, one edge of lattice length 3
    return convex_hull([(0, 3), (1, 1), (3, 0)])


@pytest.fixture
def wide_triangle():
    # area 4, three interior points
    return convex_hull([(0, 2), (1, 0), (3, 4)])


@pytest.fixture
def example_one():
    """x^4y^3 + 3x^2y^2 + x^2 + y"""
    return support((4, 3), (2, 2), (2, 0), (0, 1), coeffs=[1, 3, 1, 1])


@pytest.fixture
def example_two():
    """x^3 + xy + y^3"""
    return support((3, 0), (1, 1), (0, 3))


@pytest.fixture
def square_poly():
    """xy + x + y + 1"""
    return support((1, 1), (1, 0), (0, 1), (0, 0))
