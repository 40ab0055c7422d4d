"""Shared fixtures for the rdnlab test suite."""

import numpy as np
import pytest

from rdnlab.hyperbolic.burgers import BurgersProblem
from rdnlab.hyperbolic.color import AdvectionProblem, ColorProblem
from rdnlab.netcore.two_layer import build_full_two_layer


@pytest.fixture
def rng():
    """Seeded generator so random networks are reproducible."""
    return np.random.default_rng(20240611)


@pytest.fixture(scope="session")
def burgers():
    """Default Burgers problem; the shock path is computed once per session."""
    return BurgersProblem()


@pytest.fixture
def color():
    return ColorProblem()


@pytest.fixture
def advection():
    return AdvectionProblem()


@pytest.fixture
def hat_solution():
    """Piecewise-linear hat on [0, 1] with 9 nodes."""
    grid = np.linspace(0.0, 1.0, 9)
    return build_full_two_layer(9, 1.0 - np.abs(2.0 * grid - 1.0))
