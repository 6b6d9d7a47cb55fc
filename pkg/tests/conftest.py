import numpy as np
import pytest

from turanlab.geom import regular_polygon, validate


@pytest.fixture
def unit_square():
    return validate([0, 1, 1 + 1j, 1j])


@pytest.fixture
def box():
    """The square [-1, 1]^2."""
    return validate([-1 - 1j, 1 - 1j, 1 + 1j, -1 + 1j])


@pytest.fixture
def triangle():
    """Equilateral triangle with unit sides."""
    return regular_polygon(3, 1.0)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
