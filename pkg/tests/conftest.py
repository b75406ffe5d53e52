import math

import pytest

import utils.helper as hlp
from geometry.triangle import Triangle


@pytest.fixture(autouse=True)
def quiet():
    hlp.set_params(verbosity=0, timestamped=False)
    yield
    hlp.set_params(verbosity=0)


@pytest.fixture
def equilateral():
    return Triangle((0.0, 0.0), (1.0, 0.0), (0.5, math.sqrt(3) / 2))


@pytest.fixture
def half_square():
    return Triangle((0.0, 0.0), (1.0, 0.0), (0.0, 1.0))


@pytest.fixture
def scalene():
    return Triangle((0.1, -0.2), (1.3, 0.4), (0.2, 0.9))
