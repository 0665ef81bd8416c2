import numpy as np
import pytest

from logbesov.grid import GridSpec
from logbesov.partition import build_partition


@pytest.fixture(scope="session")
def grid10():
    return GridSpec(1, 10)


@pytest.fixture(scope="session")
def grid12():
    return GridSpec(1, 12)


@pytest.fixture(scope="session")
def grid2d():
    return GridSpec(2, 7)


@pytest.fixture(scope="session")
def part10(grid10):
    return build_partition(grid10)


@pytest.fixture(scope="session")
def part12(grid12):
    return build_partition(grid12)


@pytest.fixture(scope="session")
def part2d(grid2d):
    return build_partition(grid2d)


@pytest.fixture()
def rng():
    return np.random.default_rng(1234)
