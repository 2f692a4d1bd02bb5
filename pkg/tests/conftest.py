import pytest

from walshmap.api import solve

import reference_values as ref


@pytest.fixture(scope="session")
def two_interval():
    return solve(ref.TWO_INTERVAL["pairs"])


@pytest.fixture(scope="session")
def three_interval():
    return solve(ref.THREE_INTERVAL["pairs"])


@pytest.fixture(scope="session")
def single_interval():
    return solve([[-1.0, 1.0]])


@pytest.fixture(scope="session")
def symmetric_pair():
    return solve(ref.SYMMETRIC_PAIR["pairs"])


@pytest.fixture(scope="session")
def cantor2():
    return solve(ref.cantor_pairs(2))
