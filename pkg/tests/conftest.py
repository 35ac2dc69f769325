import pytest

from latkit.enumeration import all_lattices


@pytest.fixture(scope="session")
def stream6():
    return [L for n in range(1, 7) for L in all_lattices(n)]


@pytest.fixture(scope="session")
def stream7():
    return [L for n in range(1, 8) for L in all_lattices(n)]


@pytest.fixture(scope="session")
def stream8():
    return [L for n in range(1, 9) for L in all_lattices(n)]


@pytest.fixture(scope="session")
def stream9():
    return [L for n in range(1, 10) for L in all_lattices(n)]
