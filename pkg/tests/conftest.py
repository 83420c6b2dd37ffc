from pathlib import Path

import pytest

from rsprofile import Constellation, Permutation, from_constellation

DATA = Path(__file__).parent / "data"


def cyc(n, *cycles):
    return Permutation.from_cycles(n, cycles)


def const(n, *sigmas):
    """Constellation from cycle tuples, e.g. ``const(2, [(1, 2)], [(1, 2)])``."""
    return Constellation(tuple(Permutation.from_cycles(n, c) for c in sigmas))


def torus_constellation():
    return const(2, *([[(1, 2)]] * 4))


def sqrt_constellation():
    return const(2, [(1, 2)], [(1, 2)])


def identity_constellation(n, q):
    return const(n, *([[]] * q))


def bad3_constellation():
    return const(3, [(1, 2, 3)], [(1, 2, 3)])


def arcsin_constellation():
    return Constellation((Permutation.periodic_map([1, 0]),
                          Permutation.periodic_map([-1, 2]),
                          Permutation.periodic_map([-2, 3])))


@pytest.fixture
def torus():
    return from_constellation(torus_constellation())


@pytest.fixture
def sqrt_profile():
    return from_constellation(sqrt_constellation())


@pytest.fixture
def bad3():
    return from_constellation(bad3_constellation())


@pytest.fixture
def arcsin():
    return from_constellation(arcsin_constellation())


@pytest.fixture
def data_dir():
    return DATA
