import random
from fractions import Fraction

import pytest

from triholo import fixtures


@pytest.fixture(scope="session")
def octa():
    return fixtures.octahedron()


@pytest.fixture(scope="session")
def ico():
    return fixtures.icosahedron()


@pytest.fixture(scope="session")
def torus3():
    return fixtures.torus_lattice(3)


@pytest.fixture(scope="session")
def torus4():
    return fixtures.torus_lattice(4)


@pytest.fixture(scope="session")
def torus6():
    return fixtures.torus_lattice(6)


def rand_frac(rng: random.Random, lo=-9, hi=9, den=4) -> Fraction:
    return Fraction(rng.randint(lo, hi), rng.randint(1, den))


def rand_pos_frac(rng: random.Random, hi=9, den=4) -> Fraction:
    return Fraction(rng.randint(1, hi), rng.randint(1, den))
