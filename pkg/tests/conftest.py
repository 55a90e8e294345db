from fractions import Fraction

import pytest

from zhangforge import make_polytope


@pytest.fixture
def triangle():
    return make_polytope([(0, 0), (1, 0), (0, 1)], 2)


@pytest.fixture
def unit_square():
    return make_polytope([(0, 0), (1, 0), (0, 1), (1, 1)], 2)


@pytest.fixture
def sym_square():
    return make_polytope([(-1, -1), (1, -1), (-1, 1), (1, 1)], 2)


@pytest.fixture
def big_square():
    return make_polytope([(0, 0), (2, 0), (0, 2), (2, 2)], 2)


@pytest.fixture
def simplex3():
    return make_polytope([(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)], 3)


@pytest.fixture
def slab_body():
    third, half = Fraction(1, 3), Fraction(1, 2)
    return make_polytope([(-2, third), (2, third), (-2, half), (2, half)], 2)
