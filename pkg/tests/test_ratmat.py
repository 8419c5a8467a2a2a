import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from triholo import ratmat


def rand_matrix(rng, rows, cols, lo=-5, hi=5):
    return [[Fraction(rng.randint(lo, hi), rng.randint(1, 3))
             for _ in range(cols)] for _ in range(rows)]


def test_frac_parsing():
    assert ratmat.frac("3/4") == Fraction(3, 4)
    assert ratmat.frac(-2) == Fraction(-2)
    assert ratmat.frac(Fraction(1, 3)) == Fraction(1, 3)


def test_mat_mul_identity_and_inverse():
    rng = random.Random(1)
    m = rand_matrix(rng, 2, 2)
    while ratmat.det2(m) == 0:
        m = rand_matrix(rng, 2, 2)
    assert ratmat.mat_mul(m, ratmat.identity(2)) == m
    assert ratmat.mat_mul(m, ratmat.inv2(m)) == ratmat.identity(2)
    with pytest.raises(ZeroDivisionError):
        ratmat.inv2([[Fraction(1), Fraction(2)], [Fraction(2), Fraction(4)]])


def test_vec_mat_row_action():
    m = [[Fraction(0), Fraction(1)], [Fraction(1), Fraction(0)]]
    assert ratmat.vec_mat([Fraction(2), Fraction(5)], m) == [5, 2]


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=0, max_value=10 ** 6))
def test_nullspace_and_rank_nullity(seed):
    rng = random.Random(seed)
    rows, cols = rng.randint(1, 5), rng.randint(1, 5)
    a = rand_matrix(rng, rows, cols)
    r = ratmat.rank(a)
    basis = ratmat.nullspace(a)
    assert r + len(basis) == cols
    for vec in basis:
        for row in a:
            assert sum(x * y for x, y in zip(row, vec)) == 0


def test_rank_matches_sympy():
    import sympy

    rng = random.Random(7)
    for _ in range(15):
        a = rand_matrix(rng, rng.randint(1, 5), rng.randint(1, 5))
        m = sympy.Matrix([[sympy.Rational(x) for x in row] for row in a])
        assert ratmat.rank(a) == m.rank()


def test_solve_affine_consistency():
    rng = random.Random(3)
    for _ in range(20):
        rows, cols = rng.randint(1, 5), rng.randint(1, 5)
        a = rand_matrix(rng, rows, cols)
        x_true = [Fraction(rng.randint(-4, 4)) for _ in range(cols)]
        b = [sum(row[j] * x_true[j] for j in range(cols)) for row in a]
        x, null = ratmat.solve_affine(a, b)
        assert x is not None
        for row, bi in zip(a, b):
            assert sum(r * v for r, v in zip(row, x)) == bi
    # inconsistent system
    a = [[Fraction(1), Fraction(1)], [Fraction(1), Fraction(1)]]
    x, _ = ratmat.solve_affine(a, [Fraction(0), Fraction(1)])
    assert x is None


def test_span_equal():
    b1 = [[Fraction(1), Fraction(0)], [Fraction(0), Fraction(1)]]
    b2 = [[Fraction(1), Fraction(1)], [Fraction(1), Fraction(-1)]]
    assert ratmat.span_equal(b1, b2)
    assert not ratmat.span_equal(b1, [[Fraction(1), Fraction(0)]])
    assert ratmat.span_equal([], [])
    assert not ratmat.span_equal([[Fraction(1), Fraction(2)]],
                                 [[Fraction(2), Fraction(1)]])
