import math
from decimal import Decimal
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from treach import EPS, DimensionMismatch, ParseError, mp, vec
from treach.maxplus import (
    dot,
    eps_vector,
    format_scalar,
    identity,
    mat_mul,
    mat_vec_mul,
    metric,
    scalar_add,
    scalar_mul,
    scalar_sub,
    scalar_vec_mul,
    submatrix,
    vec_add,
    vec_leq,
    vec_sum,
)

scalars = st.one_of(
    st.just(EPS),
    st.integers(-20, 20),
    st.fractions(-10, 10, max_denominator=8).map(mp),
)
finite = st.one_of(st.integers(-20, 20), st.fractions(-10, 10, max_denominator=8).map(mp))


def vectors(n):
    return st.tuples(*[scalars] * n)


# -- examples ----------------------------------------------------------------

@pytest.mark.parametrize(
    "a, b, want",
    [(2, 3, 3), (EPS, 5, 5), (EPS, EPS, EPS), (Fraction(1, 2), 0, Fraction(1, 2))],
)
def test_scalar_add_examples(a, b, want):
    assert scalar_add(a, b) == want


@pytest.mark.parametrize("a, b, want", [(2, 3, 5), (EPS, 7, EPS), (0, 4, 4), (0, EPS, EPS)])
def test_scalar_mul_examples(a, b, want):
    assert scalar_mul(a, b) == want


def test_vec_add_examples():
    assert vec_add((0, EPS), (EPS, 1)) == (0, 1)
    assert vec_add((0, 2, 3), (0, 1, 1)) == (0, 2, 3)
    assert vec_add((4, EPS, -1), eps_vector(3)) == (4, EPS, -1)


def test_vec_add_length_mismatch():
    with pytest.raises(DimensionMismatch):
        vec_add((0, 1), (0, 1, 2))


def test_scalar_vec_mul_examples():
    assert scalar_vec_mul(1, (0, 2, 2)) == (1, 3, 3)
    assert scalar_vec_mul(EPS, (0, 5)) == (EPS, EPS)
    assert scalar_vec_mul(1, (-1, 1, 1)) == (0, 2, 2)


def test_mat_vec_mul_examples():
    x = (3, EPS, Fraction(-1, 3))
    assert mat_vec_mul(identity(3), x) == x
    assert mat_vec_mul(((2, 3), (5, 1)), (0, 0)) == (3, 5)
    assert mat_vec_mul(((2, 3), (5, 1), (EPS, 0)), eps_vector(2)) == eps_vector(3)
    with pytest.raises(DimensionMismatch):
        mat_vec_mul(((2, 3),), (0, 0, 0))


def test_dot_examples():
    assert dot((EPS, EPS, 0), (0, 2, 3)) == 3
    assert dot((EPS, 1, EPS), (0, 3, 3)) == 4
    assert dot(eps_vector(3), (1, 2, 3)) is EPS


def test_metric_examples():
    assert metric(EPS, EPS) == 0
    assert metric(0, EPS) == 1
    assert metric(mp(math.log(2)), EPS) == pytest.approx(2.0, rel=1e-12)


def test_submatrix_and_mat_mul():
    A = ((1, 2, 3), (4, 5, 6), (7, 8, 9))
    assert submatrix(A, range(1, 3), range(0, 2)) == ((4, 5), (7, 8))
    assert submatrix(A, slice(0, 1), slice(1, None)) == ((2, 3),)
    assert mat_mul(A, identity(3)) == A
    with pytest.raises(DimensionMismatch):
        mat_mul(A, ((0, 0),))


def test_vec_sum_empty_is_bottom():
    assert vec_sum([], 2) == (EPS, EPS)
    assert vec_sum([(0, EPS), (EPS, 1), (-1, -1)], 2) == (0, 1)


# -- the bottom element ------------------------------------------------------

def test_eps_refuses_arithmetic():
    with pytest.raises(TypeError):
        EPS + 1
    with pytest.raises(TypeError):
        1 - EPS
    with pytest.raises(ValueError):
        scalar_sub(1, EPS)


def test_eps_ordering():
    assert EPS < -10**9 and EPS <= EPS and not EPS < EPS
    assert -10**9 > EPS
    assert max(EPS, -3) == -3
    assert sorted([2, EPS, Fraction(-1, 2)]) == [EPS, Fraction(-1, 2), 2]


def test_eps_is_a_singleton():
    import copy
    import pickle

    assert copy.deepcopy(EPS) is EPS
    assert pickle.loads(pickle.dumps(EPS)) is EPS
    assert repr(EPS) == "EPS" and str(EPS) == "-inf"


# -- coercion ----------------------------------------------------------------

@pytest.mark.parametrize(
    "raw, want",
    [
        ("-inf", EPS),
        (float("-inf"), EPS),
        (Decimal("-Infinity"), EPS),
        ("3/4", Fraction(3, 4)),
        ("1.25", Fraction(5, 4)),
        (" 7 ", 7),
        (Decimal("0.5"), Fraction(1, 2)),
        (0.1, Fraction(1, 10)),
        (Fraction(6, 3), 2),
        (-2, -2),
    ],
)
def test_mp_accepts(raw, want):
    got = mp(raw)
    assert got == want and type(got) is type(want)


@pytest.mark.parametrize("raw", ["foo", "eps", "EPS", "inf", "nan", "", "1/0", True, float("inf"), float("nan"), None, [1]])
def test_mp_rejects(raw):
    with pytest.raises(ParseError):
        mp(raw)


def test_format_scalar():
    assert [format_scalar(a) for a in vec(["-inf", 3, "-1/2"])] == ["-inf", "3", "-1/2"]


# -- algebraic laws ----------------------------------------------------------

@given(scalars, scalars, scalars)
def test_semiring_laws(a, b, c):
    assert scalar_add(a, scalar_add(b, c)) == scalar_add(scalar_add(a, b), c)
    assert scalar_mul(a, scalar_mul(b, c)) == scalar_mul(scalar_mul(a, b), c)
    assert scalar_add(a, b) == scalar_add(b, a)
    assert scalar_mul(a, b) == scalar_mul(b, a)
    assert scalar_mul(a, scalar_add(b, c)) == scalar_add(scalar_mul(a, b), scalar_mul(a, c))
    assert scalar_add(EPS, a) == a
    assert scalar_mul(EPS, a) is EPS
    assert scalar_mul(0, a) == a
    assert scalar_add(a, a) == a


@given(scalars, scalars)
def test_selection_property(a, b):
    assert scalar_add(a, b) in (a, b)
    assert scalar_add(a, b) >= a and scalar_add(a, b) >= b


@given(scalars, scalars)
def test_order_is_total(a, b):
    assert (a <= b) or (b <= a)
    assert (a < b) == (not b <= a)


@given(st.lists(st.tuples(*[scalars] * 3), min_size=2, max_size=2), vectors(3), vectors(3), scalars, scalars)
def test_mat_vec_mul_is_linear(A, x, y, lam, mu):
    A = tuple(A)
    lhs = mat_vec_mul(A, vec_add(scalar_vec_mul(lam, x), scalar_vec_mul(mu, y)))
    rhs = vec_add(scalar_vec_mul(lam, mat_vec_mul(A, x)), scalar_vec_mul(mu, mat_vec_mul(A, y)))
    assert lhs == rhs


@given(vectors(4), vectors(4), scalars)
def test_dot_symmetric_and_homogeneous(a, b, lam):
    assert dot(a, b) == dot(b, a)
    assert dot(scalar_vec_mul(lam, a), b) == scalar_mul(lam, dot(a, b))


@given(vectors(3), vectors(3))
def test_eps_vector_is_minimal(x, y):
    assert vec_leq(eps_vector(3), x)
    assert vec_leq(x, vec_add(x, y))


@given(
    st.lists(st.tuples(*[scalars] * 3), min_size=2, max_size=2),
    st.lists(st.tuples(*[scalars] * 2), min_size=3, max_size=3),
    vectors(2),
)
def test_mat_mul_associates_with_vectors(A, B, x):
    A, B = tuple(A), tuple(B)
    assert mat_vec_mul(mat_mul(A, B), x) == mat_vec_mul(A, mat_vec_mul(B, x))


@given(finite, finite)
def test_metric_matches_exp(a, b):
    assert metric(a, b) == pytest.approx(abs(math.exp(a) - math.exp(b)), rel=1e-12, abs=1e-12)
    assert metric(a, b) == metric(b, a)
