import cmath
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from helpers import nonzero_scalars, scalars
from localzeta.errors import (
    ConvergenceError,
    DegenerateFactorError,
    MixedResidueError,
    PoleError,
)
from localzeta.ring import (
    EulerFactor,
    Scalar,
    Series2,
    euler_expand,
    evaluated_product,
    format_scalar,
    geom_expand,
    p_power,
    parse_scalar,
    series_eval_numeric,
)

P = 3


# -- Scalar ----------------------------------------------------------------

def test_sqrt_p_squares_to_p():
    r = Scalar.sqrt_p(5)
    assert r * r == 5
    assert not r.is_gaussian_rational()


def test_multiplication_rule_matches_formula():
    a1, b1, a2, b2 = Fraction(1, 2), Fraction(3), Fraction(-2, 5), Fraction(7, 3)
    x = Scalar(P, a1, 0, b1)
    y = Scalar(P, a2, 0, b2)
    assert x * y == Scalar(P, a1 * a2 + P * b1 * b2, 0, a1 * b2 + a2 * b1)


def test_perfect_square_p_folds_sqrt():
    assert Scalar.sqrt_p(4) == 2
    assert Scalar(9, 1, 0, 1).is_rational()


def test_mixed_p_is_an_error():
    with pytest.raises(MixedResidueError):
        Scalar(2, 1) + Scalar(3, 1)


def test_half_power_and_p_power():
    assert Scalar.half_power(3, 2) == 3
    assert Scalar.half_power(3, -2) == Fraction(1, 3)
    assert Scalar.half_power(3, 1) == Scalar.sqrt_p(3)
    assert p_power(2, Fraction(-3, 2)) * p_power(2, Fraction(3, 2)) == 1
    assert isinstance(p_power(2, Fraction(1, 3)), complex)


def test_inverse_and_division():
    x = Scalar(7, 2, -1, Fraction(1, 3), 4)
    assert x * x.inverse() == 1
    assert (x / x) == 1
    with pytest.raises(ZeroDivisionError):
        Scalar(7, 0).inverse()


def test_complex_view():
    x = Scalar(2, 1, 1, 1)
    assert abs(complex(x) - (1 + 1j + 2 ** 0.5)) < 1e-12


@given(scalars(), scalars(), scalars())
def test_scalar_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert a + b == b + a
    assert a - a == 0


@given(nonzero_scalars(sqrt=True))
def test_scalar_inverse_property(a):
    assert a * a.inverse() == 1


@given(scalars())
def test_text_round_trip(a):
    assert parse_scalar(format_scalar(a), P) == a


def test_format_examples():
    assert format_scalar(Scalar(P, Fraction(1, 2), -3, Fraction(2, 5))) == "1/2 - 3*i + 2/5*sqrt_p"
    assert format_scalar(Scalar(P, 0)) == "0"
    assert format_scalar(Scalar(P, 0, 0, 0, -1)) == "-i*sqrt_p"
    assert parse_scalar("√p*i + 2", P) == Scalar(P, 2, 0, 0, 1)


@pytest.mark.parametrize("bad", ["", "1//2", "1/2x", "+-1", "2 3*i"])
def test_parse_rejects_garbage(bad):
    with pytest.raises(ValueError):
        parse_scalar(bad, P)


def test_rational_hash_matches_fraction():
    assert hash(Scalar(P, Fraction(3, 4))) == hash(Fraction(3, 4))
    assert Scalar(P, Fraction(3, 4)) == Fraction(3, 4)


# -- Series2 ---------------------------------------------------------------

def test_series_order_is_minimum():
    a = Series2.one(P, 5)
    b = Series2.monomial(P, 3, 1, 1, 2)
    assert (a + b).order == 3
    assert (a * b).order == 3


def test_series_truncates_on_construction():
    s = Series2(P, 2, {(0, 0): 1, (2, 1): 5})
    with pytest.raises(IndexError):
        s.coefficient(2, 1)
    assert list(s.items()) == [((0, 0), Scalar(P, 1))]


def test_series_rejects_negative_exponent():
    with pytest.raises(ValueError):
        Series2(P, 2, {(-1, 0): 1})


def test_series_json_round_trip():
    s = Series2(P, 4, {(0, 0): 1, (1, 2): Scalar(P, 1, 2, 3, 4)})
    assert Series2.from_json(s.to_json()) == s


def _rand_series(draw_coeffs, order=4):
    keys = [(a, b) for a in range(order + 1) for b in range(order + 1 - a)]
    return Series2(P, order, dict(zip(keys, draw_coeffs)))


@given(st.lists(scalars(sqrt=False), min_size=15, max_size=15),
       st.lists(scalars(sqrt=False), min_size=15, max_size=15),
       st.lists(scalars(sqrt=False), min_size=15, max_size=15))
def test_series_ring_axioms(xs, ys, zs):
    a, b, c = _rand_series(xs), _rand_series(ys), _rand_series(zs)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a


def test_first_discrepancy_in_graded_order():
    a = Series2(P, 3, {(0, 0): 1, (1, 0): 2, (0, 2): 1})
    b = Series2(P, 3, {(0, 0): 1, (1, 0): 2, (0, 2): 5, (3, 0): 1})
    assert a.first_discrepancy(b) == (0, 2)
    assert a.first_discrepancy(a) is None


# -- geometric and Euler expansions ----------------------------------------

def test_geom_expand_examples():
    assert geom_expand(Scalar(P, 0), 1, 0, 5) == Series2.one(P, 5)
    assert geom_expand(Scalar(P, 1), 1, 0, 3) == Series2(P, 3, {(k, 0): 1 for k in range(4)})
    assert geom_expand(Scalar(P, 2), 1, 1, 4) == Series2(P, 4, {(0, 0): 1, (1, 1): 2, (2, 2): 4})
    with pytest.raises(DegenerateFactorError):
        geom_expand(Scalar(P, 1), 0, 0, 3)


def test_euler_factor_validation():
    with pytest.raises(DegenerateFactorError):
        EulerFactor([(Scalar(P, 1), 0, 0, -1)])
    with pytest.raises(ValueError):
        EulerFactor([(Scalar(P, 1), 1, 0, 2)])


def test_euler_expand_examples():
    assert euler_expand(EulerFactor(), 7, P) == Series2.one(P, 7)
    F = EulerFactor([(Scalar(P, 1), 1, 0, -1)])
    assert euler_expand(F * F.inverse(), 6) == Series2.one(P, 6)
    G = EulerFactor([(Scalar(P, 2), 1, 0, -1), (Scalar(P, Fraction(1, 2)), 1, 0, -1)])
    assert euler_expand(G, 2) == Series2(P, 2, {(0, 0): 1, (1, 0): Fraction(5, 2),
                                                (2, 0): Fraction(21, 4)})


factor_lists = st.lists(
    st.tuples(nonzero_scalars(), st.integers(0, 2), st.integers(0, 2), st.sampled_from([-1, 1]))
    .filter(lambda t: t[1] + t[2] > 0), min_size=0, max_size=4)


@given(factor_lists, factor_lists)
def test_euler_expand_is_multiplicative(fs, gs):
    F, G = EulerFactor(fs), EulerFactor(gs)
    D = 5
    assert euler_expand(F * G, D, P) == euler_expand(F, D, P) * euler_expand(G, D, P)
    assert euler_expand(F, D, P).coefficient(0, 0) == 1
    assert euler_expand(F * F.inverse(), D, P) == Series2.one(P, D)


def test_value_cancels_before_evaluating():
    F = EulerFactor([(Scalar(P, 3), 1, 0, -1), (Scalar(P, 3), 1, 0, 1)])
    x = Scalar(P, Fraction(1, 3))
    assert F.value(x) == 1
    with pytest.raises(PoleError):
        EulerFactor([(Scalar(P, 3), 1, 0, -1)]).value(x)
    assert EulerFactor([(Scalar(P, 3), 1, 0, 1)]).value(x) == 0


def test_evaluated_product_empty_is_one():
    assert evaluated_product([], Scalar(P, 1)) == 1


# -- numeric evaluation ----------------------------------------------------

def test_series_eval_numeric_examples():
    s = Series2(P, 3, {(0, 0): 1, (1, 0): 1})
    assert series_eval_numeric(s, 0, 0) == 1
    F = EulerFactor([(Scalar(P, 1), 1, 0, -1)])
    assert abs(series_eval_numeric(F, 1 / 3) - 1.5) < 1e-12
    with pytest.raises(ConvergenceError, match="X1\\^1"):
        series_eval_numeric(F, 0.9)
    assert abs(series_eval_numeric(F, 0.9, override=True) - 10) < 1e-9


def test_truncated_series_converges_to_factor():
    F = EulerFactor([(Scalar(P, 2), 1, 0, -1), (Scalar(P, -1), 1, 1, -1), (Scalar(P, 1), 2, 0, 1)])
    x1, x2 = 0.2, 0.3 * cmath.exp(0.4j)
    exact = series_eval_numeric(F, x1, x2)
    errs = [abs(series_eval_numeric(euler_expand(F, D), x1, x2) - exact) for D in (4, 8, 16, 32)]
    assert errs == sorted(errs, reverse=True)
    assert errs[-1] < 1e-9
