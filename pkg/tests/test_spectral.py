import cmath
import math
import random
import warnings
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from helpers import product_one, rep
from localzeta.errors import PoleError, PreconditionError
from localzeta.lfactors import local_L, local_L_rs, zeta_value
from localzeta.reps import RamifiedDescriptor, UnramifiedRep, dual, schur, sigma_pi_z
from localzeta.ring import Scalar, p_power
from localzeta.spectral import (
    PrimeLocalData,
    SPoint,
    degenerate_local,
    h_check_dual,
    h_check_residue_point,
    h_original_unramified,
    h_p0,
    h_support_rule,
    l2_norm_squared,
    main_term,
    main_term_prime_factor,
    residue_lambda_expand,
    residue_majorant,
    residue_term_local,
    scheck,
)
from localzeta.zeta import closed_l2, closed_omega

HALF = Fraction(1, 2)
rationals = st.fractions(min_value=-50, max_value=50, max_denominator=100)


# -- the involution -----------------------------------------------------------

def test_scheck_examples():
    assert tuple(scheck((HALF, HALF), 4)) == (HALF, HALF)
    assert tuple(scheck((1, 0), 3)) == (0, 1)
    with pytest.raises(ValueError):
        scheck((0, 0), 1)


@given(rationals, rationals, st.integers(2, 6))
def test_scheck_is_involution(s1, s2, n):
    assert tuple(scheck(scheck((s1, s2), n), n)) == (s1, s2)


@given(rationals, st.integers(2, 6))
def test_diagonal_fixed_point_is_unique(t, n):
    fixed = tuple(scheck((t, t), n)) == (t, t)
    assert fixed == (t == HALF)


# -- original-side weight -----------------------------------------------------

def test_h_original_positive_for_unitary():
    alpha = cmath.exp(0.7j)
    sigma = UnramifiedRep(5, (alpha, 1 / alpha))
    v = h_original_unramified(UnramifiedRep(5, (1, 1, 1)), sigma, UnramifiedRep(5, (1,)))
    assert abs(v.imag) < 1e-12 and v.real > 0


def test_h_original_inverts_l2_norm():
    p = 3
    sigma = rep(p, 2, Fraction(-1, 5), Fraction(5, 2))
    v = h_original_unramified(rep(p, 1, 1, 1, 1), sigma, rep(p, 1, 1))
    norm = closed_l2(sigma, dual(sigma)).value(Scalar(p, Fraction(1, p)))
    assert v * norm == 1
    assert l2_norm_squared(sigma) == norm


def test_h_original_pole_on_parameter_collision():
    p = 3
    with pytest.raises(PoleError):
        h_original_unramified(rep(p, 1, 1, 1), rep(p, 3, 1), rep(p, 1))


def test_h_original_repeated_trivial_is_finite_locally():
    # a local zeta_p(1) is finite, so trivial + trivial gives zeta(2) / zeta(1)^4
    p = 3
    v = h_original_unramified(rep(p, 1, 1, 1), rep(p, 1, 1), rep(p, 1))
    assert v == zeta_value(p, 2) / zeta_value(p, 1) ** 4


def test_h_original_rank_check():
    with pytest.raises(ValueError):
        h_original_unramified(rep(3, 1, 1), rep(3, 1, 1), rep(3, 1))


def test_h_support_rule():
    assert h_support_rule(3, 1).kind == "vanishes"
    assert h_support_rule(2, 2).kind == "newvector-case"
    case = h_support_rule(0, 4, n=3)
    assert case.kind == "bounded-case"
    assert case.epsilon_coefficient == 4 and case.bound_exponent == -6


# -- dual-side weight ---------------------------------------------------------

def test_h_check_dual_f0_matches_original():
    p = 5
    sigma, pi = product_one(p, 2, Fraction(-1, 3)), rep(p, 7, Fraction(1, 4))
    for s2 in (HALF, Fraction(3, 2), Fraction(-1)):
        assert h_check_dual(sigma, pi, 0, s2) == h_original_unramified(
            rep(p, 1, 1, 1, 1), sigma, pi)


def test_h_check_dual_ramified_vanishes():
    p = 5
    sigma, pi = product_one(p, 2, 3), rep(p, 1, 1)
    desc = RamifiedDescriptor(2, "other")
    assert h_check_dual(sigma, pi, 3, HALF, desc) == 0


def test_h_check_dual_numeric_path_matches_exact():
    p = 3
    sigma, pi = product_one(p, 2, Fraction(1, 5)), rep(p, Fraction(-1, 2), 3)
    exact = h_check_dual(sigma, pi, 2, HALF)
    to_c = UnramifiedRep
    num = h_check_dual(to_c(p, tuple(complex(a) for a in sigma.satake)),
                       to_c(p, tuple(complex(a) for a in pi.satake)), 2, 0.5)
    assert abs(complex(exact) - num) < 1e-9 * max(1, abs(num))


def test_h_check_dual_decay_tempered():
    rng = random.Random(4)
    for n in (2, 3, 4):
        p = 3
        a = [cmath.exp(2j * math.pi * rng.random()) for _ in range(n - 1)]
        sigma = UnramifiedRep(p, tuple(a) + (1 / math.prod(a),))
        pi = UnramifiedRep(p, tuple(cmath.exp(2j * math.pi * rng.random()) for _ in range(n - 1)))
        for f in (4, 7, 10):
            v = abs(h_check_dual(sigma, pi, f, 0.5 + 2j)) * p ** (f * (n - 1) / 2)
            assert v <= 2 ** n * (f + n) ** (n - 1)


# -- supercuspidal projection ---------------------------------------------------

def test_h_p0():
    tau = RamifiedDescriptor(3, "supercuspidal", Scalar(5, 1), "tau")
    assert h_p0(tau, tau) == 1
    e = Scalar(5, Fraction(3, 5), Fraction(4, 5))
    tau_e = RamifiedDescriptor(3, "supercuspidal", e, "tau")
    assert h_p0(tau_e, tau_e) == e
    others = [RamifiedDescriptor(3, "supercuspidal", e, "tau2"), RamifiedDescriptor(),
              RamifiedDescriptor(3, "other", e, "tau")]
    assert all(h_p0(tau_e, s) == 0 for s in others)
    with pytest.raises(PreconditionError):
        h_p0(RamifiedDescriptor(3, "supercuspidal"), tau)
    with pytest.raises(PreconditionError):
        h_p0(RamifiedDescriptor(3, "other", e), tau)


# -- residue point -----------------------------------------------------------

def test_residue_lambda_examples():
    assert residue_lambda_expand(rep(2, 1), 0) == 1
    assert residue_lambda_expand(rep(2, 1), 2) == Fraction(7, 2)


def test_residue_lambda_matches_direct_schur():
    rng = random.Random(9)
    for n in (2, 3, 4):
        for p in (2, 3, 5):
            pi = rep(p, *[Fraction(rng.randint(-9, 9) or 1, rng.randint(1, 9)) for _ in range(n - 1)])
            target = dual(sigma_pi_z(pi, Scalar.half_power(p, -1)))
            for r in range(11):
                assert residue_lambda_expand(pi, r) == schur(target, (r,) + (0,) * (n - 1))


def test_residue_point_f0():
    for n in (2, 3, 4):
        p = 5
        pi = product_one(p, *[Fraction(k + 2, 3) for k in range(n - 2)]) if n > 2 else rep(p, 1)
        assert h_check_residue_point(pi, 0) == zeta_value(p, n) / zeta_value(p, 1)


def test_residue_point_needs_product_one():
    with pytest.raises(PreconditionError):
        h_check_residue_point(rep(3, 2, 1), 1)


def test_residue_point_two_routes():
    p = 3
    for n in (3, 4):
        pi = product_one(p, *[Scalar(p, Fraction(k + 2, 5), Fraction(1, k + 2)) for k in range(n - 2)])
        sigma = sigma_pi_z(pi, Scalar.half_power(p, -1))
        for f in range(5):
            direct = h_check_residue_point(pi, f)
            via_dual = (h_check_dual(sigma, pi, f, HALF)
                        * local_L_rs(pi, dual(pi)).value(p_power(p, -1))
                        * local_L(pi).value(p_power(p, -1 - Fraction(n, 2)))
                        * local_L(dual(pi)).value(p_power(p, -1 + Fraction(n, 2))))
            assert direct == via_dual
            assert direct == residue_term_local(pi, f, (HALF, HALF))


def test_residue_point_majorant():
    rng = random.Random(8)
    for n in (2, 3, 4, 5):
        for p in (2, 3, 5):
            a = [cmath.exp(2j * math.pi * rng.random()) for _ in range(n - 2)]
            pi = UnramifiedRep(p, tuple(a) + (1 / math.prod(a),))
            for f in range(11):
                v = abs(h_check_residue_point(pi, f)) * p ** (f * (n - 2) / 2)
                assert v <= residue_majorant(n, p, f) * (1 + 1e-9)


def test_residue_term_examples():
    pi = rep(3, 1)
    # zeta(1) zeta(2) L(0) x zeta(2) / L(1, sigma x dual sigma) collapses to zeta(2) / zeta(1)
    assert residue_term_local(pi, 0, (HALF, HALF)) == Fraction(3, 4)
    sc = RamifiedDescriptor(2, "supercuspidal", Scalar(3, 1))
    assert residue_term_local(pi, 0, (HALF, HALF), sc) == 0
    # s2 = 1 gives t = 1; every local factor stays finite
    assert residue_term_local(pi, 0, (1, 1)) == Fraction(3, 4)


def test_residue_term_numeric_path():
    p = 3
    pi = product_one(p, Fraction(2, 7), Fraction(-3, 2))
    exact = residue_term_local(pi, 2, (HALF, Fraction(3, 2)))
    num = residue_term_local(pi, 2, SPoint(0.5, 1.5 + 0j))
    assert abs(complex(exact) - num) < 1e-9 * max(1, abs(num))
    off = residue_term_local(pi, 2, SPoint(HALF, Fraction(1, 3)))
    assert isinstance(off, complex)


# -- degenerate term and main term --------------------------------------------

def _random_data(rng, p, n, f=0, desc=None):
    def q():
        return Fraction(rng.randint(-20, 20) or 1, rng.randint(1, 20))
    Pi = product_one(p, *[Scalar(p, q(), q()) for _ in range(n)])
    pi = rep(p, *[Scalar(p, q(), q()) for _ in range(n - 1)])
    return PrimeLocalData(p, Pi, pi, f, desc or RamifiedDescriptor())


def test_prime_local_data_validation():
    with pytest.raises(ValueError):
        PrimeLocalData(3, rep(3, 1, 1, 1), rep(3, 1, 1))
    with pytest.raises(ValueError):
        PrimeLocalData(5, rep(3, 1, 1, 1), rep(3, 1))


def test_degenerate_local_is_closed_omega():
    rng = random.Random(1)
    d = _random_data(rng, 5, 3)
    s = (Fraction(3, 2), Fraction(1, 2))
    x1, x2 = p_power(5, -s[0]), p_power(5, -s[1])
    assert degenerate_local(d.Pi, d.pi, s) == closed_omega(d.Pi, d.pi).value(x1, x2)
    num = degenerate_local(d.Pi, d.pi, SPoint(1.5, 0.5 + 0j))
    assert abs(num - complex(degenerate_local(d.Pi, d.pi, s))) < 1e-9 * abs(num)


def test_main_term_empty_and_p0_only():
    assert main_term([], 3) == 1
    rng = random.Random(2)
    tau = RamifiedDescriptor(1, "supercuspidal", Scalar(7, 1))
    d = _random_data(rng, 7, 3, desc=tau)
    assert main_term([d], 3, p0_index=0, D_inf=2, eps_p0=Fraction(1, 2)) == 4


def test_main_term_per_prime_factor_two_routes():
    rng = random.Random(3)
    for k in range(10):
        n = 3 + k % 2
        d = _random_data(rng, (2, 3, 5, 7)[k % 4], n)
        assert main_term_prime_factor(d.Pi, d.pi) == degenerate_local(d.Pi, d.pi, (HALF, HALF))


def test_main_term_assembly():
    rng = random.Random(4)
    data = [_random_data(rng, 2, 3, f=1), _random_data(rng, 3, 3),
            _random_data(rng, 5, 3, desc=RamifiedDescriptor(1, "supercuspidal", Scalar(5, 1)))]
    got = main_term(data, 3, p0_index=2, D_inf=1.5, eps_p0=Scalar(5, 0, 1))
    want = 1.5 / 1j
    want *= complex(zeta_value(2, 3) / zeta_value(2, 1))
    for d in data[:2]:
        want *= complex(main_term_prime_factor(d.Pi, d.pi))
    assert abs(got - want) < 1e-12 * abs(want)
    # reduction order does not matter
    again = main_term([data[1], data[2], data[0]], 3, p0_index=1, D_inf=1.5, eps_p0=Scalar(5, 0, 1))
    assert abs(got - again) < 1e-12 * abs(want)


def test_main_term_warns_for_small_n():
    rng = random.Random(5)
    d = _random_data(rng, 3, 2)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        main_term([d], 2)
    assert any("n >= 3" in str(w.message) for w in caught)


def test_main_term_only_at_half():
    with pytest.raises(ValueError):
        main_term([], 3, s=(1, 1))
