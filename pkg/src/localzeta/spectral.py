"""Local weights on both sides of the reciprocity and the main-term Euler product."""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import PoleError, PreconditionError
from .lfactors import X1, local_L, local_L_rs
from .reps import RamifiedDescriptor, UnramifiedRep, dual, elem_sym, sigma_pi_z
from .ring import Scalar, evaluated_product, p_power
from .zeta import closed_omega, closed_psi_checked, require_product_one

__all__ = [
    "SPoint",
    "PrimeLocalData",
    "SupportCase",
    "scheck",
    "h_original_unramified",
    "l2_norm_squared",
    "h_support_rule",
    "h_check_dual",
    "h_p0",
    "residue_lambda_expand",
    "h_check_residue_point",
    "residue_majorant",
    "residue_term_local",
    "degenerate_local",
    "main_term_prime_factor",
    "main_term",
]

HALF = Fraction(1, 2)


@dataclass(frozen=True)
class SPoint:
    """A pair (s1, s2) of exact rationals or complex numbers."""

    s1: object
    s2: object

    @classmethod
    def of(cls, s):
        if isinstance(s, SPoint):
            return s
        s1, s2 = s
        return cls(_num(s1), _num(s2))

    def __iter__(self):
        return iter((self.s1, self.s2))


def _num(x):
    if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
        return Fraction(x)
    return complex(x)


@dataclass(frozen=True)
class PrimeLocalData:
    p: int
    Pi: UnramifiedRep
    pi: UnramifiedRep
    f: int = 0
    descriptor: RamifiedDescriptor = RamifiedDescriptor()

    def __post_init__(self):
        if self.Pi.rank != self.pi.rank + 2:
            raise ValueError("ranks of Pi and pi must differ by 2")
        if self.Pi.p != self.p or self.pi.p != self.p:
            raise ValueError("local data must share the residue cardinality")
        if self.f < 0:
            raise ValueError("f must be >= 0")


def scheck(s, n):
    """Dual point ((1 + (n-1) s2 - s1)/n, ((n+1) s1 + s2 - 1)/n)."""
    if n < 2:
        raise ValueError("n must be >= 2")
    s1, s2 = SPoint.of(s)
    return SPoint((1 + (n - 1) * s2 - s1) / n, ((n + 1) * s1 + s2 - 1) / n)


def _exact_point(p, s):
    """p^-s as a Scalar when 2s is an integer, else None."""
    if isinstance(s, Fraction) and (2 * s).denominator == 1:
        return p_power(p, -s)
    return None


def _zeta(p, n):
    return Scalar(p, 1) / (1 - Scalar(p, Fraction(1, p ** n)))


def _L_rs_at_one(sigma):
    """L(1, sigma x dual sigma), exact or numeric."""
    p = sigma.p
    F = local_L_rs(sigma, dual(sigma), X1)
    if sigma.is_exact:
        return F.value(Scalar(p, Fraction(1, p)))
    return evaluated_product(F.at(1 / p), 1 + 0j)


def l2_norm_squared(sigma):
    """L(1, sigma x dual sigma) / zeta_p(n)."""
    n, p = sigma.rank, sigma.p
    zeta_n = _zeta(p, n) if sigma.is_exact else 1 / (1 - p ** (-n))
    return _L_rs_at_one(sigma) / zeta_n


def h_original_unramified(Pi, sigma, pi, s=None):
    """Original-side weight at an unramified place with f = 0:
    zeta_p(n) / L(1, sigma x dual sigma)."""
    n = sigma.rank
    if Pi.rank != n + 1 or pi.rank != n - 1:
        raise ValueError("ranks must be n+1, n, n-1")
    return 1 / l2_norm_squared(sigma)


@dataclass(frozen=True)
class SupportCase:
    kind: str
    epsilon_coefficient: Optional[int] = None
    bound_exponent: Optional[Fraction] = None


def h_support_rule(c_sigma, f, n=None):
    """Classify the original-side weight by conductor exponent versus level.

    For the bounded case the exponent of p in the bound is
    ``epsilon_coefficient * eps + bound_exponent`` (needs ``n``).
    """
    if c_sigma > f:
        return SupportCase("vanishes")
    if c_sigma == f:
        return SupportCase("newvector-case")
    exponent = None if n is None else c_sigma - Fraction(n * (c_sigma + f), 2)
    return SupportCase("bounded-case", f, exponent)


def h_check_dual(sigma, pi, f, s2, descriptor=None):
    """Dual-side weight: zeta_p(n)/L(1, sigma x dual sigma) times the checked
    correction polynomial at X2 = p^-s2.  Zero unless sigma is unramified."""
    if descriptor is not None and descriptor.kind != "unramified":
        return Scalar(sigma.p, 0) if sigma.is_exact else 0j
    require_product_one(sigma, "sigma")
    form = closed_psi_checked(sigma, pi, f)
    x2 = _exact_point(sigma.p, _num(s2)) if sigma.is_exact else None
    if x2 is None:
        x2 = cmath.exp(-complex(s2) * math.log(sigma.p))
        weight = 1 / complex(l2_norm_squared(sigma))
        return weight * form.correction_value(x2)
    return form.correction_value(x2) / l2_norm_squared(sigma)


def h_p0(tau, sigma):
    """Projection onto the fixed supercuspidal: epsilon(1, tau x dual tau) or 0."""
    if tau.kind != "supercuspidal":
        raise PreconditionError("tau supercuspidal", "tau must be a supercuspidal descriptor")
    if tau.epsilon_at_1 is None:
        raise PreconditionError("epsilon_at_1 supplied",
                                "tau needs an epsilon value at s = 1")
    eps = tau.epsilon_at_1
    return eps if sigma == tau else eps * 0


def residue_lambda_expand(pi, r):
    """h_r of the dual of the induced family at z = 1/2, via the L-factor split:
    sum_j h_j(dual pi) p^(j/2) p^(-(r-j)(n-1)/2)."""
    if r < 0:
        raise ValueError("r must be >= 0")
    if not pi.is_exact:
        raise ValueError("exact representation required")
    p, n = pi.p, pi.rank + 1
    pd = dual(pi)
    total = Scalar(p, 0)
    for j in range(r + 1):
        total = total + pd.h(j) * Scalar.half_power(p, j - (r - j) * (n - 1))
    return total


def _residue_sum(pi, f, lam, scale):
    n = pi.rank + 1
    pd = dual(pi)
    total = None
    for k in range(min(f, n - 1) + 1):
        term = elem_sym(pd, k) * lam(f - k) * scale(f * (n - 1) + k)
        if k % 2:
            term = -term
        total = term if total is None else total + term
    return total


def h_check_residue_point(pi, f):
    """Normalized dual weight at the residue point z = 1/2, s = (1/2, 1/2):
    zeta_p(n)/zeta_p(1) sum_k (-1)^k e_k(dual pi) lambda(f-k) p^(-(f(n-1)+k)/2).

    Numeric ``pi`` gives a complex value (used by the decay checks).
    """
    if f < 0:
        raise ValueError("f must be >= 0")
    require_product_one(pi, "pi")
    p, n = pi.p, pi.rank + 1
    if pi.is_exact:
        ratio = _zeta(p, n) / _zeta(p, 1)
        total = _residue_sum(pi, f, lambda r: residue_lambda_expand(pi, r),
                             lambda e: Scalar.half_power(p, -e))
        return ratio * total
    pd = dual(pi)
    sq = math.sqrt(p)

    def lam(r):
        return sum(pd.h(j) * sq ** (j - (r - j) * (n - 1)) for j in range(r + 1))

    ratio = (1 - 1 / p) / (1 - p ** (-n))
    return ratio * _residue_sum(pi, f, lam, lambda e: sq ** (-e))


def residue_majorant(n, p, f):
    """Bound C(f) with |h_check_residue_point| p^(f(n-2)/2) <= C(f) for tempered pi.

    Uses |lambda(r)| <= (r + 1) dim(r) p^(r/2) with dim(r) = binom(r+n-2, n-2)
    and |e_k| <= binom(n-1, k).
    """
    ratio = (1 - 1 / p) / (1 - p ** (-n))
    total = 0.0
    for k in range(min(f, n - 1) + 1):
        r = f - k
        total += math.comb(n - 1, k) * (r + 1) * math.comb(r + n - 2, n - 2) * p ** (-k)
    return ratio * total


def residue_term_local(pi, f, s, descriptor=None):
    """Local residue factor
    L(1, pi x dual pi) L(1 + n(1-s2), pi) L(1 - n(1-s2), dual pi) H(sigma(pi, 1-s2)).

    Coincident Euler factors are cancelled before evaluation, so poles of the
    individual L-values that are cancelled by the weight do not surface.
    """
    if descriptor is not None and descriptor.kind == "supercuspidal":
        return Scalar(pi.p, 0) if pi.is_exact else 0j
    s = SPoint.of(s)
    p, n = pi.p, pi.rank + 1
    require_product_one(pi, "pi")
    shift = 1 - s.s2
    exact = pi.is_exact and _exact_point(p, s.s2) is not None
    if not exact:
        t = cmath.exp(-complex(shift) * math.log(p))
        npi = pi if not pi.is_exact else UnramifiedRep(p, tuple(complex(a) for a in pi.satake))
        sigma = sigma_pi_z(npi, t)
        weight = h_check_dual(sigma, npi, f, complex(s.s2))
        Ls = (evaluated_product(local_L_rs(npi, dual(npi)).at(1 / p), 1 + 0j)
              * evaluated_product(local_L(npi).at(cmath.exp(-(1 + n * complex(shift)) * math.log(p))), 1 + 0j)
              * evaluated_product(local_L(dual(npi)).at(cmath.exp(-(1 - n * complex(shift)) * math.log(p))), 1 + 0j))
        return Ls * weight
    t = p_power(p, -shift)
    sigma = sigma_pi_z(pi, t)
    pairs = []
    pairs += local_L_rs(pi, dual(pi)).at(p_power(p, -1))
    pairs += local_L(pi).at(p_power(p, -(1 + n * shift)))
    pairs += local_L(dual(pi)).at(p_power(p, -(1 - n * shift)))
    # weight = zeta_p(n) / L(1, sigma x dual sigma) * correction
    pairs.append((p_power(p, -n), -1))
    pairs += local_L_rs(sigma, dual(sigma)).inverse().at(p_power(p, -1))
    form = closed_psi_checked(sigma, pi, f)
    return evaluated_product(pairs, Scalar(p, 1)) * form.correction_value(p_power(p, -s.s2))


def degenerate_local(Pi, pi, s, delta=1, mu=0):
    """Degenerate-term local factor: the closed degenerate Euler factor at
    X1 = p^-s1, X2 = p^-s2, times the discriminant factor delta^-mu (default 1)."""
    s = SPoint.of(s)
    p = Pi.p
    F = closed_omega(Pi, pi)
    x1, x2 = _exact_point(p, s.s1), _exact_point(p, s.s2)
    if Pi.is_exact and x1 is not None and x2 is not None:
        value = F.value(x1, x2)
    else:
        x1 = cmath.exp(-complex(s.s1) * math.log(p))
        x2 = cmath.exp(-complex(s.s2) * math.log(p))
        value = evaluated_product(
            [(complex(c) * x1 ** a * x2 ** b, e) for c, a, b, e in F.factors], 1 + 0j)
    if delta != 1 and mu != 0:
        value = complex(value) * complex(delta) ** (-complex(mu))
    return value


def main_term_prime_factor(Pi, pi):
    """L(1, Pi x dual pi) L(n/2, dual Pi) / L(1 + n/2, dual pi), each L-value
    evaluated at its own point in Q(i)[sqrt p]."""
    p = Pi.p
    n = Pi.rank - 1
    pd = dual(pi)
    pairs = []
    pairs += local_L_rs(Pi, pd).at(p_power(p, -1))
    pairs += local_L(dual(Pi)).at(p_power(p, Fraction(-n, 2)))
    pairs += local_L(pd).inverse().at(p_power(p, -1 - Fraction(n, 2)))
    return evaluated_product(pairs, Scalar(p, 1))


def main_term(data, n, p0_index=None, D_inf=1, eps_p0=1, s=(HALF, HALF), delta_factor=1):
    """Finite Euler-product assembly of the main term.

    D_inf * delta_factor * prod_{f_v >= 1} zeta_p(n)/zeta_p(1) / eps_p0 *
    prod_{v != p0} L_v(1, Pi x dual pi) L_v(n/2, dual Pi) / L_v(1 + n/2, dual pi).
    The place ``p0_index`` contributes 1.  Returned as a complex number.
    """
    s = SPoint.of(s)
    if s != SPoint(HALF, HALF):
        raise ValueError("the main term is assembled at s = (1/2, 1/2)")
    if n < 3:
        warnings.warn("main-term assembly is stated for n >= 3", stacklevel=2)
    if not eps_p0:
        raise ValueError("epsilon factor must be nonzero")
    value = complex(D_inf) * complex(delta_factor) / complex(eps_p0)
    for idx, d in enumerate(data):
        if idx == p0_index:
            continue
        if d.Pi.rank != n + 1:
            raise ValueError(f"prime {d.p}: Pi has rank {d.Pi.rank}, expected {n + 1}")
        if d.f >= 1:
            value *= complex(_zeta(d.p, n) / _zeta(d.p, 1))
        value *= complex(main_term_prime_factor(d.Pi, d.pi))
    return value
