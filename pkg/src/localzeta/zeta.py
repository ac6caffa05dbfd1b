"""Local Rankin-Selberg zeta integrals at the level of Schur values.

Each integral exists twice: a brute-force sum over truncated dominant weights
and a closed form.  The two are compared coefficient by coefficient.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Optional

from .errors import PreconditionError
from .lfactors import SVarSpec, X1, X2, local_L, local_L_rs
from .reps import (
    UnramifiedRep,
    dominant_weights,
    dual,
    elem_sym,
    schur,
    weyl_dim,
)
from .ring import EulerFactor, Scalar, Series2, euler_expand

__all__ = [
    "ZetaReport",
    "CheckedClosedForm",
    "TailReport",
    "brute_psi_rs",
    "closed_psi_rs",
    "brute_psi_checked",
    "closed_psi_checked",
    "brute_omega",
    "closed_omega",
    "l2_series",
    "closed_l2",
    "compare",
    "whittaker_tail_check",
    "checked_ratio_numeric",
    "checked_decay_majorant",
    "to_numeric",
    "require_product_one",
]


@dataclass
class ZetaReport:
    brute: Series2
    closed: Series2
    order: int
    equal: bool
    first_discrepancy: Optional[tuple] = None


def compare(brute, closed):
    """Coefficient-exact comparison up to the common truncation order."""
    order = min(brute.order, closed.order)
    bad = brute.first_discrepancy(closed)
    return ZetaReport(brute.truncate(order), closed.truncate(order), order, bad is None, bad)


def require_product_one(R, name):
    w = R.central_product
    ok = (w == 1) if R.is_exact else abs(w - 1) < 1e-9
    if not ok:
        raise PreconditionError(f"central_product({name}) = 1",
                                f"central_product({name}) = 1 is required, got {w}")


def _check_p(*reps):
    p = reps[0].p
    if any(R.p != p for R in reps):
        raise ValueError("all representations must share the residue cardinality p")
    return p


def _accumulate(coeffs, key, value):
    if key in coeffs:
        coeffs[key] = coeffs[key] + value
    else:
        coeffs[key] = value


def brute_psi_rs(Pi, sigma, order):
    """sum over dominant m >= 0 of length n of s_(m,0)(Pi) s_m(dual sigma) X1^|m|."""
    p = _check_p(Pi, sigma)
    n = sigma.rank
    if Pi.rank != n + 1:
        raise ValueError(f"rank mismatch: Pi has rank {Pi.rank}, sigma has rank {n}")
    sd = dual(sigma)
    coeffs = {}
    for m in dominant_weights(n, order):
        _accumulate(coeffs, (sum(m), 0), schur(Pi, m + (0,)) * schur(sd, m))
    return Series2(p, order, coeffs)


def closed_psi_rs(Pi, sigma):
    """L(s1, Pi x dual sigma) as an Euler factor in X1."""
    return local_L_rs(Pi, dual(sigma), X1)


def brute_psi_checked(sigma, pi, f, order):
    """Sum over dominant m of length n-1 with last entry >= f of
    s_(m,0)(sigma) s_m(dual pi) X2^|m|."""
    p = _check_p(sigma, pi)
    n = sigma.rank
    if pi.rank != n - 1:
        raise ValueError(f"rank mismatch: sigma has rank {n}, pi has rank {pi.rank}")
    if f < 0:
        raise ValueError("f must be >= 0")
    pd = dual(pi)
    coeffs = {}
    for m in dominant_weights(n - 1, order, min_last=f):
        _accumulate(coeffs, (0, sum(m)), schur(sigma, m + (0,)) * schur(pd, m))
    return Series2(p, order, coeffs)


@dataclass
class CheckedClosedForm:
    """L(s2, sigma x dual pi) times a correction polynomial in X2."""

    L: EulerFactor
    correction: dict
    p: int

    def expand(self, order):
        poly = Series2(self.p, order, self.correction)
        return euler_expand(self.L, order, self.p) * poly

    def correction_value(self, x2):
        """Correction polynomial at X2 = x2 (Scalar or complex)."""
        total = None
        for (_, d2), c in self.correction.items():
            term = c * x2 ** d2 if isinstance(x2, Scalar) else complex(c) * x2 ** d2
            total = term if total is None else total + term
        return total if total is not None else x2 * 0


def closed_psi_checked(sigma, pi, f):
    """Closed form of the checked zeta integral for product-one ``sigma``.

    correction = w^f sum_{k <= min(f, n-1)} (-1)^k e_k(dual pi) h_{f-k}(dual sigma)
    X2^(f(n-1)+k), where w = central_product(dual pi) (1 for trivial central
    character; the factor comes from shifting the pi-weights by f).
    """
    p = _check_p(sigma, pi)
    n = sigma.rank
    if pi.rank != n - 1:
        raise ValueError(f"rank mismatch: sigma has rank {n}, pi has rank {pi.rank}")
    if f < 0:
        raise ValueError("f must be >= 0")
    require_product_one(sigma, "sigma")
    sd, pd = dual(sigma), dual(pi)
    w = pd.central_product ** f
    correction = {}
    for k in range(min(f, n - 1) + 1):
        c = elem_sym(pd, k) * sd.h(f - k) * w
        if k % 2:
            c = -c
        if c:
            correction[(0, f * (n - 1) + k)] = c
    return CheckedClosedForm(local_L_rs(sigma, pd, X2), correction, p)


def brute_omega(Pi, pi, order):
    """Double sum over dominant m >= 0 (length n-1) and l >= 0 of
    s_(m+l,l,0)(Pi) s_m(dual pi) (X1 X2)^|m| X1^(n l)."""
    p = _check_p(Pi, pi)
    n = Pi.rank - 1
    if pi.rank != n - 1:
        raise ValueError(f"rank mismatch: Pi has rank {Pi.rank}, pi has rank {pi.rank}")
    require_product_one(Pi, "Pi")
    pd = dual(pi)
    coeffs = {}
    l = 0
    while n * l <= order:
        for m in dominant_weights(n - 1, (order - n * l) // 2):
            size = sum(m)
            weight = tuple(x + l for x in m) + (l, 0)
            _accumulate(coeffs, (size + n * l, size), schur(Pi, weight) * schur(pd, m))
        l += 1
    return Series2(p, order, coeffs)


def closed_omega(Pi, pi):
    """L(s1+s2, Pi x dual pi) L(n s1, dual Pi) / L((n+1) s1 + s2, dual pi)."""
    _check_p(Pi, pi)
    n = Pi.rank - 1
    if pi.rank != n - 1:
        raise ValueError(f"rank mismatch: Pi has rank {Pi.rank}, pi has rank {pi.rank}")
    require_product_one(Pi, "Pi")
    pd = dual(pi)
    return (local_L_rs(Pi, pd, SVarSpec(1, 1))
            * local_L(dual(Pi), SVarSpec(n, 0))
            * local_L(pd, SVarSpec(n + 1, 1)).inverse())


def l2_series(sigma, sigma2, order):
    """sum over dominant m >= 0 of length n-1 of s_(m,0)(sigma) s_(m,0)(sigma2) X1^|m|."""
    p = _check_p(sigma, sigma2)
    n = sigma.rank
    if sigma2.rank != n:
        raise ValueError("rank mismatch in L2 pairing")
    coeffs = {}
    for m in dominant_weights(n - 1, order):
        w = m + (0,)
        _accumulate(coeffs, (sum(m), 0), schur(sigma, w) * schur(sigma2, w))
    return Series2(p, order, coeffs)


def closed_l2(sigma, sigma2):
    """L(s, sigma x sigma2) (1 - w w' X1^n): the weights with last entry 0 drop
    the central-character geometric factor from the full Cauchy sum."""
    _check_p(sigma, sigma2)
    n = sigma.rank
    if sigma2.rank != n:
        raise ValueError("rank mismatch in L2 pairing")
    w = sigma.central_product * sigma2.central_product
    return local_L_rs(sigma, sigma2, X1) * EulerFactor([(w, n, 0, 1)])


def to_numeric(R):
    return R if not R.is_exact else UnramifiedRep(R.p, tuple(complex(a) for a in R.satake))


def _require_tempered(R, name, tol=1e-9):
    if any(abs(abs(complex(a)) - 1) > tol for a in R.satake):
        raise PreconditionError(f"{name} tempered",
                                f"{name} must have unit-modulus Satake parameters")


@dataclass
class TailReport:
    l: int
    value: complex
    majorant: float
    majorant_l0: float
    scaled: float
    ok: bool


def whittaker_tail_check(Pi, xi, l, s, order):
    """Truncated GL(n+1) x GL(n-1) sum at fixed last valuation ``l`` with its majorant.

    value = p^(-n l/2) sum_{m_(n-1) >= l, |m| <= order} s_(m,l,0)(Pi) s_m(dual xi) p^(-s|m|);
    the majorant replaces Schur values by Weyl dimensions.  Passes when
    |value| <= majorant(l) and |value| p^(n l/2) <= majorant(0).
    """
    p = _check_p(Pi, xi)
    n = Pi.rank - 1
    if xi.rank != n - 1:
        raise ValueError(f"rank mismatch: Pi has rank {Pi.rank}, xi has rank {xi.rank}")
    Pi, xi = to_numeric(Pi), to_numeric(xi)
    _require_tempered(Pi, "Pi")
    _require_tempered(xi, "xi")
    s = complex(s)
    xd = dual(xi)
    logp = math.log(p)

    def sums(level):
        val = 0j
        maj = 0.0
        for m in dominant_weights(n - 1, order, min_last=level):
            k = sum(m)
            w = m + (level, 0)
            val += schur(Pi, w) * schur(xd, m) * cmath.exp(-s * k * logp)
            maj += weyl_dim(w) * weyl_dim(m) * math.exp(-s.real * k * logp)
        scale = p ** (-n * level / 2)
        return val * scale, maj * scale

    value, majorant = sums(l)
    _, majorant0 = sums(0)
    scaled = abs(value) * p ** (n * l / 2)
    tol = 1e-9 * (1 + majorant0)
    ok = abs(value) <= majorant + tol and scaled <= majorant0 + tol
    return TailReport(l, value, majorant, majorant0, scaled, ok)


def checked_ratio_numeric(sigma, pi, f, s2):
    """Numeric value of the correction polynomial (zeta integral over L) at X2 = p^-s2."""
    sigma, pi = to_numeric(sigma), to_numeric(pi)
    form = closed_psi_checked(sigma, pi, f)
    return form.correction_value(cmath.exp(-complex(s2) * math.log(sigma.p)))


def checked_decay_majorant(n, f):
    """2^n (f + n)^(n-1): envelope for p^(f(n-1)/2) |correction| on Re(s2) = 1/2."""
    return 2 ** n * (f + n) ** (n - 1)
