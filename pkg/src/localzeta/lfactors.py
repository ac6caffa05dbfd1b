"""Local L, zeta and gamma factors, the congruence index and conductor bookkeeping."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import PoleError, PreconditionError
from .reps import UnramifiedRep, dual
from .ring import EulerFactor, Scalar, evaluated_product

__all__ = [
    "SVarSpec",
    "X1",
    "X2",
    "local_L",
    "local_L_rs",
    "local_zeta",
    "zeta_value",
    "gamma_numeric",
    "gamma_bound_check",
    "eta_index",
    "cs_local",
    "conductor_rules",
]


@dataclass(frozen=True)
class SVarSpec:
    """Argument of an L-factor as a monomial X1^a X2^b per unit of s.

    (1, 0) is s1, (1, 1) is s1 + s2, (n, 0) is n s1, (n + 1, 1) is (n+1) s1 + s2.
    """

    a: int
    b: int

    def __post_init__(self):
        if self.a < 0 or self.b < 0 or (self.a, self.b) == (0, 0):
            raise ValueError(f"invalid argument exponents {(self.a, self.b)}")


X1 = SVarSpec(1, 0)
X2 = SVarSpec(0, 1)


def local_L(R, v=X1):
    """L(s, R) = prod_i (1 - alpha_i X)^-1 with X the monomial described by ``v``."""
    return EulerFactor((alpha, v.a, v.b, -1) for alpha in R.satake)


def local_L_rs(R1, R2, v=X1):
    """Rankin-Selberg factor: one inverse factor per product of parameters."""
    if R1.p != R2.p:
        raise ValueError("Rankin-Selberg factor of representations with different p")
    return EulerFactor((a * b, v.a, v.b, -1) for a in R1.satake for b in R2.satake)


def local_zeta(p, v=X1):
    """zeta_p as an Euler factor, exact."""
    return EulerFactor([(Scalar(p, 1), v.a, v.b, -1)])


def zeta_value(p, s):
    """zeta_p(s) = 1/(1 - p^-s) for an integer ``s`` as an exact Scalar."""
    return Scalar(p, 1) / (1 - Scalar(p, Fraction(1, p ** s) if s >= 0 else p ** (-s)))


def gamma_numeric(R, s, margin=1e-9):
    """gamma(s, R) = L(1 - s, dual R) / L(s, R) for unramified R (epsilon = 1)."""
    p = R.p
    s = complex(s)
    num = 1 + 0j
    den = 1 + 0j
    for alpha in R.satake:
        a = complex(alpha)
        num *= 1 - a * cmath.exp(-s * math.log(p))
        back = 1 - cmath.exp(-(1 - s) * math.log(p)) / a
        if abs(back) < margin:
            raise PoleError(f"s = {s} is within {margin} of a pole of L(1 - s, dual R)")
        den *= back
    return num / den


def gamma_bound_check(R, s, theta=None):
    """Compare |gamma(1/2 - s, R)| with 2^n (1 + p^(n (Re s - 1/2 + theta))).

    Returns ``(value, bound, ok)``; ``theta`` defaults to log_p max |alpha_i|.
    """
    p, n = R.p, R.rank
    if theta is None:
        theta = max(math.log(abs(complex(a)), p) for a in R.satake)
    value = abs(gamma_numeric(R, 0.5 - complex(s)))
    bound = 2 ** n * (1 + p ** (n * (complex(s).real - 0.5 + theta)))
    return value, bound, value <= bound


def eta_index(p, f, n):
    """Index [GL_n(o) : K_0(p^f)], i.e. the number of points of P^(n-1)(o / p^f)."""
    if f < 0 or n < 2:
        raise ValueError("need f >= 0 and n >= 2")
    if f == 0:
        return Fraction(1)
    return Fraction(p ** ((f - 1) * (n - 1)) * (p ** n - 1), p - 1)


def cs_local(reps):
    """Local Casselman-Shalika factor prod_{i<j} L(1, R_i x dual R_j), exactly.

    Isomorphic constituents (equal parameter multisets) violate the
    non-isomorphic hypothesis and are refused, as is any pole at s = 1.
    """
    reps = list(reps)
    if not reps:
        raise ValueError("need at least one representation")
    p = reps[0].p
    if any(R.p != p for R in reps):
        raise ValueError("all constituents must share p")
    x = Scalar(p, Fraction(1, p))
    pairs = []
    for i in range(len(reps)):
        for j in range(i + 1, len(reps)):
            if sorted(map(str, reps[i].satake)) == sorted(map(str, reps[j].satake)):
                raise PoleError(f"constituents {i} and {j} are isomorphic")
            pairs.extend(local_L_rs(reps[i], dual(reps[j])).at(x))
    return evaluated_product(pairs, Scalar(p, 1))


def conductor_rules(d1, d2, n1, n2):
    """Exponent bound n2 c1 + n1 c2 for the conductor of a tensor product."""
    return n2 * d1.conductor + n1 * d2.conductor
