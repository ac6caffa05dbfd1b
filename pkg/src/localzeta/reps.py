"""Satake parameters, Schur polynomials and spherical Whittaker values."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .errors import SingularError
from .ring import Scalar

__all__ = [
    "UnramifiedRep",
    "DominantWeight",
    "RamifiedDescriptor",
    "schur",
    "schur_weyl_oracle",
    "whittaker_value",
    "dual",
    "twist",
    "isobaric_sum",
    "sigma_pi_z",
    "elem_sym",
    "complete_sym",
    "weyl_dim",
    "dominant_weights",
    "is_dominant",
    "determinant",
]


def _one_like(x, p):
    return Scalar(p, 1) if isinstance(x, Scalar) else 1 + 0j


@dataclass(frozen=True)
class UnramifiedRep:
    """An unramified representation of GL(n) given by its Satake parameters.

    Parameters are either all exact :class:`Scalar` values (same ``p``) or all
    Python complex numbers (numeric mode).
    """

    p: int
    satake: tuple
    central_product: object = field(init=False, compare=False)
    _h: list = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        satake = tuple(self.satake)
        if not satake:
            raise ValueError("a representation needs at least one Satake parameter")
        if not isinstance(self.p, int) or self.p < 2:
            raise ValueError(f"residue cardinality must be an integer >= 2, got {self.p!r}")
        exact = isinstance(satake[0], Scalar)
        fixed = []
        for a in satake:
            if exact:
                if not isinstance(a, Scalar) or a.p != self.p:
                    raise ValueError("exact Satake parameters must all be Scalars with the same p")
            else:
                if isinstance(a, Scalar):
                    raise ValueError("cannot mix exact and numeric Satake parameters")
                a = complex(a)
            if not a:
                raise ValueError("Satake parameters must be nonzero")
            fixed.append(a)
        object.__setattr__(self, "satake", tuple(fixed))
        prod = _one_like(fixed[0], self.p)
        for a in fixed:
            prod = prod * a
        object.__setattr__(self, "central_product", prod)
        object.__setattr__(self, "_h", [_one_like(fixed[0], self.p)])

    @classmethod
    def exact(cls, p, params):
        """Build from rationals / Scalars, e.g. ``UnramifiedRep.exact(5, [2, Fraction(1, 2)])``."""
        return cls(p, tuple(a if isinstance(a, Scalar) else Scalar(p, a) for a in params))

    @classmethod
    def trivial(cls, p, n=1):
        return cls.exact(p, [1] * n)

    @property
    def rank(self):
        return len(self.satake)

    @property
    def is_exact(self):
        return isinstance(self.satake[0], Scalar)

    def one(self):
        return _one_like(self.satake[0], self.p)

    def zero(self):
        return self.one() * 0

    def h(self, k):
        """Complete homogeneous symmetric polynomial h_k of the parameters (memoized)."""
        if k < 0:
            return self.zero()
        hs = self._h
        if k >= len(hs):
            self._extend_h(k)
        return hs[k]

    def _extend_h(self, k):
        # columns[j][i] = h_i(alpha_1..alpha_j); h_i(first j) = h_i(first j-1) + alpha_j h_{i-1}(first j)
        zero = self.zero()
        cur = [self.one()] + [zero] * k
        for a in self.satake[:1]:
            for i in range(1, k + 1):
                cur[i] = cur[i - 1] * a
        for a in self.satake[1:]:
            for i in range(1, k + 1):
                cur[i] = cur[i] + a * cur[i - 1]
        self._h[:] = cur

    def __repr__(self):
        return f"UnramifiedRep(p={self.p}, satake=({', '.join(str(a) for a in self.satake)}))"


class DominantWeight(tuple):
    """A weakly decreasing integer vector."""

    def __new__(cls, parts):
        parts = tuple(int(x) for x in parts)
        if not is_dominant(parts):
            raise ValueError(f"{parts} is not weakly decreasing")
        return super().__new__(cls, parts)

    @property
    def size(self):
        return sum(self)


def is_dominant(m):
    return all(m[i] >= m[i + 1] for i in range(len(m) - 1))


KINDS = ("unramified", "supercuspidal", "other")


@dataclass(frozen=True)
class RamifiedDescriptor:
    """Bookkeeping for a possibly ramified local component.

    ``label`` distinguishes inequivalent representations with equal conductor;
    ``epsilon_at_1`` is an opaque user-supplied epsilon value.
    """

    conductor: int = 0
    kind: str = "unramified"
    epsilon_at_1: Optional[object] = None
    label: Optional[str] = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"kind must be one of {KINDS}, got {self.kind!r}")
        if self.conductor < 0:
            raise ValueError("conductor exponent must be >= 0")
        if self.kind == "unramified" and self.conductor != 0:
            raise ValueError("an unramified descriptor has conductor exponent 0")


def determinant(rows):
    """Determinant by row-wise Laplace expansion over column subsets.

    Division free, so it works verbatim over any commutative ring; cost is
    O(n 2^n) which is fine for the n <= 6 matrices used here.
    """
    n = len(rows)
    if n == 0:
        return 1
    # partial[mask] = signed sum over injective choices for the first popcount(mask) rows
    partial = {0: None}
    for i, row in enumerate(rows):
        nxt = {}
        for mask, acc in partial.items():
            # sign: number of used columns to the right of j
            for j in range(n):
                bit = 1 << j
                if mask & bit:
                    continue
                entry = row[j]
                if not entry:
                    continue
                inv = bin(mask >> j).count("1")
                term = entry if acc is None else acc * entry
                if inv & 1:
                    term = -term
                key = mask | bit
                if key in nxt:
                    nxt[key] = nxt[key] + term
                else:
                    nxt[key] = term
        partial = nxt
        if not partial:
            return rows[0][0] * 0
    full = (1 << n) - 1
    if full not in partial:
        return rows[0][0] * 0
    return partial[full]


def _jacobi_trudi(R, mu):
    ell = len(mu)
    while ell and mu[ell - 1] == 0:
        ell -= 1
    if ell == 0:
        return R.one()
    if ell == 1:
        return R.h(mu[0])
    R.h(mu[0] + ell)
    rows = [[R.h(mu[i] - i + j) for j in range(ell)] for i in range(ell)]
    return determinant(rows)


def schur(R, m):
    """Schur polynomial of index ``m`` at the Satake parameters of ``R``.

    The weight is shifted to be non-negative, the central product absorbs the
    shift, and the remaining partition is evaluated by the Jacobi-Trudi
    determinant in complete homogeneous polynomials (valid for repeated
    parameters).
    """
    m = tuple(m)
    if len(m) != R.rank:
        raise ValueError(f"weight of length {len(m)} for a rank-{R.rank} representation")
    if not is_dominant(m):
        raise ValueError(f"{m} is not weakly decreasing")
    shift = m[-1]
    mu = tuple(x - shift for x in m)
    value = _jacobi_trudi(R, mu)
    if shift:
        value = value * R.central_product ** shift
    return value


def _power(a, k):
    return a ** k


def schur_weyl_oracle(R, m):
    """Bialternant ratio det[a_j^(m_i+n-i)] / det[a_j^(n-i)]; needs distinct parameters."""
    m = tuple(m)
    n = R.rank
    if len(m) != n:
        raise ValueError(f"weight of length {len(m)} for a rank-{n} representation")
    alpha = R.satake
    den = determinant([[_power(a, n - 1 - i) for a in alpha] for i in range(n)])
    if (not den) if R.is_exact else abs(den) < 1e-300:
        raise SingularError("Vandermonde determinant vanishes: repeated Satake parameters")
    num = determinant([[_power(a, m[i] + n - 1 - i) for a in alpha] for i in range(n)])
    return num / den


def whittaker_value(R, m):
    """Spherical Whittaker value at the torus element with valuations ``m``.

    Returns 0 off the dominant cone, otherwise the modular character
    p^(-(1/2) sum m_i (n - 2i + 1)) times the Schur value.
    """
    m = tuple(m)
    if len(m) != R.rank:
        raise ValueError(f"weight of length {len(m)} for a rank-{R.rank} representation")
    if not is_dominant(m):
        return R.zero()
    n = R.rank
    exponent = sum(mi * (n - 2 * i - 1) for i, mi in enumerate(m))  # i is 0-based
    lam = schur(R, m)
    if R.is_exact:
        return Scalar.half_power(R.p, -exponent) * lam
    return R.p ** (-exponent / 2) * lam


def dual(R):
    return UnramifiedRep(R.p, tuple(1 / a for a in R.satake))


def twist(R, t):
    if not t:
        raise ValueError("twist parameter must be nonzero")
    return UnramifiedRep(R.p, tuple(a * t for a in R.satake))


def isobaric_sum(R1, R2):
    if R1.p != R2.p:
        raise ValueError("isobaric sum of representations with different p")
    return UnramifiedRep(R1.p, R1.satake + R2.satake)


def sigma_pi_z(pi, t):
    """Parameters of the induced family attached to ``pi`` at ``t = p^(-z)``.

    Result has parameters (beta_1 t, ..., beta_{n-1} t, t^(-(n-1))).
    """
    if not t:
        raise ValueError("twist parameter must be nonzero")
    k = pi.rank
    return UnramifiedRep(pi.p, tuple(b * t for b in pi.satake) + (t ** (-k),))


def elem_sym(R, k):
    n = R.rank
    if not 0 <= k <= n:
        raise ValueError(f"elementary symmetric index {k} out of range 0..{n}")
    e = [R.one()] + [R.zero()] * k
    for a in R.satake:
        for j in range(k, 0, -1):
            e[j] = e[j] + a * e[j - 1]
    return e[k]


def complete_sym(R, k):
    return R.h(k)


def weyl_dim(m):
    """Dimension of the GL(n) representation of highest weight ``m`` (Weyl's formula)."""
    m = tuple(m)
    if not is_dominant(m):
        raise ValueError(f"{m} is not weakly decreasing")
    n = len(m)
    num = 1
    den = 1
    for i in range(n):
        for j in range(i + 1, n):
            num *= m[i] - m[j] + j - i
            den *= j - i
    return num // den


def dominant_weights(length, max_total, min_last=0, exact_total=None):
    """Dominant weights with entries >= ``min_last`` and total <= ``max_total``.

    Yields tuples in graded lexicographic order: by total, then lexicographically
    decreasing.  ``exact_total`` restricts to a single grade.
    """
    if length == 0:
        if (exact_total is None or exact_total == 0) and max_total >= 0:
            yield ()
        return
    floor = min_last * length
    grades = range(floor, max_total + 1) if exact_total is None else (
        [exact_total] if floor <= exact_total <= max_total else [])
    for total in grades:
        yield from _weights_of_total(length, total, min_last, total)


def _weights_of_total(length, total, lo, hi):
    # entries in [lo, hi], weakly decreasing, summing to total
    if length == 1:
        if lo <= total <= hi:
            yield (total,)
        return
    top = min(hi, total - lo * (length - 1))
    bottom = -(-total // length)  # first entry is at least the average
    for first in range(top, max(bottom, lo) - 1, -1):
        for rest in _weights_of_total(length - 1, total - first, lo, first):
            yield (first,) + rest
