"""Exact coefficient ring and truncated bivariate power series.

Scalars live in Q(i)[sqrt(p)] for a fixed residue cardinality ``p``.  Series
are power series in X1 = p^{-s1} and X2 = p^{-s2} truncated at a total degree,
and Euler factors are finite products of (1 - c X1^a X2^b)^{+-1}.
"""

from __future__ import annotations

import cmath
import math
import re
from collections import Counter
from fractions import Fraction
from functools import lru_cache
from numbers import Rational

from .errors import (
    ConvergenceError,
    DegenerateFactorError,
    MixedResidueError,
    PoleError,
)

__all__ = [
    "Scalar",
    "Series2",
    "EulerFactor",
    "geom_expand",
    "euler_expand",
    "series_eval_numeric",
    "p_power",
    "format_scalar",
    "parse_scalar",
]


@lru_cache(maxsize=None)
def _square_root(p):
    r = math.isqrt(p)
    return r if r * r == p else None


def _as_fraction(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)) and not isinstance(x, bool):
        return Fraction(x)
    raise TypeError(f"exact scalar component must be rational, got {type(x).__name__}")


class Scalar:
    """Element ``(a_re + a_im i) + (b_re + b_im i) sqrt(p)`` with rational parts.

    Stored as five integers over a common positive denominator, always in
    lowest terms, so equality is structural.  When ``p`` is a perfect square
    the sqrt(p) part is folded into the rational part.
    """

    __slots__ = ("p", "_ar", "_ai", "_br", "_bi", "_d")

    def __init__(self, p, re=0, im=0, sqrt_re=0, sqrt_im=0):
        if not isinstance(p, int) or p < 2:
            raise ValueError(f"residue cardinality must be an integer >= 2, got {p!r}")
        parts = [_as_fraction(x) for x in (re, im, sqrt_re, sqrt_im)]
        d = math.lcm(*(f.denominator for f in parts))
        ints = [f.numerator * (d // f.denominator) for f in parts]
        self._set(p, ints[0], ints[1], ints[2], ints[3], d)

    def _set(self, p, ar, ai, br, bi, d):
        if br or bi:
            r = _square_root(p)
            if r is not None:
                ar += br * r
                ai += bi * r
                br = bi = 0
        g = math.gcd(ar, ai, br, bi, d)
        if g != 1:
            ar //= g
            ai //= g
            br //= g
            bi //= g
            d //= g
        self.p = p
        self._ar, self._ai, self._br, self._bi, self._d = ar, ai, br, bi, d

    @classmethod
    def _raw(cls, p, ar, ai, br, bi, d):
        obj = cls.__new__(cls)
        if d < 0:
            ar, ai, br, bi, d = -ar, -ai, -br, -bi, -d
        obj._set(p, ar, ai, br, bi, d)
        return obj

    # -- constructors -----------------------------------------------------

    @classmethod
    def sqrt_p(cls, p):
        return cls(p, 0, 0, 1)

    @classmethod
    def i(cls, p):
        return cls(p, 0, 1)

    @classmethod
    def half_power(cls, p, k):
        """Return p^(k/2) for an integer ``k``."""
        q, r = divmod(k, 2)
        base = cls(p, Fraction(p) ** q)
        return base * cls.sqrt_p(p) if r else base

    # -- views ------------------------------------------------------------

    @property
    def rational_part(self):
        """Gaussian rational coefficient of 1 as a (re, im) pair of Fractions."""
        return Fraction(self._ar, self._d), Fraction(self._ai, self._d)

    @property
    def sqrt_part(self):
        """Gaussian rational coefficient of sqrt(p) as a (re, im) pair."""
        return Fraction(self._br, self._d), Fraction(self._bi, self._d)

    def components(self):
        return self.rational_part + self.sqrt_part

    def is_gaussian_rational(self):
        return not (self._br or self._bi)

    def is_rational(self):
        return not (self._ai or self._br or self._bi)

    def to_fraction(self):
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return Fraction(self._ar, self._d)

    def conjugate(self):
        """Complex conjugation (sqrt(p) is real)."""
        return Scalar._raw(self.p, self._ar, -self._ai, self._br, -self._bi, self._d)

    def __complex__(self):
        s = math.sqrt(self.p)
        d = self._d
        return complex((self._ar + self._br * s) / d, (self._ai + self._bi * s) / d)

    def __abs__(self):
        return abs(complex(self))

    # -- arithmetic -------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Scalar):
            if other.p != self.p:
                raise MixedResidueError(f"cannot combine p={self.p} with p={other.p}")
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            f = Fraction(other)
            return Scalar._raw(self.p, f.numerator, 0, 0, 0, f.denominator)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        d1, d2 = self._d, o._d
        if d1 == d2:
            return Scalar._raw(self.p, self._ar + o._ar, self._ai + o._ai,
                               self._br + o._br, self._bi + o._bi, d1)
        return Scalar._raw(self.p, self._ar * d2 + o._ar * d1, self._ai * d2 + o._ai * d1,
                           self._br * d2 + o._br * d1, self._bi * d2 + o._bi * d1, d1 * d2)

    __radd__ = __add__

    def __neg__(self):
        return Scalar._raw(self.p, -self._ar, -self._ai, -self._br, -self._bi, self._d)

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        ar, ai, br, bi = self._ar, self._ai, self._br, self._bi
        cr, ci, er, ei = o._ar, o._ai, o._br, o._bi
        if not (br or bi or er or ei):
            return Scalar._raw(self.p, ar * cr - ai * ci, ar * ci + ai * cr, 0, 0,
                               self._d * o._d)
        p = self.p
        # (a + b sqrt p)(c + e sqrt p) = (ac + p be) + (ae + bc) sqrt p
        xr = ar * cr - ai * ci + p * (br * er - bi * ei)
        xi = ar * ci + ai * cr + p * (br * ei + bi * er)
        yr = ar * er - ai * ei + br * cr - bi * ci
        yi = ar * ei + ai * er + br * ci + bi * cr
        return Scalar._raw(p, xr, xi, yr, yi, self._d * o._d)

    __rmul__ = __mul__

    def inverse(self):
        ar, ai, br, bi, d = self._ar, self._ai, self._br, self._bi, self._d
        if not (ar or ai or br or bi):
            raise ZeroDivisionError("inverse of zero scalar")
        p = self.p
        # 1/x = d (A - B sqrt p) conj(G) / |G|^2 with G = A^2 - p B^2
        gr = ar * ar - ai * ai - p * (br * br - bi * bi)
        gi = 2 * (ar * ai - p * br * bi)
        n = gr * gr + gi * gi
        # (A - B sqrt p) * conj(G), conj(G) = gr - i gi
        xr = ar * gr + ai * gi
        xi = ai * gr - ar * gi
        yr = -(br * gr + bi * gi)
        yi = -(bi * gr - br * gi)
        return Scalar._raw(p, d * xr, d * xi, d * yr, d * yi, n)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = Scalar._raw(self.p, 1, 0, 0, 0, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    # -- comparison -------------------------------------------------------

    def __bool__(self):
        return bool(self._ar or self._ai or self._br or self._bi)

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return (self.p == other.p and self._d == other._d and self._ar == other._ar
                    and self._ai == other._ai and self._br == other._br
                    and self._bi == other._bi)
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.is_rational() and Fraction(self._ar, self._d) == other
        return NotImplemented

    def __hash__(self):
        if self.is_rational():
            return hash(Fraction(self._ar, self._d))
        return hash((self.p, self._ar, self._ai, self._br, self._bi, self._d))

    def __repr__(self):
        return f"Scalar(p={self.p}, {format_scalar(self)!r})"

    def __str__(self):
        return format_scalar(self)


def p_power(p, exponent):
    """Return p**exponent, exactly when 2*exponent is an integer, else as complex."""
    if isinstance(exponent, (int, Fraction)) and not isinstance(exponent, bool):
        e2 = Fraction(exponent) * 2
        if e2.denominator == 1:
            return Scalar.half_power(p, int(e2))
    return cmath.exp(complex(exponent) * math.log(p))


# -- text serialization ------------------------------------------------------

_UNITS = ("", "i", "sqrt_p", "i*sqrt_p")
_TERM = re.compile(
    r"""(?P<sign>[+-]?)
        (?:(?P<coef>\d+(?:/\d+)?)(?:\*(?=[is√]))?)?
        (?P<unit>i\*sqrt_p|sqrt_p\*i|i\*√p|√p\*i|sqrt_p|√p|i)?""",
    re.VERBOSE,
)


_ADJACENT = re.compile(r"[\w√]\s+[\w√]")


def format_scalar(x):
    """Canonical text form, e.g. ``'1/2 - 3*i + 2/5*sqrt_p'``; zero is ``'0'``."""
    out = []
    for coef, unit in zip(x.components(), _UNITS):
        if not coef:
            continue
        sign = "-" if coef < 0 else "+"
        mag = abs(coef)
        if unit and mag == 1:
            body = unit
        elif unit:
            body = f"{mag}*{unit}"
        else:
            body = str(mag)
        if not out:
            out.append(body if sign == "+" else f"-{body}")
        else:
            out.append(f"{sign} {body}")
    return " ".join(out) if out else "0"


def parse_scalar(text, p):
    """Inverse of :func:`format_scalar`; accepts any order and repetition of terms."""
    if _ADJACENT.search(str(text)):
        raise ValueError(f"missing operator in scalar {text!r}")
    s = "".join(str(text).split())
    if not s:
        raise ValueError("empty scalar string")
    parts = [Fraction(0)] * 4
    pos = 0
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos or not (m.group("coef") or m.group("unit")):
            raise ValueError(f"cannot parse scalar {text!r} at offset {pos}")
        if pos > 0 and not m.group("sign"):
            raise ValueError(f"missing operator in scalar {text!r} at offset {pos}")
        coef = Fraction(m.group("coef")) if m.group("coef") else Fraction(1)
        if m.group("sign") == "-":
            coef = -coef
        unit = (m.group("unit") or "").replace("√p", "sqrt_p")
        if unit == "sqrt_p*i":
            unit = "i*sqrt_p"
        parts[_UNITS.index(unit)] += coef
        pos = m.end()
    return Scalar(p, *parts)


# -- truncated bivariate series ---------------------------------------------

class Series2:
    """Power series in (X1, X2) truncated at total degree ``order``.

    Coefficients are exact scalars; zero coefficients are never stored.
    """

    __slots__ = ("p", "order", "_c")

    def __init__(self, p, order, coeffs=None):
        if order < 0:
            raise ValueError("truncation order must be >= 0")
        self.p = p
        self.order = order
        c = {}
        for (d1, d2), v in (coeffs or {}).items():
            if d1 < 0 or d2 < 0:
                raise ValueError(f"negative exponent pair {(d1, d2)}")
            if d1 + d2 > order:
                continue
            v = _to_scalar(v, p)
            if v:
                c[(d1, d2)] = v
        self._c = c

    @classmethod
    def _trusted(cls, p, order, coeffs):
        obj = cls.__new__(cls)
        obj.p, obj.order, obj._c = p, order, coeffs
        return obj

    @classmethod
    def one(cls, p, order):
        return cls._trusted(p, order, {(0, 0): Scalar(p, 1)})

    @classmethod
    def zero(cls, p, order):
        return cls._trusted(p, order, {})

    @classmethod
    def monomial(cls, p, order, d1, d2, coeff=1):
        return cls(p, order, {(d1, d2): coeff})

    def coefficient(self, d1, d2):
        if d1 + d2 > self.order:
            raise IndexError(f"exponent {(d1, d2)} beyond truncation order {self.order}")
        return self._c.get((d1, d2), Scalar(self.p, 0))

    def __getitem__(self, key):
        return self.coefficient(*key)

    def items(self):
        """Nonzero coefficients in graded order (total degree, then d2)."""
        return sorted(self._c.items(), key=lambda kv: (kv[0][0] + kv[0][1], kv[0][1]))

    def __len__(self):
        return len(self._c)

    def truncate(self, order):
        order = min(order, self.order)
        return Series2._trusted(self.p, order,
                                {k: v for k, v in self._c.items() if k[0] + k[1] <= order})

    def _check(self, other):
        if not isinstance(other, Series2):
            return False
        if other.p != self.p:
            raise MixedResidueError(f"cannot combine p={self.p} with p={other.p}")
        return True

    def __add__(self, other):
        if not self._check(other):
            other = Series2(self.p, self.order, {(0, 0): other})
        order = min(self.order, other.order)
        c = {k: v for k, v in self._c.items() if k[0] + k[1] <= order}
        for k, v in other._c.items():
            if k[0] + k[1] > order:
                continue
            w = c[k] + v if k in c else v
            if w:
                c[k] = w
            else:
                c.pop(k, None)
        return Series2._trusted(self.p, order, c)

    __radd__ = __add__

    def __neg__(self):
        return Series2._trusted(self.p, self.order, {k: -v for k, v in self._c.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, s):
        s = _to_scalar(s, self.p)
        if not s:
            return Series2.zero(self.p, self.order)
        return Series2._trusted(self.p, self.order, {k: v * s for k, v in self._c.items()})

    def __mul__(self, other):
        if not self._check(other):
            return self.scale(other)
        order = min(self.order, other.order)
        left = sorted(((k[0] + k[1], k, v) for k, v in self._c.items() if k[0] + k[1] <= order),
                      key=lambda t: t[0])
        right = sorted(((k[0] + k[1], k, v) for k, v in other._c.items() if k[0] + k[1] <= order),
                       key=lambda t: t[0])
        c = {}
        for t1, k1, v1 in left:
            budget = order - t1
            for t2, k2, v2 in right:
                if t2 > budget:
                    break
                key = (k1[0] + k2[0], k1[1] + k2[1])
                prod = v1 * v2
                if key in c:
                    c[key] = c[key] + prod
                else:
                    c[key] = prod
        return Series2._trusted(self.p, order, {k: v for k, v in c.items() if v})

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, Series2):
            return NotImplemented
        return self.p == other.p and self.order == other.order and self._c == other._c

    __hash__ = None

    def first_discrepancy(self, other):
        """First exponent pair (graded order) where the series differ, up to the common order."""
        order = min(self.order, other.order)
        keys = {k for k in list(self._c) + list(other._c) if k[0] + k[1] <= order}
        zero = Scalar(self.p, 0)
        for k in sorted(keys, key=lambda k: (k[0] + k[1], k[1])):
            if self._c.get(k, zero) != other._c.get(k, zero):
                return k
        return None

    def evaluate(self, x1, x2):
        x1, x2 = complex(x1), complex(x2)
        return sum((complex(v) * x1 ** k[0] * x2 ** k[1] for k, v in self._c.items()), 0j)

    def to_json(self):
        return {
            "p": self.p,
            "order": self.order,
            "coefficients": [{"d1": k[0], "d2": k[1], "value": format_scalar(v)}
                             for k, v in self.items()],
        }

    @classmethod
    def from_json(cls, obj):
        p = obj["p"]
        return cls(p, obj["order"],
                   {(c["d1"], c["d2"]): parse_scalar(c["value"], p) for c in obj["coefficients"]})

    def __repr__(self):
        terms = " + ".join(f"({v})*X1^{k[0]}*X2^{k[1]}" for k, v in self.items()) or "0"
        return f"Series2(p={self.p}, order={self.order}: {terms})"


def _to_scalar(v, p):
    if isinstance(v, Scalar):
        if v.p != p:
            raise MixedResidueError(f"cannot combine p={p} with p={v.p}")
        return v
    return Scalar(p, v)


def geom_expand(c, a, b, order):
    """Expansion of 1/(1 - c X1^a X2^b) truncated at total degree ``order``."""
    if a == 0 and b == 0:
        raise DegenerateFactorError("Euler factor with exponent pair (0, 0)")
    if a < 0 or b < 0:
        raise ValueError("exponents must be non-negative")
    p = c.p
    coeffs = {}
    power = Scalar(p, 1)
    k = 0
    while k * (a + b) <= order:
        if not power:
            break
        coeffs[(k * a, k * b)] = power
        power = power * c
        k += 1
    return Series2._trusted(p, order, coeffs)


class EulerFactor:
    """Product of factors ``(1 - c X1^a X2^b)^e`` with ``e`` in {-1, +1}.

    ``c`` is a :class:`Scalar` in exact mode or a complex number in numeric mode.
    """

    __slots__ = ("factors",)

    def __init__(self, factors=()):
        checked = []
        for c, a, b, e in factors:
            if a < 0 or b < 0:
                raise ValueError(f"negative exponent in factor {(a, b)}")
            if a + b < 1:
                raise DegenerateFactorError("Euler factor with exponent pair (0, 0)")
            if e not in (-1, 1):
                raise ValueError(f"factor exponent must be +1 or -1, got {e}")
            checked.append((c, a, b, e))
        self.factors = tuple(checked)

    def inverse(self):
        return EulerFactor((c, a, b, -e) for c, a, b, e in self.factors)

    def __mul__(self, other):
        if not isinstance(other, EulerFactor):
            return NotImplemented
        return EulerFactor(self.factors + other.factors)

    def multiset(self):
        return Counter(self.factors)

    def cancelled(self):
        """Drop matching pairs of direct and inverse factors."""
        counts = Counter()
        for c, a, b, e in self.factors:
            counts[(c, a, b)] += e
        out = []
        for (c, a, b), k in counts.items():
            out.extend([(c, a, b, 1 if k > 0 else -1)] * abs(k))
        return EulerFactor(out)

    def same_factors(self, other):
        """Equality as multisets of factors after cancellation."""
        return self.cancelled().multiset() == other.cancelled().multiset()

    def is_exact(self):
        return all(isinstance(c, Scalar) for c, *_ in self.factors)

    def expand(self, order, p=None):
        return euler_expand(self, order, p)

    def value(self, x1, x2=None):
        """Exact value at a point after cancelling coincident factors.

        Raises :class:`PoleError` when a surviving inverse factor vanishes.
        """
        return evaluated_product(self.at(x1, x2))

    def at(self, x1, x2=None):
        """Evaluated factor constants ``[(c x1^a x2^b, e), ...]``."""
        out = []
        for c, a, b, e in self.factors:
            v = c
            if a:
                v = v * x1 ** a
            if b:
                v = v * x2 ** b
            out.append((v, e))
        return out

    def __len__(self):
        return len(self.factors)

    def __repr__(self):
        body = " ".join(f"(1-({c})X1^{a}X2^{b})^{e}" for c, a, b, e in self.factors)
        return f"EulerFactor({body or '1'})"

    def to_json(self):
        return [{"c": format_scalar(c) if isinstance(c, Scalar) else [c.real, c.imag],
                 "a": a, "b": b, "e": e} for c, a, b, e in self.factors]


def evaluated_product(pairs, one=None):
    """Multiply ``(1 - v)^e`` over pairs after cancelling equal constants.

    Zero-valued direct factors give 0; zero-valued inverse factors raise.
    """
    counts = Counter()
    order = []
    for v, e in pairs:
        if v not in counts:
            order.append(v)
        counts[v] += e
    result = one
    for v in order:
        k = counts[v]
        if k == 0:
            continue
        term = 1 - v
        if not term:
            if k < 0:
                raise PoleError(f"pole: factor (1 - {v}) vanishes at the evaluation point")
            return term * 0 if result is None else result * 0
        term = term ** k
        result = term if result is None else result * term
    return 1 if result is None else result


def euler_expand(F, order, p=None):
    """Exact expansion of an Euler factor truncated at total degree ``order``."""
    if p is None:
        if not F.factors:
            raise ValueError("residue cardinality needed to expand an empty product")
        p = F.factors[0][0].p
    out = Series2.one(p, order)
    for c, a, b, e in F.factors:
        if e == -1:
            out = out * geom_expand(c, a, b, order)
        elif a + b <= order:
            out = out * Series2(p, order, {(0, 0): 1, (a, b): -c})
    return out


MARGIN = 0.5


def series_eval_numeric(obj, x1, x2=0j, override=False):
    """Floating evaluation of a :class:`Series2` or an :class:`EulerFactor`.

    Inverse Euler factors must satisfy ``|c x1^a x2^b| <= 1/2`` unless
    ``override`` is set; otherwise :class:`ConvergenceError` names the factor.
    """
    x1, x2 = complex(x1), complex(x2)
    if isinstance(obj, Series2):
        return obj.evaluate(x1, x2)
    value = 1 + 0j
    for c, a, b, e in obj.factors:
        t = complex(c) * x1 ** a * x2 ** b
        if e == -1 and abs(t) > MARGIN and not override:
            raise ConvergenceError(
                f"factor (1 - ({c}) X1^{a} X2^{b})^-1 has |term| = {abs(t):.6g} > {MARGIN}")
        base = 1 - t
        if e == -1:
            if base == 0:
                raise PoleError(f"pole at factor (1 - ({c}) X1^{a} X2^{b})")
            value /= base
        else:
            value *= base
    return value
