"""Shared hypothesis strategies and small constructors for the test suite."""

from fractions import Fraction

from hypothesis import strategies as st

from localzeta.reps import UnramifiedRep
from localzeta.ring import Scalar

small = st.fractions(min_value=-20, max_value=20, max_denominator=12)
nonzero_small = small.filter(bool)


def scalars(p=3, sqrt=True):
    parts = st.tuples(small, small, small if sqrt else st.just(Fraction(0)),
                      small if sqrt else st.just(Fraction(0)))
    return parts.map(lambda t: Scalar(p, *t))


def nonzero_scalars(p=3, sqrt=False):
    return scalars(p, sqrt).filter(bool)


def reps(n, p=3, distinct=False):
    params = st.lists(nonzero_scalars(p), min_size=n, max_size=n,
                      unique_by=(lambda a: a) if distinct else None)
    return params.map(lambda xs: UnramifiedRep(p, tuple(xs)))


def rep(p, *params):
    """Exact representation from ints, Fractions, strings like '1/2' or Scalars."""
    return UnramifiedRep.exact(p, [x if isinstance(x, Scalar) else Fraction(x) for x in params])


def product_one(p, *params):
    """Append the parameter that makes the product one."""
    prod = Scalar(p, 1)
    for x in params:
        prod = prod * x
    return rep(p, *params, 1 / prod)
