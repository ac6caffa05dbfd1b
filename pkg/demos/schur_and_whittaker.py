"""
Schur values and spherical Whittaker functions
==============================================

Torus values of the normalized spherical Whittaker function are Schur
polynomials in the Satake parameters, scaled by a power of sqrt(p).  This
walk-through computes a few of them exactly.
"""

from fractions import Fraction

from localzeta import UnramifiedRep
from localzeta.reps import dominant_weights, schur, schur_weyl_oracle, weyl_dim, whittaker_value
from localzeta.ring import format_scalar

p = 5

# Satake parameters are exact elements of Q(i)[sqrt p]; plain fractions work too
R = UnramifiedRep.exact(p, [2, Fraction(1, 2), 7])
print("parameters:", R)
print("central product:", R.central_product)

# Jacobi-Trudi against the bialternant formula, weight by weight
for m in dominant_weights(3, 4, exact_total=4):
    jt, weyl = schur(R, m), schur_weyl_oracle(R, m)
    print(f"s_{m}: {format_scalar(jt):>10}   oracle agrees: {jt == weyl}")

# At the trivial representation a Schur value is the Weyl dimension
one = UnramifiedRep.exact(p, [1, 1, 1])
for m in [(2, 1, 0), (3, 1, 0), (2, 2, 1)]:
    print(m, format_scalar(schur(one, m)), weyl_dim(m))

# The Whittaker value picks up p^(-<rho, m>); odd exponents bring in sqrt(p)
pi = UnramifiedRep.exact(p, [3, Fraction(1, 2)])
for m in [(0, 0), (1, 0), (2, 0), (2, 1), (0, 1)]:
    print("W", m, "=", format_scalar(whittaker_value(pi, m)))
