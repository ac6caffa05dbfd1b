"""
Local zeta integrals: brute sums against Euler products
=======================================================

Each local integral is a sum over dominant weights of products of Schur
values.  Truncating that sum at total degree D gives a bivariate series in
X1 = p^-s1 and X2 = p^-s2 which must agree with the expansion of a closed
Euler product.
"""

from fractions import Fraction

from localzeta import UnramifiedRep
from localzeta.ring import format_scalar
from localzeta.zeta import (
    brute_omega,
    brute_psi_checked,
    brute_psi_rs,
    closed_omega,
    closed_psi_checked,
    closed_psi_rs,
    compare,
)

p = 3

# Rankin-Selberg: GL(3) x GL(2)
Pi = UnramifiedRep.exact(p, [2, Fraction(-1, 3), 5])
sigma = UnramifiedRep.exact(p, [Fraction(1, 2), 7])
D = 8
brute = brute_psi_rs(Pi, sigma, D)
closed = closed_psi_rs(Pi, sigma)
print("Euler factor:", closed)
print("agree to degree", D, ":", compare(brute, closed.expand(D, p)).equal)
print("X1^3 coefficient:", format_scalar(brute.coefficient(3, 0)))

# The level-f sum keeps only weights with last entry >= f.  The closed form
# is the same L-factor times a polynomial correction.
sigma = UnramifiedRep.exact(p, [3, Fraction(1, 3), 1])
pi = UnramifiedRep.exact(p, [2, 5])
for f in range(4):
    form = closed_psi_checked(sigma, pi, f)
    depth = f * 2 + 6
    ok = compare(brute_psi_checked(sigma, pi, f, depth), form.expand(depth)).equal
    print(f"f={f}: correction has {len(form.correction)} terms, brute sum agrees: {ok}")

# Degenerate term: Pi of rank 3 with product one, pi of rank 1
Pi = UnramifiedRep.exact(2, [2, 1, Fraction(1, 2)])
pi = UnramifiedRep.exact(2, [1])
series = brute_omega(Pi, pi, 6)
print("X1^3 X2 coefficient:", series.coefficient(3, 1))
print("closed form agrees:", compare(series, closed_omega(Pi, pi).expand(6, 2)).equal)
