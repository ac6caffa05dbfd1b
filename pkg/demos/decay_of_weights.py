"""
How fast do the local weights decay?
====================================

For tempered data the dual-side weight at level f is small: after scaling by
p^(f(n-1)/2) it stays below 2^n (f+n)^(n-1).  The same experiment for the
residue weight uses its own explicit majorant.
"""

import cmath
import math
import random

from localzeta import UnramifiedRep
from localzeta.spectral import h_check_dual, h_check_residue_point, residue_majorant
from localzeta.zeta import checked_decay_majorant

rng = random.Random(0)


def unit_rep(p, n, product_one=False):
    a = [cmath.exp(2j * math.pi * rng.random()) for _ in range(n)]
    if product_one:
        a[-1] = 1 / math.prod(a[:-1])
    return UnramifiedRep(p, tuple(a))


n, p = 3, 3
sigma, pi = unit_rep(p, n, product_one=True), unit_rep(p, n - 1)
print(" f   |h| p^(f(n-1)/2)   majorant")
for f in range(11):
    v = abs(h_check_dual(sigma, pi, f, 0.5 + 4j)) * p ** (f * (n - 1) / 2)
    print(f"{f:2d}   {v:14.6f}   {checked_decay_majorant(n, f):10.1f}")

# Residue weight at the symmetric point; pi now needs product one
pi1 = unit_rep(p, n - 1, product_one=True)
print(" f   |h| p^(f(n-2)/2)   majorant")
for f in range(11):
    v = abs(h_check_residue_point(pi1, f)) * p ** (f * (n - 2) / 2)
    print(f"{f:2d}   {v:14.6f}   {residue_majorant(n, p, f):10.3f}")
