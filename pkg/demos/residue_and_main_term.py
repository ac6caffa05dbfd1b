"""
Residue terms and the main term
===============================

The residue contribution at s = (1/2, 1/2) can be computed two ways, and
the per-prime factor of the main term is the degenerate local factor at the
same point.  Everything below is exact.
"""

from fractions import Fraction

from localzeta import UnramifiedRep
from localzeta.reps import RamifiedDescriptor
from localzeta.ring import Scalar, format_scalar
from localzeta.spectral import (
    PrimeLocalData,
    degenerate_local,
    h_check_residue_point,
    main_term,
    main_term_prime_factor,
    residue_term_local,
    scheck,
)

half = Fraction(1, 2)
print("the symmetric point is fixed:", *scheck((half, half), 4))
print("(1, 0) maps to", *scheck((1, 0), 3))

# pi of rank 2 with central product one, so n = 3
p = 3
pi = UnramifiedRep.exact(p, [Fraction(2, 5), Fraction(5, 2)])
for f in range(4):
    a = h_check_residue_point(pi, f)
    b = residue_term_local(pi, f, (half, half))
    print(f"f={f}: {format_scalar(a)}  (Euler-factor route agrees: {a == b})")

# Main term over a few primes; one place carries a supercuspidal datum
data = []
for q in (2, 5, 7):
    Pi = UnramifiedRep.exact(q, [Fraction(3, 7), Fraction(7, 3), Fraction(-5, 4), Fraction(-4, 5)])
    small = UnramifiedRep.exact(q, [Fraction(2, 9), Fraction(q, 11)])
    data.append(PrimeLocalData(q, Pi, small))
    assert main_term_prime_factor(Pi, small) == degenerate_local(Pi, small, (half, half))
tau = RamifiedDescriptor(1, "supercuspidal", Scalar(11, 1))
data.append(PrimeLocalData(11, UnramifiedRep.exact(11, [1, 1, 1, 1]),
                           UnramifiedRep.exact(11, [1, 1]), 0, tau))
print("main term:", main_term(data, 3, p0_index=3))
