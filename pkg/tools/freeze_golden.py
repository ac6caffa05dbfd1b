"""Regenerate the golden fixtures shipped in localzeta/fixtures.

Expected coefficients come from brute sums whose Schur values are computed by
the bialternant ratio, not by the Jacobi-Trudi route the library uses, so the
fixture is an independent oracle.  The corrupted copy changes one coefficient.

    python3 tools/freeze_golden.py
"""

import json
from fractions import Fraction
from pathlib import Path

from localzeta.reps import UnramifiedRep, dominant_weights, dual, schur_weyl_oracle
from localzeta.ring import Scalar, Series2
from localzeta.specio import rep_to_json

OUT = Path(__file__).resolve().parents[1] / "src" / "localzeta" / "fixtures"


def rep(p, *params):
    return UnramifiedRep.exact(p, [Fraction(x) if not isinstance(x, Scalar) else x for x in params])


def add(coeffs, key, value):
    coeffs[key] = coeffs[key] + value if key in coeffs else value


def oracle_psi_rs(Pi, sigma, order):
    n, sd, c = sigma.rank, dual(sigma), {}
    for m in dominant_weights(n, order):
        add(c, (sum(m), 0), schur_weyl_oracle(Pi, m + (0,)) * schur_weyl_oracle(sd, m))
    return Series2(Pi.p, order, c)


def oracle_psi_checked(sigma, pi, f, order):
    n, pd, c = sigma.rank, dual(pi), {}
    for m in dominant_weights(n - 1, order, min_last=f):
        add(c, (0, sum(m)), schur_weyl_oracle(sigma, m + (0,)) * schur_weyl_oracle(pd, m))
    return Series2(sigma.p, order, c)


def oracle_omega(Pi, pi, order):
    n, pd, c = Pi.rank - 1, dual(pi), {}
    l = 0
    while n * l <= order:
        for m in dominant_weights(n - 1, (order - n * l) // 2):
            k = sum(m)
            w = tuple(x + l for x in m) + (l, 0)
            add(c, (k + n * l, k), schur_weyl_oracle(Pi, w) * schur_weyl_oracle(pd, m))
        l += 1
    return Series2(Pi.p, order, c)


def oracle_l2(s1, s2, order):
    c = {}
    for m in dominant_weights(s1.rank - 1, order):
        w = m + (0,)
        add(c, (sum(m), 0), schur_weyl_oracle(s1, w) * schur_weyl_oracle(s2, w))
    return Series2(s1.p, order, c)


def cases():
    p = 5
    Pi = rep(p, 2, Fraction(1, 3), Scalar(p, 1, 1), 7)
    sigma = rep(p, Fraction(-1, 2), 3, Scalar(p, 0, 2))
    yield "psi-rs", "psi-rs n=3 p=5", 8, {"Pi": Pi, "sigma": sigma}, oracle_psi_rs(Pi, sigma, 8)

    p = 3
    sig = rep(p, 2, Fraction(1, 3), Fraction(3, 2))          # product one
    pi = rep(p, Scalar(p, 1, -1), Fraction(4, 5))
    f = 2
    order = f * 2 + 8
    yield ("psi-checked", "psi-checked n=3 p=3 f=2", order, {"sigma": sig, "pi": pi, "f": f},
           oracle_psi_checked(sig, pi, f, order))

    p = 2
    Pi = rep(p, 2, 1, Fraction(1, 2))                        # product one, n = 2
    pi = rep(p, 1)
    yield "omega", "omega n=2 p=2", 8, {"Pi": Pi, "pi": pi}, oracle_omega(Pi, pi, 8)
    Pi = rep(p, 3, Fraction(-1, 2), Scalar(p, 0, 1), Scalar(p, Fraction(0), Fraction(2, 3)))
    pi = rep(p, Fraction(5, 7), -4)
    yield "omega", "omega n=3 p=2", 8, {"Pi": Pi, "pi": pi}, oracle_omega(Pi, pi, 8)

    p = 7
    s1 = rep(p, 2, Fraction(1, 5), Scalar(p, 1, 3))
    s2 = rep(p, -1, Fraction(2, 9), 4)
    yield "l2", "l2 n=3 p=7", 8, {"sigma": s1, "sigma2": s2}, oracle_l2(s1, s2, 8)


def main():
    out = []
    for suite, name, order, inputs, series in cases():
        enc = {k: (rep_to_json(v) if isinstance(v, UnramifiedRep) else v) for k, v in inputs.items()}
        out.append({"suite": suite, "name": name, "order": order, "inputs": enc,
                    "expected": series.to_json()})
    clean = {"format": "localzeta.golden/1", "cases": out}
    (OUT / "golden.json").write_text(json.dumps(clean, indent=1, sort_keys=True) + "\n")
    bad = json.loads(json.dumps(clean))
    target = next(c for c in bad["cases"] if c["name"] == "omega n=3 p=2")
    coeff = next(c for c in target["expected"]["coefficients"] if (c["d1"], c["d2"]) == (4, 1))
    coeff["value"] = coeff["value"] + " + 1"
    (OUT / "golden_corrupted.json").write_text(json.dumps(bad, indent=1, sort_keys=True) + "\n")


if __name__ == "__main__":
    main()
