"""Randomized identity and decay suites, plus golden-fixture replay.

Every trial draws its parameters from ``random.Random(f"{seed}:{suite}:{n}:{p}:{i}")``
so a report depends only on the seed and the flags, never on scheduling.
"""

from __future__ import annotations

import cmath
import json
import math
import os
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from typing import Optional

from .errors import LocalZetaError
from .lfactors import local_L_rs
from .reps import UnramifiedRep, dominant_weights, dual, schur, sigma_pi_z
from .ring import Scalar, Series2, evaluated_product
from .spectral import (
    h_check_dual,
    h_check_residue_point,
    residue_lambda_expand,
    residue_majorant,
    scheck,
)
from .zeta import (
    brute_omega,
    brute_psi_checked,
    brute_psi_rs,
    checked_decay_majorant,
    closed_l2,
    closed_omega,
    closed_psi_checked,
    closed_psi_rs,
    compare,
    l2_series,
    whittaker_tail_check,
)

__all__ = [
    "SUITES",
    "DEFAULT_ORDER",
    "DEFAULT_TRIALS",
    "DEFAULT_GRID",
    "TrialResult",
    "gaussian_rational",
    "random_rep",
    "random_product_one",
    "random_unit_rep",
    "run_trial",
    "run_suite",
    "run_golden",
    "build_report",
    "fixture_path",
]

REPORT_FORMAT = "localzeta.suite-report/1"
DEFAULT_ORDER = 12
DEFAULT_TRIALS = 20
MAX_LEVEL = 6          # psi-checked cycles f over 0..MAX_LEVEL
DECAY_LEVELS = 10      # f <= 10 in the decay checks
TAIL_LEVELS = 6        # l <= 6 in the Whittaker tail check
L2_CUTOFF = 40
L2_RTOL = 1e-6
BOUND_RTOL = 1e-9

DEFAULT_GRID = {
    "psi-rs": ((2, 3, 4, 5), (2, 3, 5)),
    "psi-checked": ((2, 3, 4, 5), (2, 3, 5)),
    "omega": ((2, 3, 4), (2, 3, 5)),
    "l2": ((1, 2, 3, 4), (2, 3)),
    "residue-lambda": ((2, 3, 4), (2, 3, 5)),
    "s-involution": ((2, 3, 4, 5, 6), (0,)),
    "decay": ((2, 3, 4), (2, 3, 5)),
}
SUITES = tuple(DEFAULT_GRID)


# -- random draws --------------------------------------------------------------

def gaussian_rational(rng, p, bound=50):
    """Nonzero a + b i with numerators and denominators bounded by ``bound``."""
    while True:
        re = Fraction(rng.randint(-bound, bound), rng.randint(1, bound))
        im = Fraction(rng.randint(-bound, bound), rng.randint(1, bound))
        if re or im:
            return Scalar(p, re, im)


def random_rep(rng, p, n):
    return UnramifiedRep(p, tuple(gaussian_rational(rng, p) for _ in range(n)))


def _rational_root(x, n):
    """Exact n-th root of a rational Scalar when one exists in Q, else None."""
    if not x.is_rational():
        return None
    q = x.to_fraction()
    if q < 0 and n % 2 == 0:
        return None
    sign = -1 if q < 0 else 1
    roots = []
    for part in (abs(q.numerator), q.denominator):
        r = round(part ** (1 / n))
        r = next((c for c in (r - 1, r, r + 1) if c >= 0 and c ** n == part), None)
        if r is None:
            return None
        roots.append(r)
    return Scalar(x.p, sign * Fraction(roots[0], roots[1]))


def random_product_one(rng, p, n):
    """Random exact parameters normalized to product one.

    Divides by an n-th root of the product when a rational one exists,
    otherwise replaces the last parameter by the inverse of the others.
    """
    params = [gaussian_rational(rng, p) for _ in range(n)]
    prod = Scalar(p, 1)
    for a in params:
        prod = prod * a
    root = _rational_root(prod, n)
    if root is not None:
        return UnramifiedRep(p, tuple(a / root for a in params))
    head = Scalar(p, 1)
    for a in params[:-1]:
        head = head * a
    return UnramifiedRep(p, tuple(params[:-1]) + (1 / head,))


def _unit(rng):
    return cmath.exp(2j * math.pi * rng.random())


def random_unit_rep(rng, p, n, product_one=False):
    params = [_unit(rng) for _ in range(n)]
    if product_one:
        params[-1] = 1 / math.prod(params[:-1]) if n > 1 else 1 + 0j
    return UnramifiedRep(p, tuple(params))


# -- trials --------------------------------------------------------------------

@dataclass
class TrialResult:
    index: int
    n: int
    p: int
    passed: bool
    first_discrepancy: Optional[tuple] = None
    detail: str = ""

    def to_json(self):
        out = {"index": self.index, "n": self.n, "passed": self.passed}
        if self.p:
            out["p"] = self.p
        if self.first_discrepancy is not None or not self.passed:
            out["first_discrepancy"] = (list(self.first_discrepancy)
                                        if self.first_discrepancy else None)
        if self.detail:
            out["detail"] = self.detail
        return out


def _series_trial(report, extra=""):
    if report.equal:
        return True, None, extra
    d1, d2 = report.first_discrepancy
    msg = (f"coefficient of X1^{d1} X2^{d2}: brute {report.brute.coefficient(d1, d2)}"
           f" != closed {report.closed.coefficient(d1, d2)}")
    return False, (d1, d2), f"{extra}; {msg}" if extra else msg


def _trial_psi_rs(rng, n, p, order, index):
    Pi, sigma = random_rep(rng, p, n + 1), random_rep(rng, p, n)
    closed = closed_psi_rs(Pi, sigma).expand(order, p)
    return _series_trial(compare(brute_psi_rs(Pi, sigma, order), closed))


def _trial_psi_checked(rng, n, p, order, index):
    f = index % (MAX_LEVEL + 1)
    sigma, pi = random_product_one(rng, p, n), random_rep(rng, p, n - 1)
    depth = f * (n - 1) + order
    closed = closed_psi_checked(sigma, pi, f).expand(depth)
    return _series_trial(compare(brute_psi_checked(sigma, pi, f, depth), closed), f"f={f}")


def _trial_omega(rng, n, p, order, index):
    Pi, pi = random_product_one(rng, p, n + 1), random_rep(rng, p, n - 1)
    closed = closed_omega(Pi, pi).expand(order, p)
    return _series_trial(compare(brute_omega(Pi, pi, order), closed))


def _l2_partial_sum(sigma, sigma2, cutoff):
    p, n = sigma.p, sigma.rank
    total = 0j
    for m in dominant_weights(n - 1, cutoff):
        w = m + (0,)
        total += schur(sigma, w) * schur(sigma2, w) * p ** (-sum(m))
    return total


def _trial_l2(rng, n, p, order, index):
    sigma, sigma2 = random_rep(rng, p, n), random_rep(rng, p, n)
    ok, bad, detail = _series_trial(
        compare(l2_series(sigma, sigma2, order), closed_l2(sigma, sigma2).expand(order, p)))
    if not ok:
        return ok, bad, detail
    u = random_unit_rep(rng, p, n)
    partial = _l2_partial_sum(u, dual(u), L2_CUTOFF)
    target = (evaluated_product(local_L_rs(u, dual(u)).at(1 / p), 1 + 0j)
              * (1 - p ** (-n)))
    err = abs(partial - target) / abs(target)
    return err < L2_RTOL, None, f"relative error at X=1/p: {err:.3e}"


def _trial_residue_lambda(rng, n, p, order, index):
    pi = random_rep(rng, p, n - 1)
    target = dual(sigma_pi_z(pi, Scalar.half_power(p, -1)))
    for r in range(11):
        got = residue_lambda_expand(pi, r)
        want = schur(target, (r,) + (0,) * (n - 1))
        if got != want:
            return False, None, f"r={r}: expansion {got} != direct {want}"
    return True, None, ""


def _random_point(rng):
    def q():
        return Fraction(rng.randint(-1000, 1000), rng.randint(1, 1000))
    return q(), q()


def _trial_s_involution(rng, n, p, order, index):
    s = _random_point(rng)
    back = tuple(scheck(scheck(s, n), n))
    if back != s:
        return False, None, f"scheck(scheck({s})) = {back}"
    half = Fraction(1, 2)
    if tuple(scheck((half, half), n)) != (half, half):
        return False, None, "(1/2, 1/2) is not fixed"
    t = s[0]
    if t != half and tuple(scheck((t, t), n)) == (t, t):
        return False, None, f"spurious diagonal fixed point {t}"
    return True, None, ""


def _trial_decay(rng, n, p, order, index):
    sigma = random_unit_rep(rng, p, n, product_one=True)
    pi = random_unit_rep(rng, p, n - 1)
    s2 = 0.5 + 1j * rng.uniform(-20, 20)
    worst_a = worst_b = 0.0
    for f in range(DECAY_LEVELS + 1):
        v = abs(h_check_dual(sigma, pi, f, s2)) * p ** (f * (n - 1) / 2)
        ratio = v / checked_decay_majorant(n, f)
        worst_a = max(worst_a, ratio)
        if ratio > 1 + BOUND_RTOL:
            return False, None, f"dual-weight decay f={f}: ratio {ratio:.6g}"
    pi1 = random_unit_rep(rng, p, n - 1, product_one=True)
    for f in range(DECAY_LEVELS + 1):
        v = abs(h_check_residue_point(pi1, f)) * p ** (f * (n - 2) / 2)
        ratio = v / residue_majorant(n, p, f)
        worst_b = max(worst_b, ratio)
        if ratio > 1 + BOUND_RTOL:
            return False, None, f"residue-point decay f={f}: ratio {ratio:.6g}"
    l = index % (TAIL_LEVELS + 1)
    Pi = random_unit_rep(rng, p, n + 1)
    xi = random_unit_rep(rng, p, n - 1)
    tail = whittaker_tail_check(Pi, xi, l, 0.5, order + (n - 1) * l)
    if not tail.ok:
        return False, None, (f"tail l={l}: |value| p^(nl/2) = {tail.scaled:.6g},"
                             f" majorant(0) = {tail.majorant_l0:.6g}")
    return True, None, f"l={l} worst ratios {worst_a:.4f} {worst_b:.4f}"


_TRIALS = {
    "psi-rs": _trial_psi_rs,
    "psi-checked": _trial_psi_checked,
    "omega": _trial_omega,
    "l2": _trial_l2,
    "residue-lambda": _trial_residue_lambda,
    "s-involution": _trial_s_involution,
    "decay": _trial_decay,
}


def run_trial(suite, n, p, order, seed, index):
    """One deterministic trial; library errors become failures, not crashes."""
    rng = random.Random(f"{seed}:{suite}:{n}:{p}:{index}")
    try:
        ok, bad, detail = _TRIALS[suite](rng, n, p, order, index)
    except (LocalZetaError, ValueError, ArithmeticError) as exc:
        ok, bad, detail = False, None, f"{type(exc).__name__}: {exc}"
    return ok, bad, detail


def _run_task(task):
    return run_trial(*task)


def _workers():
    raw = os.environ.get("LOCALZETA_THREADS", "")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def run_suite(suite, ns=None, ps=None, order=DEFAULT_ORDER, trials=DEFAULT_TRIALS,
              seed=0, timing=False):
    """Run ``trials`` draws per (n, p) pair of the grid and return a report dict."""
    grid_n, grid_p = DEFAULT_GRID[suite]
    ns = tuple(ns) if ns else grid_n
    ps = tuple(ps) if ps else grid_p
    if suite == "s-involution":
        ps = (0,)
    tasks = []
    meta = []
    for n in ns:
        for p in ps:
            for i in range(trials):
                tasks.append((suite, n, p, order, seed, i))
                meta.append((n, p))
    start = time.perf_counter()
    workers = _workers()
    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(_run_task, tasks, chunksize=4))
    else:
        outcomes = [_run_task(t) for t in tasks]
    results = [TrialResult(k, n, p, ok, bad, detail if not ok else "")
               for k, ((n, p), (ok, bad, detail)) in enumerate(zip(meta, outcomes))]
    out = {
        "suite": suite,
        "trials": len(results),
        "order": order,
        "seed": seed,
        "passed": all(r.passed for r in results),
        "failures": sum(not r.passed for r in results),
        "results": [r.to_json() for r in results],
    }
    if timing:
        out["wall_time"] = round(time.perf_counter() - start, 6)
    return out


# -- golden fixtures -----------------------------------------------------------

def fixture_path(name):
    """Path of a fixture shipped with the package, e.g. ``golden.json``."""
    return resources.files("localzeta.fixtures").joinpath(name)


def _golden_series(case):
    from .specio import rep_from_json

    suite, order, inp = case["suite"], case["order"], case["inputs"]
    if suite == "psi-rs":
        Pi, sigma = rep_from_json(inp["Pi"]), rep_from_json(inp["sigma"])
        return brute_psi_rs(Pi, sigma, order), closed_psi_rs(Pi, sigma).expand(order, Pi.p)
    if suite == "psi-checked":
        sigma, pi, f = rep_from_json(inp["sigma"]), rep_from_json(inp["pi"]), inp["f"]
        return brute_psi_checked(sigma, pi, f, order), closed_psi_checked(sigma, pi, f).expand(order)
    if suite == "omega":
        Pi, pi = rep_from_json(inp["Pi"]), rep_from_json(inp["pi"])
        return brute_omega(Pi, pi, order), closed_omega(Pi, pi).expand(order, Pi.p)
    if suite == "l2":
        s1, s2 = rep_from_json(inp["sigma"]), rep_from_json(inp["sigma2"])
        return l2_series(s1, s2, order), closed_l2(s1, s2).expand(order, s1.p)
    raise ValueError(f"no golden replay for suite {suite!r}")


def run_golden(path, suites=None, timing=False):
    """Replay frozen expected coefficients; one report entry per suite."""
    with open(path) as fh:
        data = json.load(fh)
    grouped = {}
    for case in data["cases"]:
        if suites and case["suite"] not in suites:
            continue
        grouped.setdefault(case["suite"], []).append(case)
    out = []
    for suite, cases in grouped.items():
        start = time.perf_counter()
        results = []
        for k, case in enumerate(cases):
            expected = Series2.from_json(case["expected"])
            try:
                brute, closed = _golden_series(case)
                ok, bad, detail = True, None, ""
                for label, got in (("brute", brute), ("closed", closed)):
                    pos = expected.first_discrepancy(got.truncate(expected.order))
                    if pos is not None:
                        ok, bad = False, pos
                        detail = (f"{label} X1^{pos[0]} X2^{pos[1]}: expected "
                                  f"{expected.coefficient(*pos)}, computed {got.coefficient(*pos)}")
                        break
            except (LocalZetaError, ValueError, ArithmeticError) as exc:
                ok, bad, detail = False, None, f"{type(exc).__name__}: {exc}"
            entry = {"index": k, "case": case["name"], "passed": ok}
            if not ok:
                entry["first_discrepancy"] = list(bad) if bad else None
                entry["detail"] = detail
            results.append(entry)
        rep = {
            "suite": suite,
            "source": os.path.basename(str(path)),
            "trials": len(results),
            "order": max(c["order"] for c in cases),
            "seed": 0,
            "passed": all(r["passed"] for r in results),
            "failures": sum(not r["passed"] for r in results),
            "results": results,
        }
        if timing:
            rep["wall_time"] = round(time.perf_counter() - start, 6)
        out.append(rep)
    return out


def build_report(suite_reports, seed):
    from . import __version__

    return {
        "format": REPORT_FORMAT,
        "version": __version__,
        "seed": seed,
        "passed": all(r["passed"] for r in suite_reports),
        "suites": suite_reports,
    }
