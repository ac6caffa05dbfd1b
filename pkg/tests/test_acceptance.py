"""Acceptance criteria, one test each.

Every test prints a single ``PASS``/``FAIL`` line (visible without ``-s``)
and then asserts.  Run just these with::

    pytest tests/test_acceptance.py -v
"""

import json
import random
import time
from fractions import Fraction

import pytest

from localzeta.cli import main
from localzeta.reps import RamifiedDescriptor
from localzeta.spectral import (
    degenerate_local,
    h_check_dual,
    h_original_unramified,
    main_term_prime_factor,
)
from localzeta.suites import fixture_path, random_product_one, random_rep, run_suite

pytestmark = pytest.mark.slow

HALF = Fraction(1, 2)


@pytest.fixture
def verdict(capsys):
    def emit(number, name, ok, detail=""):
        line = f"criterion {number} {name}: {'PASS' if ok else 'FAIL'}"
        if detail:
            line += f" ({detail})"
        with capsys.disabled():
            print("\n" + line)
        return ok
    return emit


def timed_suite(suite, **kw):
    start = time.perf_counter()
    report = run_suite(suite, **kw)
    return report, time.perf_counter() - start


def first_failure(report):
    for r in report["results"]:
        if not r["passed"]:
            return f"n={r['n']} p={r['p']} trial {r['index']}: {r.get('detail', '')}"
    return ""


def suite_criterion(verdict, number, suite, limit, **kw):
    report, elapsed = timed_suite(suite, **kw)
    ok = report["passed"] and elapsed < limit
    detail = f"{report['trials']} trials, {elapsed:.1f}s"
    if limit != float("inf"):
        detail += f" (limit {limit}s)"
    if not report["passed"]:
        detail += "; " + first_failure(report)
    assert verdict(number, suite, ok, detail)


def test_criterion_1_psi_rs(verdict):
    suite_criterion(verdict, 1, "psi-rs", 60, ns=(2, 3, 4, 5), ps=(2, 3, 5), order=12, trials=20)


def test_criterion_2_psi_checked(verdict):
    # f cycles through 0..6 with the trial index; depth f(n-1) + 12
    suite_criterion(verdict, 2, "psi-checked", 120, ns=(2, 3, 4, 5), ps=(2, 3, 5), order=12, trials=20)


def test_criterion_3_omega(verdict):
    suite_criterion(verdict, 3, "omega", 120, ns=(2, 3, 4), ps=(2, 3, 5), order=10, trials=20)


def test_criterion_4_l2(verdict):
    # exact identity to degree 12 plus the |m| <= 40 partial sum at X = 1/p
    suite_criterion(verdict, 4, "l2", float("inf"), ns=(1, 2, 3, 4), ps=(2, 3), order=12, trials=20)


def test_criterion_5_residue_lambda(verdict):
    suite_criterion(verdict, 5, "residue-lambda", float("inf"), ns=(2, 3, 4), ps=(2, 3, 5), trials=20)


def test_criterion_6_decay(verdict):
    # (a) dual weight, (b) residue point, (c) Whittaker tail, all in each trial
    suite_criterion(verdict, 6, "decay", float("inf"), ns=(2, 3, 4), ps=(2, 3, 5), trials=20)


def test_criterion_7_s_involution(verdict):
    # 200 points for each of five ranks
    suite_criterion(verdict, 7, "s-involution", 1.0, ns=(2, 3, 4, 5, 6), trials=200)


def test_criterion_8_two_routes(verdict):
    rng = random.Random("acceptance:two-routes")
    bad = []
    for k in range(10):
        p = (2, 3, 5, 7, 11)[k % 5]
        n = 3 + k % 3
        sigma = random_product_one(rng, p, n)
        pi = random_rep(rng, p, n - 1)
        Pi = random_product_one(rng, p, n + 1)
        s2 = Fraction(rng.randint(-4, 4), 2)
        if h_check_dual(sigma, pi, 0, s2, RamifiedDescriptor()) != h_original_unramified(
                Pi, sigma, pi):
            bad.append(f"dual/original at set {k}")
        if main_term_prime_factor(Pi, pi) != degenerate_local(Pi, pi, (HALF, HALF)):
            bad.append(f"main-term factor at set {k}")
    assert verdict(8, "two-route agreements", not bad, "; ".join(bad) or "10 data sets, exact")


def test_criterion_9_cli_contract(verdict, capsys):
    problems = []
    start = time.perf_counter()
    code = main(["verify", "--suite", "all"])
    full = capsys.readouterr()
    if code != 0:
        problems.append(f"verify --suite all exited {code}")
    elapsed = time.perf_counter() - start

    code = main(["verify", "--golden", str(fixture_path("golden_corrupted.json"))])
    err = capsys.readouterr().err
    if code != 1 or "FAIL omega" not in err or "exponent pair (4, 1)" not in err:
        problems.append(f"corrupted fixture gave exit {code}: {err.strip()[:120]}")

    main(["verify", "--suite", "all", "--seed", "3", "--trials", "2"])
    first = capsys.readouterr().out
    main(["verify", "--suite", "all", "--seed", "3", "--trials", "2"])
    second = capsys.readouterr().out
    if first.encode() != second.encode():
        problems.append("output differs between two runs with the same seed")
    json.loads(full.out)
    assert verdict(9, "cli contract", not problems,
                   "; ".join(problems) or f"verify --suite all in {elapsed:.1f}s")
