"""Command-line front end.

    localzeta verify --suite omega --n 3 --p 5
    localzeta eval l2 --input sigma.json --at 1
    localzeta report --format text

Exit codes: 0 pass, 1 verification failure, 2 usage or schema error,
3 mathematical precondition error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import __version__
from .errors import LocalZetaError, PreconditionError
from .reps import dual
from .ring import Scalar, evaluated_product, p_power
from .specio import (
    SchemaError,
    descriptor_from_json,
    prime_data_from_json,
    rep_from_json,
    scalar_to_json,
    validate,
)
from .spectral import SPoint, degenerate_local, h_check_dual, main_term, residue_term_local
from .suites import DEFAULT_ORDER, DEFAULT_TRIALS, SUITES, build_report, run_golden, run_suite
from .zeta import closed_l2, closed_omega, closed_psi_checked, closed_psi_rs

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_PRECONDITION = 0, 1, 2, 3

EVAL_KINDS = ("psi-rs", "psi-checked", "omega", "l2", "h-check", "residue-local", "main-term")

PROVENANCE = {
    "psi-rs": ("localzeta.zeta.closed_psi_rs",
               "sum_m s_(m,0)(Pi) s_m(dual sigma) X1^|m| = L(s1, Pi x dual sigma)"),
    "psi-checked": ("localzeta.zeta.closed_psi_checked",
                    "sum_{m_(n-1) >= f} s_(m,0)(sigma) s_m(dual pi) X2^|m| = L(s2, sigma x dual pi)"
                    " w^f sum_k (-1)^k e_k(dual pi) h_(f-k)(dual sigma) X2^(f(n-1)+k)"),
    "omega": ("localzeta.zeta.closed_omega",
              "L(s1+s2, Pi x dual pi) L(n s1, dual Pi) / L((n+1) s1 + s2, dual pi)"),
    "l2": ("localzeta.zeta.closed_l2",
           "sum_m s_(m,0)(sigma) s_(m,0)(sigma2) X^|m| = L(s, sigma x sigma2) (1 - w w2 X^n)"),
    "h-check": ("localzeta.spectral.h_check_dual",
                "zeta_p(n) / L(1, sigma x dual sigma) times the checked correction at X2 = p^-s2"),
    "residue-local": ("localzeta.spectral.residue_term_local",
                      "L(1, pi x dual pi) L(1 + n(1-s2), pi) L(1 - n(1-s2), dual pi)"
                      " H(sigma(pi, 1-s2)); global constants omitted"),
    "main-term": ("localzeta.spectral.main_term",
                  "D_inf prod_{f>=1} zeta_p(n)/zeta_p(1) / eps_p0 prod_{v != p0}"
                  " L(1, Pi x dual pi) L(n/2, dual Pi) / L(1 + n/2, dual pi)"),
}


def _parse_number(text):
    try:
        return Fraction(text)
    except ValueError:
        return complex(text.replace("i", "j"))


def parse_point(text):
    """'s1,s2' or a single 's' (used for both coordinates)."""
    parts = [x.strip() for x in text.split(",")]
    if len(parts) not in (1, 2) or not all(parts):
        raise argparse.ArgumentTypeError(f"expected s1,s2 or s, got {text!r}")
    try:
        values = [_parse_number(x) for x in parts]
    except ValueError:
        raise argparse.ArgumentTypeError(f"cannot parse point {text!r}") from None
    return SPoint(values[0], values[-1])


def build_parser():
    parser = argparse.ArgumentParser(
        prog="localzeta",
        description="Exact local zeta integrals and reciprocity weights for GL(n).")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def suite_flags(p):
        p.add_argument("--suite", default="all", choices=SUITES + ("all",),
                       help="suite to run (default: all)")
        p.add_argument("--n", type=int, nargs="+", help="ranks n (default: the suite's grid)")
        p.add_argument("--p", type=int, nargs="+", help="residue cardinalities (default: the suite's grid)")
        p.add_argument("--order", type=int, default=DEFAULT_ORDER,
                       help=f"truncation total degree D (default: {DEFAULT_ORDER})")
        p.add_argument("--trials", type=int, default=DEFAULT_TRIALS,
                       help=f"random draws per (n, p) pair (default: {DEFAULT_TRIALS})")
        p.add_argument("--seed", type=int, default=0, help="RNG seed (default: 0)")
        p.add_argument("--golden", metavar="PATH",
                       help="replay frozen coefficients from a fixture instead of random draws")
        p.add_argument("--timing", action="store_true",
                       help="include wall time (output is then no longer byte-stable)")

    verify = sub.add_parser("verify", help="run identity and decay suites")
    suite_flags(verify)

    ev = sub.add_parser("eval", help="evaluate one local factor from a JSON input")
    ev.add_argument("kind", choices=EVAL_KINDS)
    ev.add_argument("--input", required=True, metavar="FILE", help="JSON input ('-' for stdin)")
    ev.add_argument("--order", type=int, default=DEFAULT_ORDER,
                    help=f"series truncation degree (default: {DEFAULT_ORDER})")
    ev.add_argument("--at", type=parse_point, metavar="S1,S2",
                    help="evaluation point; a single value sets both coordinates")

    rep = sub.add_parser("report", help="render a suite report as json or text")
    rep.add_argument("--format", choices=("json", "text"), default="text")
    rep.add_argument("--from", dest="source", metavar="FILE",
                     help="render an existing report instead of running verify")
    suite_flags(rep)
    return parser


def _dump(obj):
    return json.dumps(obj, indent=2, sort_keys=True)


def _collect(args):
    suites = SUITES if args.suite == "all" else (args.suite,)
    if args.golden:
        reports = run_golden(args.golden, None if args.suite == "all" else suites, args.timing)
    else:
        reports = [run_suite(s, args.n, args.p, args.order, args.trials, args.seed, args.timing)
                   for s in suites]
    return build_report(reports, args.seed)


def _report_failures(report):
    for s in report["suites"]:
        for r in s["results"]:
            if not r["passed"]:
                where = r.get("first_discrepancy")
                pos = f" at exponent pair {tuple(where)}" if where else ""
                print(f"FAIL {s['suite']} trial {r['index']}{pos}: {r.get('detail', '')}",
                      file=sys.stderr)


def cmd_verify(args):
    try:
        report = _collect(args)
    except (OSError, json.JSONDecodeError, KeyError, SchemaError) as exc:
        print(f"error: cannot use fixture: {exc}", file=sys.stderr)
        return EXIT_USAGE
    print(_dump(report))
    _report_failures(report)
    return EXIT_OK if report["passed"] else EXIT_FAIL


def render_text(report):
    lines = []
    for s in report["suites"]:
        status = "PASS" if s["passed"] else "FAIL"
        passed = s["trials"] - s.get("failures", 0)
        line = f"{s['suite']:<15} {status}  {passed}/{s['trials']} trials  order {s['order']}  seed {s['seed']}"
        if "wall_time" in s:
            line += f"  {s['wall_time']:.2f}s"
        lines.append(line)
    return "\n".join(lines)


def cmd_report(args):
    if args.source:
        with open(args.source) as fh:
            report = json.load(fh)
        validate(report, "suitereport")
    else:
        report = _collect(args)
    print(_dump(report) if args.format == "json" else render_text(report))
    return EXIT_OK if report["passed"] else EXIT_FAIL


def _series_out(series):
    return series.to_json()


def _value_at(F, p, s1, s2):
    x1, x2 = p_power(p, -s1), p_power(p, -s2)
    if isinstance(x1, Scalar) and isinstance(x2, Scalar) and F.is_exact():
        return F.value(x1, x2)
    x1, x2 = complex(x1), complex(x2)
    return evaluated_product([(complex(c) * x1 ** a * x2 ** b, e) for c, a, b, e in F.factors], 1 + 0j)


def evaluate(kind, data, order, at):
    """Run one eval subcommand on already-loaded JSON; returns the output dict."""
    validate(data, "eval-input", kind)
    out = {"kind": kind}
    if kind == "psi-rs":
        Pi, sigma = rep_from_json(data["Pi"]), rep_from_json(data["sigma"])
        F = closed_psi_rs(Pi, sigma)
        out.update(p=Pi.p, euler_factor=F.to_json(), series=_series_out(F.expand(order, Pi.p)))
        if at is not None:
            out["value"] = scalar_to_json(_value_at(F, Pi.p, at.s1, at.s2))
    elif kind == "psi-checked":
        sigma, pi, f = rep_from_json(data["sigma"]), rep_from_json(data["pi"]), data["f"]
        form = closed_psi_checked(sigma, pi, f)
        depth = f * (sigma.rank - 1) + order
        out.update(p=sigma.p, euler_factor=form.L.to_json(),
                   correction=[{"d1": k[0], "d2": k[1], "value": scalar_to_json(v)}
                               for k, v in sorted(form.correction.items())],
                   series=_series_out(form.expand(depth)))
        if at is not None:
            x2 = p_power(sigma.p, -at.s2)
            out["value"] = scalar_to_json(_value_at(form.L, sigma.p, at.s1, at.s2)
                                          * form.correction_value(x2))
    elif kind == "omega":
        Pi, pi = rep_from_json(data["Pi"]), rep_from_json(data["pi"])
        F = closed_omega(Pi, pi)
        out.update(p=Pi.p, euler_factor=F.to_json(), series=_series_out(F.expand(order, Pi.p)))
        if at is not None:
            out["value"] = scalar_to_json(degenerate_local(Pi, pi, at))
    elif kind == "l2":
        sigma = rep_from_json(data["sigma"])
        sigma2 = rep_from_json(data["sigma2"]) if "sigma2" in data else dual(sigma)
        F = closed_l2(sigma, sigma2)
        out.update(p=sigma.p, euler_factor=F.to_json(), series=_series_out(F.expand(order, sigma.p)))
        if at is not None:
            out["value"] = scalar_to_json(_value_at(F, sigma.p, at.s1, 0))
    elif kind == "h-check":
        sigma, pi, f = rep_from_json(data["sigma"]), rep_from_json(data["pi"]), data["f"]
        desc = descriptor_from_json(data.get("descriptor"), sigma.p)
        s2 = at.s2 if at is not None else Fraction(1, 2)
        out.update(p=sigma.p, s2=scalar_to_json(s2),
                   value=scalar_to_json(h_check_dual(sigma, pi, f, s2, desc)))
    elif kind == "residue-local":
        pi, f = rep_from_json(data["pi"]), data["f"]
        desc = descriptor_from_json(data.get("descriptor"), pi.p)
        s = at if at is not None else SPoint(Fraction(1, 2), Fraction(1, 2))
        out.update(p=pi.p, s=[scalar_to_json(s.s1), scalar_to_json(s.s2)],
                   value=scalar_to_json(residue_term_local(pi, f, s, desc)))
    elif kind == "main-term":
        primes = [prime_data_from_json(d) for d in data["primes"]]
        eps = _parse_number(data.get("eps_p0", "1"))
        value = main_term(primes, data["n"], data.get("p0_index"), data.get("D_inf", 1), eps)
        out.update(primes=[d.p for d in primes], value=scalar_to_json(value))
    name, formula = PROVENANCE[kind]
    out["provenance"] = {"function": name, "formula": formula, "version": __version__}
    return out


def cmd_eval(args):
    try:
        if args.input == "-":
            data = json.load(sys.stdin)
        else:
            with open(args.input) as fh:
                data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        print(f"error: cannot read input: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        out = evaluate(args.kind, data, args.order, args.at)
    except PreconditionError as exc:
        print(f"precondition violated: {exc.constraint}", file=sys.stderr)
        return EXIT_PRECONDITION
    except SchemaError as exc:
        print(f"schema error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (LocalZetaError, ArithmeticError) as exc:
        print(f"precondition violated: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except ValueError as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_USAGE
    print(_dump(out))
    return EXIT_OK


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    if args.command == "verify":
        return cmd_verify(args)
    if args.command == "eval":
        return cmd_eval(args)
    try:
        return cmd_report(args)
    except (OSError, json.JSONDecodeError, SchemaError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
