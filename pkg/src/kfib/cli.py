"""Command-line interface.

Exit codes: 0 success / verification PASS, 1 verification FAIL,
2 precision or convergence failure, 3 usage error.
"""

from __future__ import annotations

import argparse
import logging
import math
import sys
from fractions import Fraction

from .algebraic import dominant_root
from .bounds import lemma2_log_n_bound, lemma3_n_bound, matveev_log_lower_bound, MatveevParams
from .errors import FactorizationTimeout, PrecisionError, ReductionError
from .factorization import largest_prime_factor, primes_below
from .lattice import DEFAULT_DELTA, reduce_small_k
from .pipeline import (
    RunConfig,
    run_reduction_report,
    serialize_records,
    solve_smooth_detailed,
    verify_theorem2,
)
from .sequences import kfib_value
from .verify import dresden_suite, power_of_two_scan, sandwich_suite, section4_suite

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_PRECISION = 2
EXIT_USAGE = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse defaults to exit code 2; usage errors are 3 here
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _parse_delta(text: str) -> Fraction:
    if "/" in text:
        num, den = text.split("/", 1)
        return Fraction(int(num), int(den))
    return Fraction(text)


def _load_config_file(path: str) -> dict[str, str]:
    values: dict[str, str] = {}
    with open(path, encoding="utf-8") as fh:
        for raw in fh:
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"bad config line: {raw.strip()!r}")
            key, value = line.split("=", 1)
            values[key.strip()] = value.strip()
    return values


_CONFIG_KEYS = ("precision_bits", "lll_delta", "round_cap", "workers", "hard_cap")


def _merged_settings(args) -> dict:
    settings = {
        "precision_bits": 128,
        "lll_delta": DEFAULT_DELTA,
        "round_cap": 8,
        "workers": 1,
        "hard_cap": 5000,
    }
    if getattr(args, "config", None):
        for key, value in _load_config_file(args.config).items():
            if key not in _CONFIG_KEYS:
                raise ValueError(f"unknown config key {key!r}")
            settings[key] = _parse_delta(value) if key == "lll_delta" else int(value)
    for key in _CONFIG_KEYS:
        override = getattr(args, key, None)
        if override is not None:
            settings[key] = override
    return settings


def build_parser() -> _Parser:
    parser = _Parser(prog="kfib", description=__doc__)
    parser.add_argument("--config", help="key=value settings file")
    parser.add_argument("--precision-bits", dest="precision_bits", type=int)
    parser.add_argument("--lll-delta", dest="lll_delta", type=_parse_delta, metavar="NUM/DEN")
    parser.add_argument("--round-cap", dest="round_cap", type=int)
    parser.add_argument("--workers", type=int)
    parser.add_argument("--hard-cap", dest="hard_cap", type=int)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("fib", help="print F(n) for order k")
    p.add_argument("k", type=int)
    p.add_argument("n", type=int)

    p = sub.add_parser("lpf", help="largest prime factor")
    p.add_argument("m", type=int)

    p = sub.add_parser("root", help="certified enclosure of the dominant root")
    p.add_argument("k", type=int)
    p.add_argument("--bits", type=int, default=128)

    p = sub.add_parser("bounds", help="explicit bound calculators")
    bsub = p.add_subparsers(dest="bound", required=True)
    b = bsub.add_parser("lemma2")
    b.add_argument("s", type=int)
    b.add_argument("k", type=int)
    b = bsub.add_parser("lemma3")
    b.add_argument("k", type=int)
    b = bsub.add_parser("matveev")
    b.add_argument("--degree", type=int, required=True)
    b.add_argument("--coeff-bound", type=float, required=True)
    b.add_argument("--heights", required=True, help="comma-separated A_i values")

    p = sub.add_parser("reduce", help="bound-reduction loops")
    rsub = p.add_subparsers(dest="mode", required=True)
    r = rsub.add_parser("large-k")
    r = rsub.add_parser("small-k")
    r.add_argument("k", type=int)
    r.add_argument("--n-bound", type=int, help="starting bound (default: the analytic one)")

    p = sub.add_parser("solve", help="find all smooth terms")
    p.add_argument("--kmin", type=int, default=2)
    p.add_argument("--kmax", type=int, default=900)
    p.add_argument("--pmax", type=int, default=7, choices=(2, 3, 5, 7))
    p.add_argument("--format", choices=("jsonl", "tsv"), default="jsonl")
    p.add_argument("--include-trivial", action="store_true")

    p = sub.add_parser("verify", help="verification suites")
    vsub = p.add_subparsers(dest="suite", required=True)
    v = vsub.add_parser("theorem2")
    v.add_argument("--kmin", type=int, default=2)
    v.add_argument("--kmax", type=int, default=900)
    v.add_argument("--truncate", help="fault injection k:bound (testing only)")
    v = vsub.add_parser("inequalities")
    v.add_argument("--kmax", type=int, default=30)
    v.add_argument("--nmax", type=int, default=300)
    return parser


def _cmd_fib(args, settings) -> int:
    print(kfib_value(args.k, args.n))
    return EXIT_OK


def _cmd_lpf(args, settings) -> int:
    print(largest_prime_factor(args.m).largest_prime)
    return EXIT_OK


def _cmd_root(args, settings) -> int:
    enc = dominant_root(args.k, args.bits).enclosure
    print(f"lo    = {enc.lo}")
    print(f"hi    = {enc.hi}")
    print(f"width = {float(enc.width()):.3e}")
    return EXIT_OK


def _cmd_bounds(args, settings) -> int:
    if args.bound == "lemma2":
        print(lemma2_log_n_bound(args.s, args.k))
    elif args.bound == "lemma3":
        print(lemma3_n_bound(args.k))
    else:
        heights = tuple(float(a) for a in args.heights.split(","))
        params = MatveevParams(t=len(heights), D=args.degree, B=args.coeff_bound, A=heights)
        print(matveev_log_lower_bound(params).log_lower_bound)
    return EXIT_OK


def _frac_log10(fr: Fraction) -> float:
    return (fr.numerator.bit_length() - fr.denominator.bit_length()) * math.log10(2)


def _cmd_reduce(args, settings) -> int:
    delta = settings["lll_delta"]
    if args.mode == "large-k":
        report = run_reduction_report(delta=delta, round_cap=settings["round_cap"])
        for rnd in report.rounds:
            print(
                f"round {rnd.round}: X={rnd.coeff_bound:.4e}  "
                f"L~1e{_frac_log10(rnd.form_lower_bound):.1f}  "
                f"k<={rnd.k_bound}  n<{rnd.n_bound:.4e}"
            )
        print(f"final: k<={report.final.k_max} after {len(report.rounds)} rounds")
        return EXIT_OK if report.converged else EXIT_FAIL
    n_bound = args.n_bound
    if n_bound is None:
        n_bound = math.ceil(lemma3_n_bound(args.k) * (1.0 + 1e-12)) + 1
    print(reduce_small_k(args.k, n_bound, delta))
    return EXIT_OK


def _cmd_solve(args, settings) -> int:
    cfg = RunConfig(
        k_min=args.kmin,
        k_max=args.kmax,
        prime_base=tuple(primes_below(args.pmax + 1)),
        precision_bits=settings["precision_bits"],
        lll_delta=settings["lll_delta"],
        round_cap=settings["round_cap"],
        output_format=args.format,
        workers=settings["workers"],
        hard_cap=settings["hard_cap"],
        include_trivial=args.include_trivial,
    )
    report = solve_smooth_detailed(cfg)
    text = serialize_records(report.records, cfg.output_format)
    if text:
        print(text)
    return EXIT_OK


def _cmd_verify(args, settings) -> int:
    if args.suite == "theorem2":
        cfg = RunConfig(
            k_min=args.kmin,
            k_max=args.kmax,
            lll_delta=settings["lll_delta"],
            round_cap=settings["round_cap"],
            workers=settings["workers"],
            hard_cap=settings["hard_cap"],
        )
        override = None
        if args.truncate:
            k_str, bound_str = args.truncate.split(":", 1)
            override = {int(k_str): int(bound_str)}
        verdict = verify_theorem2(cfg, override)
        if verdict.degenerate:
            print("PASS (degenerate: no expected solutions in range)")
            return EXIT_OK
        for rec in verdict.missing:
            print(f"MISSING: k={rec.k} n={rec.n} value={rec.value}")
        for rec in verdict.extra:
            print(f"EXTRA:   k={rec.k} n={rec.n} value={rec.value}")
        print(f"{'PASS' if verdict.passed else 'FAIL'}: {verdict.matched} matched")
        return EXIT_OK if verdict.passed else EXIT_FAIL
    failures = 0
    for report in (
        sandwich_suite(args.kmax, args.nmax, settings["precision_bits"]),
        dresden_suite(min(args.kmax, 30), min(args.nmax, 600)),
        section4_suite(10, max(10, args.kmax), args.nmax),
    ):
        status = "PASS" if report.passed else "FAIL"
        print(f"{status}: {report.name} ({report.checked} checks, {len(report.violations)} violations)")
        failures += len(report.violations)
    hits = power_of_two_scan(min(args.kmax, 100), args.nmax)
    pow2_ok = hits == [(2, 6, 8)]
    print(f"{'PASS' if pow2_ok else 'FAIL'}: power-of-two scan ({hits})")
    return EXIT_OK if failures == 0 and pow2_ok else EXIT_FAIL


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING)
    handlers = {
        "fib": _cmd_fib,
        "lpf": _cmd_lpf,
        "root": _cmd_root,
        "bounds": _cmd_bounds,
        "reduce": _cmd_reduce,
        "solve": _cmd_solve,
        "verify": _cmd_verify,
    }
    try:
        settings = _merged_settings(args)
        return handlers[args.command](args, settings)
    except (PrecisionError, ReductionError, FactorizationTimeout) as exc:
        print(f"precision/convergence failure: {exc}", file=sys.stderr)
        return EXIT_PRECISION
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
