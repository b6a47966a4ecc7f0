"""Command-line front end.

Exit status: 0 on success, 1 when a verification fails (a lattice bound
that does not hold, a bound ordering violated, an eigenvalue bound not certified),
2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from fractions import Fraction

from . import __version__
from .bounds import VARIANTS, bounds_row
from .charpoly import charpoly_oracle, charpoly_recurrence, pn_at_four_fifths
from .errors import CertificationError, DomainError
from .interval import DEFAULT_PRECISION
from .lattice import DivisorClosedSet, meet_matrix_lower_bound
from .matrix_core import build_Z
from .oracle import brute_force_cn
from .report import (
    ResultCache,
    emit_error_figures,
    emit_table1,
    sci_until_decided,
    sandwich,
)
from .roots import certify_eigenvalue_bounds, compute_cn, second_eigenvalue_report

log = logging.getLogger("hongloewy")

GLOBAL_DEFAULTS = {
    "digits": None,
    "precision_bits": DEFAULT_PRECISION,
    "format": "csv",
    "threads": 1,
    "cache_path": None,
    "variant": "as-stated",
    "allow_large": False,
    "verbose": False,
}


class UsageError(Exception):
    pass


def _global_options(defaults) -> argparse.ArgumentParser:
    # added to the top parser and every subparser so that global flags may
    # appear on either side of the subcommand
    p = argparse.ArgumentParser(add_help=False)
    d = (lambda v: v) if defaults else (lambda v: argparse.SUPPRESS)
    p.add_argument("--digits", type=int, default=d(None), help="printed digits (per command)")
    p.add_argument("--precision-bits", type=int, default=d(DEFAULT_PRECISION))
    p.add_argument("--format", choices=("csv", "json"), default=d("csv"))
    p.add_argument("--threads", type=int, default=d(1), help="worker processes for per-n work")
    p.add_argument("--cache-path", default=d(None), help="JSON cache of c_n enclosures")
    p.add_argument("--variant", choices=VARIANTS, default=d("as-stated"))
    p.add_argument("--allow-large", action="store_true", default=d(False), help="allow the n=7 brute force")
    p.add_argument("-v", "--verbose", action="store_true", default=d(False))
    return p


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


def build_parser() -> argparse.ArgumentParser:
    common = _global_options(defaults=False)
    parser = _Parser(
        prog="hongloewy",
        description="Certified constants c_n and their bounds.",
        parents=[common],
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)
    sub.required = True

    def add(name, help):
        return sub.add_parser(name, help=help, parents=[common], description=help)

    p = add("cn", "certified enclosure of c_n")
    p.add_argument("n", type=int, nargs="+")

    p = add("bounds", "all closed-form bounds on c_n")
    p.add_argument("n", type=int, nargs="+")

    p = add("charpoly", "characteristic polynomial of Z_n")
    p.add_argument("n", type=int)
    p.add_argument("--oracle", action="store_true", help="use the division-free oracle")

    p = add("oracle", "brute-force c_n over all of K_n")
    p.add_argument("n", type=int)
    p.add_argument("--shards", type=int, default=1)

    p = add("lattice", "GCD-matrix eigenvalue bound for S = {1..n} or --set")
    p.add_argument("n", type=int, nargs="?")
    p.add_argument("--set", dest="elements", help="comma-separated divisor-closed set")

    p = add("table1", "table of c_n and its bounds")
    p.add_argument("--n-min", type=int, default=2)
    p.add_argument("--n-max", type=int, default=10)

    p = add("figures", "error and significant-digit series")
    p.add_argument("--n-min", type=int, default=3)
    p.add_argument("--n-max", type=int, default=50)

    p = add("verify", "certify eigenvalue facts and bound orderings")
    p.add_argument("--n-max", type=int, default=30)
    return parser


def parse_args(argv=None) -> argparse.Namespace:
    args = build_parser().parse_args(argv)
    for k, v in GLOBAL_DEFAULTS.items():
        if not hasattr(args, k):
            setattr(args, k, v)
    if args.threads < 1:
        raise UsageError("--threads must be positive")
    if args.digits is not None and args.digits < 1:
        raise UsageError("--digits must be positive")
    if args.precision_bits < 53:
        raise UsageError("--precision-bits must be at least 53")
    return args


def _emit(args, payload: dict, fields: list[str], rows: list[dict]) -> None:
    if args.format == "json":
        sys.stdout.write(json.dumps(payload, indent=2) + "\n")
        return
    sys.stdout.write(",".join(fields) + "\n")
    for r in rows:
        sys.stdout.write(",".join(str(r[f]) for f in fields) + "\n")


def _bounds(enc) -> tuple[Fraction, Fraction]:
    return enc.lo, enc.hi


def _frac(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def cmd_cn(args) -> int:
    digits = args.digits or 30
    cache = ResultCache(args.cache_path) if args.cache_path else None
    rows = []
    for n in args.n:
        if n < 1:
            raise UsageError("n must be positive")
        if cache:
            cache.load(n)
        def make(level, n=n):
            r = compute_cn(n, (digits + 2) << level)
            return r.cn_lo, r.cn_hi

        c_str = sci_until_decided(make, digits)
        r = compute_cn(n, digits + 2)
        rows.append(
            {
                "n": n,
                "c_n": c_str,
                "lo": _frac(r.cn_lo),
                "hi": _frac(r.cn_hi),
            }
        )
        if cache:
            cache.store(n, r.lambda1)
    if cache:
        cache.save()
    _emit(args, {"results": rows}, ["n", "c_n"], rows)
    return 0


BOUNDS_FIELDS = {
    "lb_loewy": "loewy_lo",
    "ub_loewy": "loewy_hi",
    "lb_frob": "frob_lower",
    "lb_thm41": "thm41_lower",
    "ub_thm31": "thm31_upper",
    "ub_thm31_strict": "thm31_strict",
}


def cmd_bounds(args) -> int:
    digits = args.digits or 15
    bits = args.precision_bits
    rows = []
    for n in args.n:
        if n < 2:
            raise UsageError("bounds need n >= 2")
        rowsets = {}

        def field(name, level, n=n):
            if level not in rowsets:
                rowsets[level] = bounds_row(n, bits << level, args.variant)
            v = getattr(rowsets[level], name)
            return (v, v) if isinstance(v, Fraction) else v.fractions()

        row = {"n": n}
        for key, name in BOUNDS_FIELDS.items():
            row[key] = sci_until_decided(lambda lv: field(name, lv), digits)
        rows.append(row)
    fields = ["n", *BOUNDS_FIELDS]
    _emit(args, {"variant": args.variant, "results": rows}, fields, rows)
    return 0


def cmd_charpoly(args) -> int:
    if args.n < 1:
        raise UsageError("n must be positive")
    p = charpoly_oracle(build_Z(args.n)) if args.oracle else charpoly_recurrence(args.n)
    if args.format == "json":
        sys.stdout.write(json.dumps({"n": args.n, "coeffs": [str(c) for c in p.coeffs]}) + "\n")
    else:
        sys.stdout.write("degree,coefficient\n")
        for k, c in enumerate(p.coeffs):
            sys.stdout.write(f"{k},{c}\n")
    return 0


def cmd_oracle(args) -> int:
    digits = args.digits or 10
    r = brute_force_cn(
        args.n, digits + 2, shards=args.shards, workers=args.threads, allow_large=args.allow_large
    )
    row = {
        "n": r.n,
        "c_n": sci_until_decided(
            lambda lv: _bounds(r.min_root.refined_to_relative((digits + 2) << lv)), digits
        ),
        "argmin_bits": r.argmin.bits,
        "argmin": r.argmin.rows(),
        "matrices_scanned": r.matrices_scanned,
        "exact_confirmations": r.exact_confirmations,
    }
    fields = ["n", "c_n", "argmin_bits", "matrices_scanned", "exact_confirmations"]
    _emit(args, row, fields, [row])
    return 0


def cmd_lattice(args) -> int:
    if args.elements:
        try:
            S = DivisorClosedSet(tuple(int(t) for t in args.elements.split(",")))
        except ValueError as exc:
            raise UsageError(f"bad --set: {exc}") from None
    elif args.n:
        S = DivisorClosedSet.first(args.n)
    else:
        raise UsageError("give n or --set")
    digits = args.digits or 15
    runs = {}

    def run(level):
        if level not in runs:
            runs[level] = meet_matrix_lower_bound(
                S, digits=(digits + 2) << level, precision_bits=args.precision_bits << level
            )
        return runs[level]

    res = run(0)
    row = {
        "n": len(S),
        "bound": sci_until_decided(lambda lv: run(lv).bound.fractions(), digits),
        "lambda_min": sci_until_decided(lambda lv: run(lv).lambda_min.fractions(), digits),
        "holds": res.holds,
    }
    _emit(args, row, ["n", "bound", "lambda_min", "holds"], [row])
    return 0 if res.holds else 1


def _cache(args):
    return ResultCache(args.cache_path) if args.cache_path else None


def cmd_table1(args) -> int:
    if args.n_min < 2 or args.n_max < args.n_min:
        raise UsageError("need 2 <= n-min <= n-max")
    doc = emit_table1(
        range(args.n_min, args.n_max + 1),
        args.digits or 10,
        args.format,
        args.variant,
        args.precision_bits,
        args.threads,
        _cache(args),
    )
    sys.stdout.write(doc)
    return 0


def cmd_figures(args) -> int:
    if args.n_min < 2 or args.n_max < args.n_min:
        raise UsageError("need 2 <= n-min <= n-max")
    doc, slopes = emit_error_figures(
        range(args.n_min, args.n_max + 1),
        args.digits or 6,
        args.format,
        args.variant,
        args.precision_bits,
        args.threads,
        _cache(args),
    )
    sys.stdout.write(doc)
    if args.format == "csv" and slopes:
        for k in ("E1", "E2", "E1_rel", "E2_rel"):
            ref = slopes["reference_abs"] if k in ("E1", "E2") else slopes["reference_rel"]
            print(
                f"slope {k} over n={slopes['n_min']}..{slopes['n_max']}: "
                f"{slopes[k]:.6f} (reference {ref:.6f})",
                file=sys.stderr,
            )
    return 0


def cmd_verify(args) -> int:
    if args.n_max < 2:
        raise UsageError("--n-max must be >= 2")
    failures = []
    prev_l2 = None
    for n in range(2, args.n_max + 1):
        cert = certify_eigenvalue_bounds(n)
        if not (cert.lambda1_gt_one and cert.lambda2_lt_four_fifths):
            failures.append(f"n={n}: lambda_1 > 1 or lambda_2 < 4/5 not certified")
        if cert.p_at_four_fifths != pn_at_four_fifths(n):
            failures.append(f"n={n}: p_n(4/5) formula disagrees")
        checks = sandwich(n, args.variant, args.precision_bits)
        bad = [k for k, ok in checks.items() if not ok]
        if bad:
            failures.append(f"n={n}: ordering failed for {', '.join(bad)}")
        if n >= 3:
            rep = second_eigenvalue_report(n, 20)
            if not rep.interlaced:
                failures.append(f"n={n}: interlacing failed")
            if prev_l2 is not None and rep.lambda2.hi <= prev_l2.lo:
                failures.append(f"n={n}: lambda_2 decreased")
            prev_l2 = rep.lambda2
        log.info("n=%d checked", n)
    for f in failures:
        print(f, file=sys.stderr)
    status = "FAIL" if failures else "OK"
    print(f"verify n=2..{args.n_max}: {status} ({len(failures)} failures)")
    return 1 if failures else 0


COMMANDS = {
    "cn": cmd_cn,
    "bounds": cmd_bounds,
    "charpoly": cmd_charpoly,
    "oracle": cmd_oracle,
    "lattice": cmd_lattice,
    "table1": cmd_table1,
    "figures": cmd_figures,
    "verify": cmd_verify,
}


def main(argv=None) -> int:
    try:
        args = parse_args(argv)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return 2
    except SystemExit as exc:
        # --help and --version
        return int(exc.code or 0)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"hongloewy: error: {exc}", file=sys.stderr)
        return 2
    except DomainError as exc:
        print(f"hongloewy: error: {exc}", file=sys.stderr)
        return 2
    except CertificationError as exc:
        print(f"hongloewy: verification failed: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
