"""Command-line interface: ``hermprod <command> ...``.

Exit codes: 0 success, 1 verification failure, 2 usage error,
3 resource budget exceeded.
"""
from __future__ import annotations

import argparse
import csv
import itertools
import json
import math
import sys
import time
from importlib import resources

from . import _config
from .asymptotics import scan_pair, theorem_bound
from .errors import DomainError, HermprodError, ResourceError
from .hermite import parse_convention
from .linearize import w4_single_sum, w4_exact, w4_via_ifactors
from .matrix import build_wmatrix, operator_norm
from .quadrature import w4_quadrature

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3

#: Largest ``--max-sum`` accepted by ``verify``.
VERIFY_MAX_SUM = 80


def _nonneg(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {v}")
    return v


def _positive_float(text):
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a number, got {text!r}") from None
    if not (v > 0 and math.isfinite(v)):
        raise argparse.ArgumentTypeError(f"expected a positive number, got {text!r}")
    return v


def load_schema(name):
    """JSON schema shipped with the package: ``output_record``, ``bounds_line`` or ``norm_report``."""
    path = resources.files("hermprod").joinpath("schemas", f"{name}.schema.json")
    return json.loads(path.read_text())


def _dump(obj, out):
    out.write(json.dumps(obj, sort_keys=True, allow_nan=False) + "\n")


def _record(command, inputs, results, provenance, timing=None):
    rec = {"command": command, "inputs": inputs, "results": results, "provenance": provenance}
    if timing is not None:
        rec["timing"] = {"seconds": timing}
    return rec


# -- commands ---------------------------------------------------------

def cmd_w4(args, out):
    conv = parse_convention(args.convention)
    t0 = time.perf_counter()
    value = w4_exact((args.j, args.p, args.q, args.k), conv)
    elapsed = time.perf_counter() - t0
    if args.json:
        results = {}
        if args.format in ("exact", "both"):
            results["exact"] = value.to_text()
        if args.format in ("float", "both"):
            results["float"] = {"value": float(value), "provenance": "exact"}
        inputs = {"idx": [args.j, args.p, args.q, args.k], "convention": conv.value,
                  "format": args.format}
        _dump(_record("w4", inputs, results, "exact", elapsed if args.timing else None), out)
        return EXIT_OK
    if args.format in ("exact", "both"):
        out.write(value.to_text() + "\n")
    if args.format in ("float", "both"):
        out.write(repr(float(value)) + "\n")
    return EXIT_OK


def cmd_quad(args, out):
    conv = parse_convention(args.convention)
    nodes = "auto" if args.nodes is None else args.nodes
    value = w4_quadrature((args.j, args.p, args.q, args.k), conv, nodes)
    if args.json:
        inputs = {"idx": [args.j, args.p, args.q, args.k], "convention": conv.value,
                  "nodes": nodes}
        results = {"float": {"value": value, "provenance": "quadrature"}}
        _dump(_record("quad", inputs, results, "quadrature"), out)
    else:
        out.write(repr(value) + "\n")
    return EXIT_OK


def _tuples_upto(max_sum):
    for total in range(max_sum + 1):
        for j in range(total + 1):
            for p in range(total - j + 1):
                for q in range(total - j - p + 1):
                    yield (j, p, q, total - j - p - q)


def verify_tuples(max_sum, tol):
    """Compare every assembly on all tuples with ``j+p+q+k <= max_sum``."""
    count = math.comb(max_sum + 4, 4)
    _config.check_budget(count, "verify enumeration")
    worst_abs = worst_rel = 0.0
    failures = []
    n_fail = 0
    for idx in _tuples_upto(max_sum):
        exact = w4_exact(idx)
        problems = []
        if w4_single_sum(idx) != exact:
            problems.append("single_sum")
        if w4_via_ifactors(idx) != exact:
            problems.append("ifactors")
        quad = w4_quadrature(idx)
        dev = abs(float(exact) - quad)
        worst_abs = max(worst_abs, dev)
        if exact:
            worst_rel = max(worst_rel, dev / abs(quad) if quad else math.inf)
        if dev > tol * max(1.0, abs(quad)):
            problems.append("quadrature")
        if problems:
            n_fail += 1
            if len(failures) < 50:
                failures.append({"idx": list(idx), "checks": problems, "exact": exact.to_text(),
                                 "quadrature": quad})
    return {
        "max_sum": max_sum,
        "tol": tol,
        "tuples": count,
        "max_abs_deviation": worst_abs,
        "max_rel_deviation": worst_rel,
        "n_failures": n_fail,
        "failures": failures,
    }


def cmd_verify(args, out):
    if args.max_sum > VERIFY_MAX_SUM:
        raise ResourceError(f"--max-sum {args.max_sum} exceeds {VERIFY_MAX_SUM}")
    summary = verify_tuples(args.max_sum, args.tol)
    _dump(_record("verify", {"max_sum": args.max_sum, "tol": args.tol}, summary, "exact"), out)
    return EXIT_OK if summary["n_failures"] == 0 else EXIT_FAIL


def cmd_bounds(args, out):
    if args.p > 10 or args.q > 10:
        raise DomainError("--p and --q must be at most 10")
    if args.jkmax > 2000:
        raise ResourceError(f"--jkmax {args.jkmax} exceeds 2000")
    _config.check_budget((args.jkmax + 1) * (args.jkmax + 2) // 2, "bounds grid")
    grid = scan_pair(args.p, args.q, args.jkmax, exponent=args.exponent)
    fitted = grid.constant
    cpq = args.cpq if args.cpq is not None else (fitted if fitted > 0 else 1.0)
    all_ok = True
    for j, k, w in grid.entries:
        rep = theorem_bound((j, args.p, args.q, k), cpq, exponent=args.exponent, absw=w)
        all_ok &= all(rep.ok.values())
        if not args.summary_only:
            _dump({"report": rep.to_json()}, out)
    fit = {
        "p": args.p,
        "q": args.q,
        "jkmax": args.jkmax,
        "exponent": args.exponent,
        "cpq": fitted,
        "cpq_used": cpq,
        "tier1_needed": grid.tier1_needed,
        "tier2_needed": grid.tier2_needed,
        "tier3_needed": grid.tier3_needed,
        "a": fitted ** (1.0 / (args.p + args.q)) if args.p + args.q and fitted > 0 else None,
        "tuples": len(grid.entries),
        "all_ok": all_ok,
    }
    _dump({"fit": fit}, out)
    return EXIT_OK if all_ok else EXIT_FAIL


def cmd_table(args, out):
    conv = parse_convention(args.convention)
    kmax = args.jmax if args.kmax is None else args.kmax
    _config.check_budget((args.jmax + 1) * (kmax + 1), "table")
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["j", "p", "q", "k", "W_float", "W_exact", "provenance"])
    for j, k in itertools.product(range(args.jmax + 1), range(kmax + 1)):
        v = w4_exact((j, args.p, args.q, k), conv)
        writer.writerow([j, args.p, args.q, k, repr(float(v)), v.to_text(), "exact"])
    return EXIT_OK


def cmd_norms(args, out):
    conv = parse_convention(args.convention)
    m = build_wmatrix(args.p, args.q, args.size, conv)
    rep = operator_norm(m, tol=args.tol)
    if args.csv:
        with open(args.csv, "w") as fh:
            m.to_csv(fh)
    payload = rep.to_json()
    payload["convention"] = conv.value
    _dump(payload, out)
    return EXIT_OK


# -- parser -----------------------------------------------------------

def build_parser():
    parser = argparse.ArgumentParser(prog="hermprod", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def conv_opt(p):
        p.add_argument("--convention", choices=["paper", "unit"], default="paper")

    def idx_args(p):
        for name in "jpqk":
            p.add_argument(name, type=_nonneg)

    p = sub.add_parser("w4", help="exact W_jpqk")
    idx_args(p)
    conv_opt(p)
    p.add_argument("--format", choices=["exact", "float", "both"], default="exact")
    p.add_argument("--json", action="store_true", help="emit an OutputRecord")
    p.add_argument("--timing", action="store_true", help="add wall time to the record")
    p.set_defaults(func=cmd_w4)

    p = sub.add_parser("quad", help="W_jpqk by Gauss-Hermite quadrature")
    idx_args(p)
    conv_opt(p)
    p.add_argument("--nodes", type=_nonneg, default=None)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_quad)

    p = sub.add_parser("verify", help="cross-check exact, quadrature and alternative assemblies")
    p.add_argument("--max-sum", type=_nonneg, default=12)
    p.add_argument("--tol", type=_positive_float, default=1e-10)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bounds", help="three-tier bound reports and fitted constants")
    p.add_argument("--p", type=_nonneg, default=0)
    p.add_argument("--q", type=_nonneg, default=0)
    p.add_argument("--jkmax", type=_nonneg, default=100)
    p.add_argument("--exponent", choices=["d2", "d4"], default="d2")
    p.add_argument("--cpq", type=_positive_float, default=None,
                   help="check against this constant instead of the fitted one")
    p.add_argument("--summary-only", action="store_true")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("table", help="CSV table of W_jpqk over j, k")
    p.add_argument("--jmax", type=_nonneg, required=True)
    p.add_argument("--kmax", type=_nonneg, default=None)
    p.add_argument("--p", type=_nonneg, default=0)
    p.add_argument("--q", type=_nonneg, default=0)
    conv_opt(p)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("norms", help="Schur norm vs operator norm of the W matrix")
    p.add_argument("--p", type=_nonneg, default=0)
    p.add_argument("--q", type=_nonneg, default=0)
    p.add_argument("--size", type=_nonneg, default=100)
    p.add_argument("--tol", type=_positive_float, default=1e-10)
    p.add_argument("--csv", default=None, help="also write the matrix as CSV")
    conv_opt(p)
    p.set_defaults(func=cmd_norms)
    return parser


def main(argv=None, out=None):
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.func(args, out)
    except ResourceError as exc:
        print(f"hermprod: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (DomainError, ValueError) as exc:
        print(f"hermprod: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except HermprodError as exc:
        print(f"hermprod: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
