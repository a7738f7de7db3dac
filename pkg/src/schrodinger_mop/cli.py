"""Command-line front end.

``table`` writes a block of matrix elements as CSV or JSON, ``verify`` runs a
verification suite and prints its report, ``bench`` times the table routes
against each other.  Data goes to stdout (or ``--out``), diagnostics to
stderr.  Exit codes: 0 success, 1 verification failure, 2 usage or invalid
parameters, 3 convergence failure.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

import numpy as np

from .decompose import convolved_table
from .elements import ROUTES, compute_table, psi_oracle, psi_table
from .errors import ConvergenceError
from .group import GroupParams
from .verify import DEFAULT_TOL, SUITES, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CONVERGENCE = 0, 1, 2, 3


def _num(x) -> str:
    """17 significant digits; round-trip safe and byte-stable."""
    return format(float(x), ".17g")


def _dump(obj) -> str:
    """Minimal JSON writer that formats every float with :func:`_num`."""
    if isinstance(obj, dict):
        return "{" + ", ".join(f"{json.dumps(str(k))}: {_dump(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(_dump(v) for v in obj) + "]"
    if isinstance(obj, (bool, str)) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (complex, np.complexfloating)):
        return f"[{_num(obj.real)}, {_num(obj.imag)}]"
    return _num(obj)


def table_csv(table) -> str:
    lines = ["n,k,psi_re,psi_im"]
    for n in range(table.nmax + 1):
        for k in range(table.kmax + 1):
            z = table.entries[n, k]
            lines.append(f"{n},{k},{_num(z.real)},{_num(z.imag)}")
    return "\n".join(lines) + "\n"


def table_json(table) -> str:
    doc = {
        "params": table.params.as_dict(),
        "route": table.route,
        "nmax": table.nmax,
        "kmax": table.kmax,
        "entries": [[complex(z) for z in row] for row in table.entries],
    }
    return _dump(doc) + "\n"


def _params(args) -> GroupParams:
    return GroupParams(args.sigma, args.delta, args.rho, args.theta)


def _write(text: str, out):
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_table(args) -> int:
    table = compute_table(_params(args), args.nmax, args.kmax, route=args.route)
    _write(table_csv(table) if args.format == "csv" else table_json(table), args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    report = run_suite(args.suite, args.tol)
    _write(report.to_json(indent=2) + "\n", args.out)
    failed = report.failures()
    print(
        f"suite {args.suite}: {len(report.checks) - len(failed)}/{len(report.checks)} checks within "
        f"tolerance ({report.elapsed:.1f} s)",
        file=sys.stderr,
    )
    for c in failed:
        print(f"  FAIL {c.suite}/{c.name}: {c.residual:.3e} > {c.tol:.1e}", file=sys.stderr)
    return EXIT_OK if report.passed else EXIT_FAIL


def _timed(fn, *a):
    t0 = time.perf_counter()
    out = fn(*a)
    return out, time.perf_counter() - t0


def cmd_bench(args) -> int:
    p = _params(args)
    rows = []
    for size in args.sizes:
        rec, t_rec = _timed(psi_table, p, size, size)
        conv, t_conv = _timed(convolved_table, p, size, size)
        orc, t_orc = _timed(psi_oracle, p, size, size)
        dev = max(
            float(np.max(np.abs(rec.entries - orc.entries))),
            float(np.max(np.abs(conv.entries - orc.entries))),
            float(np.max(np.abs(rec.entries - conv.entries))),
        )
        rows.append(
            {
                "size": size,
                "recurrence_s": t_rec,
                "convolution_s": t_conv,
                "oracle_s": t_orc,
                "max_deviation": dev,
            }
        )
    _write(_dump({"params": p.as_dict(), "rows": rows}) + "\n", args.out)
    return EXIT_OK


def _sizes(text: str):
    try:
        sizes = [int(s) for s in text.split(",") if s.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")
    if not sizes or any(s < 0 for s in sizes):
        raise argparse.ArgumentTypeError("sizes must be nonnegative integers")
    return sizes


def _positive(text: str) -> float:
    value = float(text)
    if not value > 0:
        raise argparse.ArgumentTypeError("must be positive")
    return value


def _nonneg_int(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be a nonnegative integer")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="schrodinger-mop",
        description="Matrix elements of Schrodinger group elements in the oscillator basis.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_params(sp, defaults=(0.0, 0.0, 0.0, 0.0)):
        for name, default in zip(("sigma", "delta", "rho", "theta"), defaults):
            sp.add_argument(f"--{name}", type=float, default=default)

    t = sub.add_parser("table", help="compute psi_{n,k} for n <= nmax, k <= kmax")
    add_params(t)
    t.add_argument("--nmax", type=_nonneg_int, required=True)
    t.add_argument("--kmax", type=_nonneg_int, required=True)
    t.add_argument("--route", choices=ROUTES, default="recurrence")
    t.add_argument("--format", choices=("csv", "json"), default="csv")
    t.add_argument("--out", metavar="PATH")
    t.set_defaults(func=cmd_table)

    v = sub.add_parser("verify", help="run a verification suite and print its JSON report")
    v.add_argument("--suite", choices=sorted(SUITES) + ["all"], default="all")
    v.add_argument("--tol", type=_positive, default=DEFAULT_TOL)
    v.add_argument("--out", metavar="PATH")
    v.set_defaults(func=cmd_verify)

    b = sub.add_parser("bench", help="time the recurrence, convolution and oracle routes")
    add_params(b, (0.7, 0.1, 0.3, 0.5))
    b.add_argument("--sizes", type=_sizes, default=[8, 16, 32])
    b.add_argument("--out", metavar="PATH")
    b.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConvergenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONVERGENCE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
