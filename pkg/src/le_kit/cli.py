"""Command-line interface.

Subcommands: classify, eval, trace, verify, figure.  Data goes to stdout
(or --out), diagnostics to stderr.  Exit codes: 0 success, 1 failed
verification verdict, 2 usage error, 3 domain error, 4 I/O error.
Output is deterministic: identical invocations produce identical bytes.

Set LE_KIT_LOG to error/info/debug to control stderr logging.
"""

from __future__ import annotations

import argparse
import json
import logging
import math
import os
import sys

from . import solutions, verify
from .errors import LaneEmdenKitError
from .lane_emden import critical_case, singular_solution, talenti_aubin
from .regimes import DEGENERATE_C_TOL, RegimeLabel, classify, potential
from .solutions import build, evaluate, trace

log = logging.getLogger("le_kit")

_FIGURE_C_SET = (-2.0, -1.0, -0.5, 0.0, 1.0)
_SOLUTION_C_SET = (-2.0, -1.0, -0.5, 1.0, 2.0)


def _configure_logging() -> None:
    name = os.environ.get("LE_KIT_LOG", "error").strip().lower()
    level = {"error": logging.ERROR, "info": logging.INFO, "debug": logging.DEBUG}.get(
        name, logging.ERROR
    )
    logging.basicConfig(
        stream=sys.stderr, level=level, format="le-kit %(levelname)s: %(message)s"
    )


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _add_case_args(p: argparse.ArgumentParser, with_b: bool = True) -> None:
    p.add_argument("--d", type=int, required=True, help="space dimension (4 or 6)")
    p.add_argument("--C", type=float, required=True, help="first-integral constant")
    if with_b:
        p.add_argument("--B", type=float, default=1.0, help="integration constant (> 0)")
        p.add_argument(
            "--sign", type=int, choices=(1, -1), default=1, help="overall sign of theta"
        )


def _add_grid_args(p: argparse.ArgumentParser, n_default: int) -> None:
    p.add_argument("--x-min", type=float, default=0.01)
    p.add_argument("--x-max", type=float, default=100.0)
    p.add_argument("--n", type=int, default=n_default)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="le-kit",
        description="Closed-form solutions of the critical Lane-Emden equation:"
        " classify regimes, evaluate and trace solution families, verify them"
        " against the equation, and emit figure data.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="regime of a constant C")
    _add_case_args(p, with_b=False)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("eval", help="evaluate theta(x) for one family")
    _add_case_args(p)
    p.add_argument("--x", type=float, required=True)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_eval)

    p = sub.add_parser("trace", help="sample theta on a grid")
    _add_case_args(p)
    _add_grid_args(p, n_default=200)
    p.add_argument("--spacing", choices=("log", "linear"), default="log")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_trace)

    p = sub.add_parser("verify", help="check a family against the equation")
    _add_case_args(p)
    p.add_argument("--x-min", type=float, default=0.05)
    p.add_argument("--x-max", type=float, default=20.0)
    p.add_argument("--n", type=int, default=200)
    p.add_argument("--tol", type=float, default=1e-6, help="relative residual bound")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("figure", help="emit figure data as CSV")
    p.add_argument("which", choices=("w43", "w62", "solutions"))
    p.add_argument("--d", type=int, default=4, help="dimension for 'solutions'")
    _add_grid_args(p, n_default=400)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_figure)

    return parser


def _cmd_classify(args) -> int:
    case = critical_case(args.d)
    report = classify(case, args.C)
    if report.label is RegimeLabel.NO_REAL_SOLUTION:
        sys.stderr.write("no real solutions: the potential is negative for all real z\n")
        return 3
    if case.d == 6 and abs(args.C + 1.0) <= DEGENERATE_C_TOL:
        sys.stderr.write(
            "note: w62(1) = 1 + C vanishes exactly at C = -1, so the constant"
            " z = 1 branch coexists with the half line z <= -1/2\n"
        )
    if args.format == "json":
        _emit(report.to_json() + "\n", args.out)
    else:
        lines = [
            f"d = {case.d}, p = {case.p}, C = {args.C!r}",
            f"regime: {report.label.value}",
            "roots (value, multiplicity): "
            + ", ".join(f"({r!r}, {m})" for r, m in report.roots),
            "admissible z-intervals: "
            + ", ".join(f"[{lo!r}, {hi!r}]" for lo, hi in report.intervals),
        ]
        _emit("\n".join(lines) + "\n", args.out)
    return 0


def _cmd_eval(args) -> int:
    case = critical_case(args.d)
    sol = build(case, args.C, B=args.B, sign_outer=args.sign)
    theta = evaluate(sol, args.x)
    if args.format == "json":
        payload = {"d": args.d, "C": args.C, "B": args.B, "x": args.x, "theta": theta}
        _emit(json.dumps(payload) + "\n", args.out)
    else:
        _emit(f"{theta!r}\n", args.out)
    return 0


def _cmd_trace(args) -> int:
    case = critical_case(args.d)
    sol = build(case, args.C, B=args.B, sign_outer=args.sign)
    tr = trace(sol, args.x_min, args.x_max, args.n, spacing=args.spacing)
    _emit(tr.to_csv() if args.format == "csv" else tr.to_json() + "\n", args.out)
    return 0


def _cmd_verify(args) -> int:
    case = critical_case(args.d)
    sol = build(case, args.C, B=args.B, sign_outer=args.sign)
    report = verify.check_closed_form(
        sol, (args.x_min, args.x_max), n=args.n, residual_tol=args.tol
    )
    if args.format == "json":
        _emit(json.dumps(report.to_dict()) + "\n", args.out)
    else:
        lines = [
            f"max relative residual: {report.max_residual!r}",
            f"recovered C: {report.recovered_C!r} (expected {report.expected_C!r})",
            f"first-integral drift: {report.max_first_integral_drift!r}",
            f"points: {report.n_points}",
            f"verdict: {'pass' if report.passed else 'FAIL'}",
        ]
        _emit("\n".join(lines) + "\n", args.out)
    log.info("verify verdict: %s", report.passed)
    return 0 if report.passed else 1


def _potential_csv(d: int, z_lo: float, z_hi: float, n: int = 401) -> str:
    case = critical_case(d)
    polys = [potential(case, c) for c in _FIGURE_C_SET]
    header = "z," + ",".join(f"C={c:g}" for c in _FIGURE_C_SET)
    lines = [header]
    for i in range(n):
        z = z_lo + (z_hi - z_lo) * i / (n - 1)
        lines.append(",".join([repr(z)] + [repr(poly(z)) for poly in polys]))
    return "\n".join(lines) + "\n"


def _solutions_csv(d: int, x_lo: float, x_hi: float, n: int) -> str:
    case = critical_case(d)
    lo, hi = math.log(x_lo), math.log(x_hi)
    xs = [math.exp(lo + (hi - lo) * i / (n - 1)) for i in range(n)]
    rows = ["label,x,theta"]

    def add(label: str, values) -> None:
        for x, th in zip(xs, values):
            rows.append(f"{label},{x!r}," if th is None else f"{label},{x!r},{th!r}")

    add("singular", [singular_solution(case, x) for x in xs])
    add("talenti-aubin", [talenti_aubin(case, x) for x in xs])
    for c in _SOLUTION_C_SET:
        try:
            sol = build(case, c, B=1.0)
        except LaneEmdenKitError as exc:
            log.info("skipping C=%g for d=%d: %s", c, d, exc)
            continue
        tr = solutions.trace(sol, x_lo, x_hi, n, spacing="log")
        add(f"C={c:g}", tr.thetas)
    return "\n".join(rows) + "\n"


def _cmd_figure(args) -> int:
    if args.which == "w43":
        text = _potential_csv(4, -2.0, 2.0)
    elif args.which == "w62":
        text = _potential_csv(6, -1.5, 2.5)
    else:
        text = _solutions_csv(args.d, args.x_min, args.x_max, args.n)
    _emit(text, args.out)
    return 0


def main(argv: list[str] | None = None) -> int:
    _configure_logging()
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    log.debug("dispatch: %s", args.command)
    try:
        return args.func(args)
    except LaneEmdenKitError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 3
    except OSError as exc:
        sys.stderr.write(f"i/o error: {exc}\n")
        return 4


if __name__ == "__main__":
    sys.exit(main())
