"""Command-line front end.

Subcommands ``table1``, ``fig2``, ``tc``, ``check`` and ``directions``.
CSV and reports go to stdout, diagnostics to stderr. Exit codes: 0 success,
1 search bracket exceeded, 2 bad flags, 3 malformed input file.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import analysis
from .criteria import (
    eval_dicke_criterion,
    eval_observation1,
    eval_standard_squeezing,
    optimal_directions,
)
from .io import InputFileError, read_moments_file, read_state_file
from .models import FAMILIES, ModelSpec
from .spin import moments_from_state

EXIT_OK, EXIT_COMPUTE, EXIT_USAGE, EXIT_INPUT = 0, 1, 2, 3

FAMILY_ALIASES = {"heisenberg": "heisenberg_ring", "xy": "xy_ring"}
SHORT_NAMES = {v: k for k, v in FAMILY_ALIASES.items()}


def fmt(x) -> str:
    if x is None:
        return ""
    return f"{x:.6g}"


def _family(name: str) -> str:
    name = FAMILY_ALIASES.get(name, name)
    if name not in FAMILIES:
        raise argparse.ArgumentTypeError(f"unknown family {name!r}")
    return name


def _add_search_flags(p):
    p.add_argument("--t-max", type=float, default=analysis.DEFAULT_T_MAX)
    p.add_argument("--grid-points", type=int, default=analysis.DEFAULT_GRID_POINTS)
    p.add_argument("--tol", type=float, default=analysis.DEFAULT_TOL)


def _search(args) -> dict:
    return dict(t_max=args.t_max, grid_points=args.grid_points, tol=args.tol)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="spinsq", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("table1", help="critical temperatures of Heisenberg and XY rings")
    p.add_argument("--family", choices=("heisenberg", "xy", "both"), default="both")
    p.add_argument("--n", type=int, action="append", help="ring size (repeatable; default 3..9)")
    p.add_argument("--criterion", choices=("eqs2", "ppt", "both"), default="both")
    _add_search_flags(p)

    p = sub.add_parser("fig2", help="critical temperatures of the 4-qubit cluster model versus j2")
    p.add_argument("--j2-min", type=float, default=-1.0)
    p.add_argument("--j2-max", type=float, default=2.0)
    p.add_argument("--steps", type=int, default=13)
    p.add_argument("--criteria", default="eqs2,ppt,ccnr", help="comma-separated subset of eqs2,ppt,ccnr")
    _add_search_flags(p)

    p = sub.add_parser("tc", help="a single critical temperature")
    p.add_argument("--family", type=_family, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--j2", type=float, default=0.0)
    p.add_argument("--criterion", choices=analysis.CRITERIA, default="eqs2")
    p.add_argument("--optimize-directions", action="store_true")
    _add_search_flags(p)

    p = sub.add_parser("check", help="evaluate all criteria on a state or measured moments")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--state", metavar="FILE")
    src.add_argument("--moments", metavar="FILE")
    p.add_argument("--optimize-directions", action="store_true")

    p = sub.add_parser("directions", help="optimal measurement directions from full moments")
    p.add_argument("--moments", metavar="FILE", required=True)
    return parser


def _validate_search(parser, args):
    if not args.t_max > analysis.T_MIN:
        parser.error(f"--t-max must exceed {analysis.T_MIN}")
    if args.grid_points < 2:
        parser.error("--grid-points must be at least 2")
    if not args.tol > 0:
        parser.error("--tol must be positive")


def cmd_table1(args, parser, out) -> int:
    ns = args.n or list(range(3, 10))
    for n in ns:
        if n < 3:
            parser.error(f"--n {n}: rings need at least 3 qubits")
    families = ("heisenberg_ring", "xy_ring") if args.family == "both" else (FAMILY_ALIASES[args.family],)
    criteria = ("eqs2", "ppt") if args.criterion == "both" else (args.criterion,)
    out.append("family,n,criterion,t_c,t_lo,t_hi")
    for r in analysis.table1(ns, families, criteria, **_search(args)):
        lo, hi = r.bracket or (None, None)
        out.append(f"{SHORT_NAMES[r.model.family]},{r.model.n},{r.criterion},{fmt(r.t_c)},{fmt(lo)},{fmt(hi)}")
    return EXIT_OK


def cmd_fig2(args, parser, out) -> int:
    criteria = [c.strip() for c in args.criteria.split(",") if c.strip()]
    bad = [c for c in criteria if c not in ("eqs2", "ppt", "ccnr")]
    if bad or not criteria:
        parser.error(f"--criteria must be a subset of eqs2,ppt,ccnr (got {args.criteria!r})")
    if args.steps < 1:
        parser.error("--steps must be at least 1")
    criteria = [c for c in ("eqs2", "ppt", "ccnr") if c in criteria]
    with_window = "eqs2" in criteria and "ppt" in criteria
    header = ["j2"] + [f"t_{c}" for c in criteria]
    if with_window:
        header += ["window_lo", "window_hi"]
    out.append(",".join(header))
    rows = analysis.j2_sweep(args.j2_min, args.j2_max, args.steps, criteria, **_search(args))
    for row in rows:
        cells = [fmt(row.j2)] + [fmt(row.t_c[c]) for c in criteria]
        if with_window:
            lo, hi = row.window or (None, None)
            cells += [fmt(lo), fmt(hi)]
        out.append(",".join(cells))
    return EXIT_OK


def cmd_tc(args, parser, out) -> int:
    try:
        model = ModelSpec(args.family, args.n, args.j2 if args.family == "cluster4" else 0.0)
    except ValueError as e:
        parser.error(str(e))
    if args.family != "cluster4" and args.j2 != 0:
        parser.error("--j2 only applies to cluster4")
    r = analysis.critical_temperature(
        model, args.criterion, optimize_directions=args.optimize_directions, **_search(args)
    )
    lo, hi = r.bracket or (None, None)
    out.append("family,n,j2,criterion,t_c,t_lo,t_hi")
    out.append(f"{model.family},{model.n},{fmt(model.j2)},{r.criterion},{fmt(r.t_c)},{fmt(lo)},{fmt(hi)}")
    return EXIT_OK


def _margin_lines(margins: dict) -> list[str]:
    return [f"  {k:<7} {fmt(v)}" for k, v in margins.items()]


def _directions_lines(m) -> list[str]:
    d = optimal_directions(m)
    lines = ["optimal frame O (rows are axes x', y', z'):"]
    lines += ["  " + " ".join(f"{fmt(v):>12}" for v in row) for row in d.rotation]
    lines.append("eigenvalues of X = (N-1) gamma + C: " + " ".join(fmt(v) for v in d.x_eigenvalues))
    lines.append(
        f"eq2c in some direction: {'VIOLATED' if d.eq2c_violated else 'not violated in any direction'}"
        f" (min eig {fmt(d.x_eigenvalues[0])} vs Tr C - N/2 = {fmt(d.eq2c_threshold)})"
    )
    lines.append(
        f"eq2d in some direction: {'VIOLATED' if d.eq2d_violated else 'not violated in any direction'}"
        f" (max eig {fmt(d.x_eigenvalues[-1])} vs (N-1) Tr gamma - N(N-2)/4 = {fmt(d.eq2d_threshold)})"
    )
    eq2b = d.report.margins["eq2b"]
    lines.append(f"eq2b (rotation-invariant): {'violated' if eq2b > 1e-9 else 'not violated'} (margin {fmt(eq2b)})")
    lines.append("margins in the optimal frame:")
    lines += _margin_lines(d.report.margins)
    return lines


def cmd_check(args, parser, out) -> int:
    if args.state:
        m = moments_from_state(read_state_file(args.state))
    else:
        m = read_moments_file(args.moments)
    if m.n < 2:
        raise InputFileError(args.state or args.moments, None, "need N >= 2")
    report = eval_observation1(m)
    out.append(f"N = {m.n}")
    out.append("J = " + " ".join(fmt(v) for v in m.j_vec))
    out.append("K = " + " ".join(fmt(v) for v in m.k_vec))
    out.append("margins (positive = violated):")
    out += _margin_lines(report.margins)
    eq1 = eval_standard_squeezing(m)
    out.append(f"  {'eq1':<7} {'n/a' if eq1 is None else fmt(eq1)}")
    case2 = eval_dicke_criterion(m)
    out.append(f"  {'case2':<7} {fmt(case2)}")
    detected = report.detected or (eq1 is not None and eq1 > 1e-9) or case2 > 1e-9
    if args.optimize_directions:
        if not m.has_full_corr:
            out.append("direction optimization unavailable: off-diagonal correlations unknown")
        else:
            lines = _directions_lines(m)
            d = optimal_directions(m)
            detected = detected or d.report.detected
            out += lines
    if detected:
        out.append(f"verdict: ENTANGLED (max margin {fmt(report.max_margin)} at {report.argmax_id})")
    else:
        out.append("verdict: not detected")
    return EXIT_OK


def cmd_directions(args, parser, out) -> int:
    m = read_moments_file(args.moments)
    if not m.has_full_corr:
        raise InputFileError(args.moments, None, "directions needs Cxy, Cxz and Cyz")
    if m.n < 2:
        raise InputFileError(args.moments, None, "need N >= 2")
    out += _directions_lines(m)
    return EXIT_OK


COMMANDS = {
    "table1": cmd_table1,
    "fig2": cmd_fig2,
    "tc": cmd_tc,
    "check": cmd_check,
    "directions": cmd_directions,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if hasattr(args, "t_max"):
        _validate_search(parser, args)
    out: list[str] = []
    try:
        code = COMMANDS[args.command](args, parser, out)
    except InputFileError as e:
        print(f"spinsq: {e}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as e:
        print(f"spinsq: {e}", file=sys.stderr)
        return EXIT_INPUT
    except analysis.BracketExceededError as e:
        print(f"spinsq: {e}", file=sys.stderr)
        return EXIT_COMPUTE
    sys.stdout.write("\n".join(out) + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
