"""Command-line front end.

    sewitness detect --family max-entangled --alpha-frac 3/8
    sewitness scan --family werner-like --p 0.6 --grid 0:pi:201 --out scan.csv
    sewitness eof --family werner-like --out eof.csv
    sewitness figure 1 --out fig1.csv
    sewitness robustness --family pure-mixed --p 1 --alpha-frac 3/8

Exit codes: detect returns 0 (consistent with a product state), 1
(correlated), 2 (degenerate); robustness returns 0 (feasible) or 1
(infeasible).  Any error exits with 3.
"""
from __future__ import annotations

import argparse
import contextlib
import math
import re
import sys
from fractions import Fraction

import numpy as np

from . import detection, entanglement, robustness
from .detection import Verdict, fmt
from .dynamics import evolve_reduced_matrix
from .qcore import DensityMatrix, ValidationError, load_matrix, partial_trace_env
from .states import Kind, StateFamily, build_state

EXIT_ERROR = 3
EXIT_BY_VERDICT = {Verdict.CONSISTENT: 0, Verdict.CORRELATED: 1, Verdict.DEGENERATE: 2}

_PI_EXPR = re.compile(r"^([+-]?[0-9.]*)\s*\*?\s*pi(?:\s*/\s*([0-9.]+))?$")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 by default, which would read as "degenerate"
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def parse_number(text: str) -> float:
    """Float, or a multiple of pi such as ``pi``, ``3pi/8``, ``-pi/2``."""
    s = text.strip().lower()
    m = _PI_EXPR.match(s)
    if m:
        num = m.group(1)
        coef = 1.0 if num in ("", "+") else -1.0 if num == "-" else float(num)
        den = float(m.group(2)) if m.group(2) else 1.0
        return coef * math.pi / den
    try:
        return float(s)
    except ValueError:
        raise UsageError(f"cannot parse number {text!r}") from None


def parse_grid(text: str):
    parts = text.split(":")
    if len(parts) != 3:
        raise UsageError(f"grid must be start:stop:steps, got {text!r}")
    start, stop = parse_number(parts[0]), parse_number(parts[1])
    try:
        steps = int(parts[2])
    except ValueError:
        raise UsageError(f"grid steps must be an integer, got {parts[2]!r}") from None
    if steps < 2:
        raise UsageError("grid needs at least 2 steps")
    return np.linspace(start, stop, steps)


def parse_frac(text: str) -> float:
    try:
        return float(Fraction(text.strip())) * math.pi
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"--alpha-frac expects a/b, got {text!r}") from None


def resolve_alpha(args) -> float:
    if args.alpha_frac is not None:
        return parse_frac(args.alpha_frac)
    if args.alpha is not None:
        return parse_number(args.alpha)
    raise UsageError("one of --alpha / --alpha-frac is required")


def resolve_family(args) -> StateFamily:
    return StateFamily.parse(args.family, args.p)


def load_inputs(args, alpha):
    """Return (label, rho_S, rho'_S, joint-or-None) from --family or --file."""
    if args.family is not None:
        f = resolve_family(args)
        rho = build_state(f)
        return str(f), partial_trace_env(rho.mat), evolve_reduced_matrix(rho.mat, alpha), rho
    files = args.file
    if len(files) == 1:
        joint = DensityMatrix(load_matrix(files[0]))
        if joint.dim != 4:
            raise ValidationError("a single --file must hold the 4x4 joint state")
        return files[0], partial_trace_env(joint.mat), evolve_reduced_matrix(joint.mat, alpha), joint
    if len(files) == 2:
        rs = DensityMatrix(load_matrix(files[0]))
        rp = DensityMatrix(load_matrix(files[1]))
        if rs.dim != 2 or rp.dim != 2:
            raise ValidationError("two --file arguments must hold 2x2 initial and final system states")
        return f"{files[0]} -> {files[1]}", rs.mat, rp.mat, None
    raise UsageError("--file takes a joint state, or initial and final system states")


def check_source(args) -> None:
    has_file = bool(args.file)
    if (args.family is None) == (not has_file):
        raise UsageError("give exactly one of --family or --file")


def _matrix_lines(name, m):
    m = np.asarray(m)
    rows = ["  [" + ", ".join(f"{z.real:+.9f}{z.imag:+.9f}j" for z in row) + "]" for row in m]
    return [f"{name} ="] + rows


@contextlib.contextmanager
def _output(path):
    if path is None or path == "-":
        yield sys.stdout
    else:
        with open(path, "w", newline="\n", encoding="ascii") as fh:
            yield fh


# -- commands -----------------------------------------------------------------

def cmd_detect(args) -> int:
    check_source(args)
    alpha = resolve_alpha(args)
    label, rs, rp, _ = load_inputs(args, alpha)
    res = detection.witness_distance(rs, rp, alpha, args.tol)
    v = res.minimizer
    lines = [
        f"input: {label}",
        f"alpha: {fmt(alpha)}",
        f"verdict: {res.verdict.value}",
        f"distance: {fmt(res.distance)}",
        f"minimizer: ({fmt(v.x)}, {fmt(v.y)}, {fmt(v.z)})",
        *_matrix_lines("rho_S", rs),
        *_matrix_lines("rho_S_final", rp),
    ]
    print("\n".join(lines))
    return EXIT_BY_VERDICT[res.verdict]


def cmd_scan(args) -> int:
    check_source(args)
    alphas = parse_grid(args.grid or "0:pi:201")
    if args.family is not None:
        rows = detection.scan_alpha(resolve_family(args), alphas, args.tol)
    else:
        if len(args.file) != 1:
            raise UsageError("scan needs the 4x4 joint state; measured pairs fix alpha")
        joint = DensityMatrix(load_matrix(args.file[0]))
        rows = []
        for a in alphas:
            r = detection.detect(joint, a, args.tol)
            rows.append(detection.ScanRow(float(a), r.distance, r.minimizer.x, r.minimizer.y, r.minimizer.z, r.verdict))
    with _output(args.out) as fh:
        detection.write_scan_csv(rows, fh)
    return 0


def _write_eof(rows, fh):
    fh.write("p,eof\n")
    for p, e in rows:
        fh.write(f"{fmt(p)},{fmt(e)}\n")


def _eof_rows(kind: Kind, ps):
    return [(float(p), entanglement.eof(build_state(StateFamily(kind, float(p))))) for p in ps]


def cmd_eof(args) -> int:
    check_source(args)
    if args.file:
        if len(args.file) != 1:
            raise UsageError("eof needs a single 4x4 joint state file")
        rho = DensityMatrix(load_matrix(args.file[0]))
        print(f"concurrence: {fmt(entanglement.concurrence(rho))}")
        print(f"eof: {fmt(entanglement.eof(rho))}")
        return 0
    kind = resolve_family(args).kind
    n = int(round(1.0 / args.step))
    if n < 1 or abs(n * args.step - 1.0) > 1e-9:
        raise UsageError(f"--step {args.step} does not divide [0, 1]")
    ps = parse_grid(args.grid) if args.grid else np.arange(n + 1) / n
    with _output(args.out) as fh:
        _write_eof(_eof_rows(kind, ps), fh)
    return 0


def figure_rows(fig: int, grid=None, p_grid=None, step=0.005):
    """Header and rows of the data behind figure ``fig`` (1..5)."""
    if fig == 1:
        alphas = parse_grid(grid or "0:pi:801")
        f = StateFamily(Kind.MAX_ENTANGLED)
        return ["alpha", "z"], [(a, detection.z_relation(f, a)) for a in alphas]
    if fig in (2, 3):
        kind = Kind.PURE_MIXED if fig == 2 else Kind.WERNER_LIKE
        if grid:
            ps = parse_grid(grid)
        else:
            n = int(round(1.0 / step))
            ps = np.arange(n + 1) / n
        return ["p", "eof"], _eof_rows(kind, ps)
    if fig in (4, 5):
        kind = Kind.PURE_MIXED if fig == 4 else Kind.WERNER_LIKE
        alphas = parse_grid(grid or "0:pi:201")
        ps = parse_grid(p_grid or "0:1:21")
        rows = []
        for a in alphas:
            for p in ps:
                rows.append((a, p, detection.z_relation(StateFamily(kind, float(p)), a)))
        return ["alpha", "p", "z"], rows
    raise UsageError(f"unknown figure id {fig} (expected 1-5)")


def cmd_figure(args) -> int:
    header, rows = figure_rows(args.fig, args.grid, args.p_grid, args.step)
    with _output(args.out) as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(fmt(v) for v in row) + "\n")
    return 0


def cmd_robustness(args) -> int:
    check_source(args)
    alpha = resolve_alpha(args)
    label, rs, rp, _ = load_inputs(args, alpha)
    tol = robustness.EPS_ROB if args.tol is None else args.tol
    res = robustness.robustness_check(rs, rp, alpha, tol)
    n, m = res.best_n, res.best_m
    print("\n".join([
        f"input: {label}",
        f"alpha: {fmt(alpha)}",
        f"feasible: {'yes' if res.feasible else 'no'}",
        f"residual: {fmt(res.residual)}",
        f"n: ({fmt(n.x)}, {fmt(n.y)}, {fmt(n.z)})",
        f"m: ({fmt(m.x)}, {fmt(m.y)}, {fmt(m.z)})",
    ]))
    return 0 if res.feasible else 1


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="sewitness", description="Detect initial system-environment correlations.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def source(p):
        p.add_argument("--family", choices=[k.value for k in Kind])
        p.add_argument("--file", action="append", default=[],
                       help="JSON matrix file; once for a 4x4 joint state, twice for initial and final system states")
        p.add_argument("--p", type=float, default=0.0, help="mixing parameter of the family")

    def alpha(p):
        g = p.add_mutually_exclusive_group()
        g.add_argument("--alpha", help="alpha = Jt in radians (accepts e.g. 3pi/8)")
        g.add_argument("--alpha-frac", help="alpha as a fraction of pi, e.g. 13/32")

    p = sub.add_parser("detect", help="run the witness at one alpha")
    source(p)
    alpha(p)
    p.add_argument("--tol", type=float, default=detection.EPS_FEAS)
    p.set_defaults(func=cmd_detect)

    p = sub.add_parser("scan", help="witness over an alpha grid, CSV output")
    source(p)
    p.add_argument("--grid", help="start:stop:steps (default 0:pi:201)")
    p.add_argument("--tol", type=float, default=detection.EPS_FEAS)
    p.add_argument("--out")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("eof", help="entanglement of formation curve or value")
    source(p)
    p.add_argument("--step", type=float, default=0.005)
    p.add_argument("--grid", help="explicit p grid start:stop:steps")
    p.add_argument("--out")
    p.set_defaults(func=cmd_eof)

    p = sub.add_parser("figure", help="CSV data for figures 1-5")
    p.add_argument("fig", type=int)
    p.add_argument("--grid", help="x-axis grid: alpha for figures 1, 4, 5; p for 2, 3")
    p.add_argument("--p-grid", help="p grid for figures 4, 5 (default 0:1:21)")
    p.add_argument("--step", type=float, default=0.005)
    p.add_argument("--out")
    p.set_defaults(func=cmd_figure)

    p = sub.add_parser("robustness", help="joint fit of initial and final states by a product preparation")
    source(p)
    alpha(p)
    p.add_argument("--tol", type=float, default=None)
    p.set_defaults(func=cmd_robustness)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, ValidationError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
