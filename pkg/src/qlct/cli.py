"""Command-line interface.

Subcommands: ``transform`` (QLCT/QFT forward and inverse between signal
files), ``prolate`` (sinc-kernel eigensolve and basis export), ``concentrate``
(comparison reports, extremal curve samples, bound margins), and ``verify``
(the full acceptance suite).

Exit codes: 0 success; 2 usage or input parse failure; 3 invalid matrix
parameter; 4 verification failure above tolerance; 5 prolate solver
non-convergence; 6 concentration assertion failure.

Values in a JSON file passed via ``--config`` act as defaults; explicit
command-line flags override them.  All floating-point output uses 17
significant digits so files round-trip losslessly.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import concentration as conc
from . import lct, prolate, qft, verify
from .lct import ParamMatrix
from .signal import Box, Grid2D, QSignal, energy, load_signal, save_signal

_FMT = "%.17g"

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_BAD_MATRIX = 3
EXIT_VERIFY = 4
EXIT_NONCONVERGED = 5
EXIT_ASSERTION = 6


def _fail(code: int, message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return code


def _load_config(path: str | None) -> dict:
    if not path:
        return {}
    with open(path) as fh:
        cfg = json.load(fh)
    if not isinstance(cfg, dict):
        raise ValueError("config file must hold a JSON object")
    return cfg


def _merged(args: argparse.Namespace, config: dict, key: str, default):
    value = getattr(args, key, None)
    if value is not None:
        return value
    return config.get(key.replace("_", "-"), config.get(key, default))


def _parse_matrix(text: str) -> ParamMatrix:
    try:
        return ParamMatrix.parse(text)
    except ValueError as exc:
        raise _BadMatrix(str(exc)) from exc


class _BadMatrix(Exception):
    pass


# --- transform -----------------------------------------------------------------


def cmd_transform(args: argparse.Namespace) -> int:
    try:
        config = _load_config(args.config)
    except (OSError, ValueError) as exc:
        return _fail(EXIT_USAGE, f"config: {exc}")
    try:
        A1 = _parse_matrix(_merged(args, config, "matrix1", "0,1,-1,0"))
        A2 = _parse_matrix(_merged(args, config, "matrix2", "0,1,-1,0"))
    except _BadMatrix as exc:
        return _fail(EXIT_BAD_MATRIX, str(exc))
    method = _merged(args, config, "method", "fast")
    tol = float(_merged(args, config, "tol", 1e-8))

    try:
        signal, meta = load_signal(args.input)
    except (OSError, ValueError) as exc:
        return _fail(EXIT_USAGE, f"cannot read input signal: {exc}")

    try:
        if args.direction == "forward":
            out_grid_meta = {k: getattr(signal.grid, k) for k in
                             ("x_min", "x_max", "y_min", "y_max", "nx", "ny")}
            if method == "direct":
                freq = qft.induced_freq_grid(signal.grid, A1.b, A2.b)
                result = lct.qlct_forward_direct(signal, A1, A2, freq)
            else:
                result = lct.qlct_forward_fast(signal, A1, A2)
            if args.verify:
                freq = qft.induced_freq_grid(signal.grid, A1.b, A2.b)
                fast = lct.qlct_forward_fast(signal, A1, A2)
                direct = lct.qlct_forward_direct(signal, A1, A2, freq)
                scale = float(np.max(direct.abs_values()))
                deviation = (
                    float(np.max((fast - direct).abs_values())) / scale
                    if scale > 0 else 0.0
                )
                print("max relative deviation fast vs direct: " + _FMT % deviation)
                if deviation > tol:
                    return _fail(
                        EXIT_VERIFY,
                        f"cross-check deviation {deviation:.3e} above tolerance {tol:.1e}",
                    )
            metadata = {
                "matrix1": [A1.a, A1.b, A1.c, A1.d],
                "matrix2": [A2.a, A2.b, A2.c, A2.d],
                "direction": "forward",
                "method": method,
                "space_grid": out_grid_meta,
            }
        else:
            sg = meta.get("space_grid")
            if sg is not None:
                space = Grid2D(sg["x_min"], sg["x_max"], sg["y_min"], sg["y_max"],
                               sg["nx"], sg["ny"])
            elif args.space_extent is not None and args.space_n is not None:
                space = Grid2D.symmetric(args.space_extent, args.space_n)
            else:
                return _fail(
                    EXIT_USAGE,
                    "inverse needs a target grid: input sidecar 'space_grid' "
                    "or --space-extent with --space-n",
                )
            result = lct.qlct_inverse(signal, A1, A2, space, method=method)
            metadata = {
                "matrix1": [A1.a, A1.b, A1.c, A1.d],
                "matrix2": [A2.a, A2.b, A2.c, A2.d],
                "direction": "inverse",
                "method": method,
            }
    except ValueError as exc:
        return _fail(EXIT_BAD_MATRIX, str(exc))

    save_signal(args.output, result, metadata)
    print(f"wrote {args.output}")
    return EXIT_OK


# --- prolate ----------------------------------------------------------------------


def cmd_prolate(args: argparse.Namespace) -> int:
    try:
        config = _load_config(args.config)
    except (OSError, ValueError) as exc:
        return _fail(EXIT_USAGE, f"config: {exc}")
    tau = float(_merged(args, config, "tau", 2.0))
    sigma = float(_merged(args, config, "sigma", 2.0))
    n_quad = int(_merged(args, config, "nquad", 160))
    n_max = max(1, int(_merged(args, config, "nmax", 6)))
    try:
        basis = prolate.solve_pswf_1d(tau, sigma, n_quad=n_quad, n_max=n_max)
    except prolate.ConvergenceError as exc:
        return _fail(EXIT_NONCONVERGED, str(exc))
    except ValueError as exc:
        return _fail(EXIT_USAGE, str(exc))

    print(f"tau = {_FMT % tau}, sigma = {_FMT % sigma}, n_quad = {n_quad}")
    for n, mu in enumerate(basis.mu):
        print(f"mu[{n}] = " + _FMT % mu)
    print("restricted orthogonality residual: "
          + _FMT % prolate.restricted_orthogonality_residual(basis))
    if args.refine:
        print("eigenvalue drift under quadrature doubling: " + _FMT % basis.mu_drift)
    if args.out:
        prolate.save_basis(args.out, basis)
        print(f"wrote {args.out}")
    return EXIT_OK


# --- concentrate -------------------------------------------------------------------


def _curve(args: argparse.Namespace, config: dict) -> int:
    mu0 = _merged(args, config, "mu0", None)
    if mu0 is None:
        return _fail(EXIT_USAGE, "--curve requires --mu0")
    mu0 = float(mu0)
    if args.alphas:
        alphas = np.array([float(a) for a in args.alphas.split(",")])
    else:
        alphas = np.linspace(mu0, 1.0, 21)
    try:
        samples = conc.extremal_curve(mu0, alphas)
    except ValueError as exc:
        return _fail(EXIT_USAGE, str(exc))
    lines = ["alpha,beta_max"]
    lines += [f"{_FMT % a},{_FMT % b}" for a, b in samples]
    text = "\n".join(lines) + "\n"
    if args.out:
        Path(args.out).write_text(text)
        print(f"wrote {args.out}")
    else:
        print(text, end="")
    return EXIT_OK


def cmd_concentrate(args: argparse.Namespace) -> int:
    try:
        config = _load_config(args.config)
    except (OSError, ValueError) as exc:
        return _fail(EXIT_USAGE, f"config: {exc}")
    if args.curve:
        return _curve(args, config)
    if not args.preset and not args.params:
        return _fail(EXIT_USAGE, "nothing to do: pass --preset, --params or --curve")

    tau = float(_merged(args, config, "tau", 2.5))
    sigma = float(_merged(args, config, "sigma", 2.5))
    n_quad = int(_merged(args, config, "nquad", 160))
    grid_extent = float(_merged(args, config, "grid_extent", 8.0))
    grid_n = int(_merged(args, config, "grid_n", 257))
    margin_tol = float(_merged(args, config, "margin_tol", 1e-6))

    if args.preset:
        if args.preset != "fig-all":
            return _fail(EXIT_USAGE, f"unknown preset {args.preset!r}")
        cases = list(conc.PRESET_CASES)
    else:
        cases = []
        for k, spec_str in enumerate(args.params):
            parts = [float(p) for p in spec_str.split(",")]
            if len(parts) != 8:
                return _fail(EXIT_USAGE, "--params needs 8 comma-separated values")
            try:
                cases.append(
                    (f"case{k}", ParamMatrix(*parts[:4]), ParamMatrix(*parts[4:]))
                )
            except ValueError as exc:
                return _fail(EXIT_BAD_MATRIX, str(exc))

    try:
        basis = prolate.solve_pswf_1d(tau, sigma, n_quad=n_quad, n_max=1)
    except prolate.ConvergenceError as exc:
        return _fail(EXIT_NONCONVERGED, str(exc))
    grid = Grid2D.symmetric(grid_extent, grid_n)
    try:
        report = conc.comparison_report(cases, Box(tau), Box(sigma), basis, grid)
    except ValueError as exc:
        return _fail(EXIT_BAD_MATRIX, str(exc))

    print(report.format_table())
    if args.out:
        report.save_csv(args.out)
        print(f"wrote {args.out}")
    if report.min_margin() < -margin_tol:
        return _fail(
            EXIT_ASSERTION,
            f"bound margin {report.min_margin():.3e} below {-margin_tol:.1e}",
        )
    if not report.all_orderings_hold():
        return _fail(EXIT_ASSERTION, "psi0 lost an ordering comparison")
    return EXIT_OK


# --- verify ------------------------------------------------------------------------


def cmd_verify(args: argparse.Namespace) -> int:
    results = verify.run_all()
    for r in results:
        print(r.line())
    if all(r.passed for r in results):
        print("all acceptance checks passed")
        return EXIT_OK
    return _fail(EXIT_VERIFY, "acceptance checks failed")


# --- parser ------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qlct",
        description="Two-sided quaternionic linear canonical transforms, "
        "prolate spheroidal bases, and energy-concentration reports.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_tr = sub.add_parser("transform", help="QLCT/QFT forward or inverse on a signal file")
    p_tr.add_argument("--input", required=True)
    p_tr.add_argument("--output", required=True)
    p_tr.add_argument("--matrix1", help="a,b,c,d for the i-axis side (default rotation)")
    p_tr.add_argument("--matrix2", help="a,b,c,d for the j-axis side (default rotation)")
    p_tr.add_argument("--direction", choices=("forward", "inverse"), default="forward")
    p_tr.add_argument("--method", choices=("fast", "direct"), default=None)
    p_tr.add_argument("--verify", action="store_true",
                      help="cross-check fast vs direct and print the deviation")
    p_tr.add_argument("--tol", type=float, default=None,
                      help="verification tolerance (default 1e-8)")
    p_tr.add_argument("--space-extent", type=float, default=None)
    p_tr.add_argument("--space-n", type=int, default=None)
    p_tr.add_argument("--config")
    p_tr.set_defaults(func=cmd_transform)

    p_pr = sub.add_parser("prolate", help="solve the sinc-kernel eigenproblem")
    p_pr.add_argument("--tau", type=float, default=None)
    p_pr.add_argument("--sigma", type=float, default=None)
    p_pr.add_argument("--nquad", type=int, default=None)
    p_pr.add_argument("--nmax", type=int, default=None,
                      help="number of modes (0 is clamped to 1: mu0 only)")
    p_pr.add_argument("--refine", action="store_true",
                      help="report the eigenvalue drift under quadrature doubling")
    p_pr.add_argument("--out", help="basis export path (CSV + JSON sidecar)")
    p_pr.add_argument("--config")
    p_pr.set_defaults(func=cmd_prolate)

    p_co = sub.add_parser("concentrate", help="concentration reports and extremal curve")
    p_co.add_argument("--preset", help="'fig-all' runs the paper-figure parameter sets")
    p_co.add_argument("--params", action="append", default=[],
                      help="a1,b1,c1,d1,a2,b2,c2,d2 (repeatable)")
    p_co.add_argument("--curve", action="store_true", help="emit extremal-curve samples")
    p_co.add_argument("--mu0", type=float, default=None)
    p_co.add_argument("--alphas", help="comma-separated alpha values for --curve")
    p_co.add_argument("--tau", type=float, default=None)
    p_co.add_argument("--sigma", type=float, default=None)
    p_co.add_argument("--nquad", type=int, default=None)
    p_co.add_argument("--grid-extent", dest="grid_extent", type=float, default=None)
    p_co.add_argument("--grid-n", dest="grid_n", type=int, default=None)
    p_co.add_argument("--margin-tol", dest="margin_tol", type=float, default=None,
                      help="fail (exit 6) if any bound margin drops below -this")
    p_co.add_argument("--out", help="report/curve CSV path")
    p_co.add_argument("--config")
    p_co.set_defaults(func=cmd_concentrate)

    p_ve = sub.add_parser("verify", help="run the full acceptance suite")
    p_ve.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
