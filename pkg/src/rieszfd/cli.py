"""Command-line interface.

Subcommands: ``coeffs`` (weight tables), ``deriv`` (point Riesz derivative
of the built-in benchmark function), ``solve`` (Crank-Nicolson solver),
``spectrum`` (symbol samples and eigenvalue extremes), ``convergence``
(reference-table studies), and ``surface`` (space-time error surface).

Exit codes: 0 on success, 1 on a numerical-domain error, 2 on a usage
error.  Diagnostics go to stderr; data goes to the output path or stdout.
Numeric output uses 17 significant digits and LF line endings so repeated
runs are byte-identical.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import asdict, dataclass

import numpy as np

from . import coeffs as _coeffs
from . import harness as _harness
from .errors import NumericsError
from .operators import (
    GridFunction,
    GridSpec1D,
    generating_symbol,
    point_riesz_derivative,
    spectral_bounds,
)
from .pde import AdvectionDiffusionProblem, solve as _solve

__all__ = ["RunConfig", "run", "main"]

_FAMILIES = ("kappa", "gl", "lubich", "wsgd1", "wsgd2")
_TABLE_KINDS = {"1": "operator_table1", "2": "temporal_table2", "3": "spatial_table3"}


@dataclass(frozen=True)
class RunConfig:
    """Validated invocation record; round-trips losslessly through JSON."""

    subcommand: str
    flags: dict
    seed: int

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "RunConfig":
        data = json.loads(text)
        return cls(data["subcommand"], data["flags"], data["seed"])


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def _write_text(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        try:
            with open(path, "w", newline="\n") as handle:
                handle.write(text)
        except OSError as exc:
            raise NumericsError(f"cannot write output file {path!r}: {exc}")


def _csv(header: list[str], rows: list[list[str]]) -> str:
    lines = [",".join(header)]
    lines.extend(",".join(row) for row in rows)
    return "\n".join(lines) + "\n"


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rieszfd",
        description="Riesz fractional derivative discretizations and solver",
    )
    parser.add_argument("--seed", type=int, default=0, help="seed recorded in the run config")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("coeffs", help="emit a weight coefficient table")
    p.add_argument("--family", choices=_FAMILIES, default="kappa")
    p.add_argument("--p", type=int, default=2, help="approximation order")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--count", type=int, default=256)
    p.add_argument("--method", choices=("recursion", "convolution", "fft"), default="recursion")
    p.add_argument("--samples", type=int, default=None, help="fft sample count")
    p.add_argument("--out", default=None)
    p.add_argument("--format", choices=("csv", "json"), default="csv")

    p = sub.add_parser("deriv", help="point Riesz derivative of x^2(1-x)^2")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--p", type=int, default=2)
    p.add_argument("--M", type=int, default=100)
    p.add_argument("--j", type=int, default=None, help="interior node index (default M//2)")
    p.add_argument("--out", default=None)

    p = sub.add_parser("solve", help="Crank-Nicolson advection-diffusion solve")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--M", type=int, required=True)
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--problem", choices=("example42", "zero"), default="example42")
    p.add_argument("--keep", choices=("final", "all"), default="final")
    p.add_argument("--out", default=None)

    p = sub.add_parser("spectrum", help="generating-symbol samples and eigenvalue extremes")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--p", type=int, default=2)
    p.add_argument("--M", type=int, default=64)
    p.add_argument("--symbol-samples", type=int, default=1024)
    p.add_argument("--out", default=None, help="CSV path for symbol samples")

    p = sub.add_parser("convergence", help="reproduce a reference convergence table")
    p.add_argument("--table", choices=("1", "2", "3"), required=True)
    p.add_argument("--alphas", default=None, help="comma-separated list (default: table values)")
    p.add_argument("--out", default=None)
    p.add_argument("--format", choices=("csv", "json"), default="csv")

    p = sub.add_parser("surface", help="space-time error surface of the benchmark")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--M", type=int, required=True)
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--out", default=None)
    return parser


def _cmd_coeffs(args) -> None:
    if args.family == "kappa":
        table = _coeffs.kappa_weights(
            args.p, args.alpha, args.count, method=args.method, samples=args.samples
        )
    elif args.family == "gl":
        table = _coeffs.gl_weights(args.alpha, args.count)
    elif args.family == "lubich":
        table = _coeffs.lubich_weights(args.p, args.alpha, args.count)
    else:
        table = _coeffs.wsgd_weights(int(args.family[-1]), args.alpha, args.count)
    if args.format == "json":
        payload = {
            "family": table.family.value,
            "p": table.order_p,
            "alpha": table.alpha,
            "values": [float(v) for v in table.values],
        }
        _write_text(json.dumps(payload, sort_keys=True) + "\n", args.out)
    else:
        rows = [[str(ell), _fmt(v)] for ell, v in enumerate(table.values)]
        _write_text(_csv(["ell", "value"], rows), args.out)


def _cmd_deriv(args) -> None:
    grid = GridSpec1D(0.0, 1.0, args.M)
    x = grid.nodes()
    u = GridFunction(grid, x**2 * (1.0 - x) ** 2)
    j = args.j if args.j is not None else args.M // 2
    value = point_riesz_derivative(u, args.alpha, args.p, j)
    payload = {
        "alpha": args.alpha,
        "p": args.p,
        "M": args.M,
        "j": j,
        "x": float(x[j]),
        "value": value,
    }
    if math.isclose(x[j], 0.5):
        exact = _harness.example41_exact(args.alpha)
        payload["exact"] = exact
        payload["abs_error"] = abs(value - exact)
    _write_text(json.dumps(payload, sort_keys=True) + "\n", args.out)


def _zero_problem(alpha: float) -> AdvectionDiffusionProblem:
    return AdvectionDiffusionProblem(
        alpha=alpha,
        K=2.0,
        K_alpha=alpha * alpha,
        domain=(0.0, 1.0),
        T=1.0,
        source=lambda x, t: np.zeros_like(x),
        initial=lambda x: np.zeros_like(x),
    )


def _cmd_solve(args) -> None:
    if args.problem == "example42":
        problem = _harness.example42_problem(args.alpha)
    else:
        problem = _zero_problem(args.alpha)
    sol = _solve(problem, args.M, args.N, keep=args.keep)
    x = sol.grid.nodes()
    header = ["t", "x", "u_numeric"]
    if problem.exact is not None:
        header += ["u_exact", "error"]
    rows = []
    for t, snapshot in zip(sol.times, sol.snapshots):
        exact = problem.exact(x, t) if problem.exact is not None else None
        for jj in range(len(x)):
            row = [_fmt(t), _fmt(x[jj]), _fmt(snapshot[jj])]
            if exact is not None:
                row += [_fmt(exact[jj]), _fmt(abs(snapshot[jj] - exact[jj]))]
            rows.append(row)
    _write_text(_csv(header, rows), args.out)


def _cmd_spectrum(args) -> None:
    lo, hi = spectral_bounds(args.alpha, args.p, args.M)
    if args.out is not None:
        xs = np.linspace(-math.pi, math.pi, args.symbol_samples)
        fs = generating_symbol(args.alpha, xs)
        rows = [[_fmt(x), _fmt(f)] for x, f in zip(xs, fs)]
        _write_text(_csv(["x", "f_alpha_x"], rows), args.out)
    record = {"alpha": args.alpha, "M": args.M, "min_eig": lo, "max_eig": hi}
    sys.stdout.write(json.dumps(record, sort_keys=True) + "\n")


def _cmd_convergence(args) -> None:
    alphas = None
    if args.alphas is not None:
        alphas = [float(tok) for tok in args.alphas.split(",") if tok.strip()]
    report = _harness.convergence_study(_TABLE_KINDS[args.table], alphas=alphas)
    if args.format == "json":
        payload = [asdict(row) for row in report.rows]
        _write_text(json.dumps(payload, sort_keys=True) + "\n", args.out)
        return
    header = ["alpha", "resolution", "error", "order", "ref_error", "ref_order", "pass"]
    rows = []
    for row in report.rows:
        rows.append(
            [
                _fmt(row.alpha),
                _fmt(row.resolution),
                _fmt(row.error),
                _fmt(row.observed_order) if row.observed_order is not None else "",
                _fmt(row.ref_error) if row.ref_error is not None else "",
                _fmt(row.ref_order) if row.ref_order is not None else "",
                "" if row.passed is None else str(row.passed).lower(),
            ]
        )
    _write_text(_csv(header, rows), args.out)


def _cmd_surface(args) -> None:
    surface = _harness.error_surface(args.alpha, args.M, args.N)
    grid = GridSpec1D(0.0, 1.0, args.M)
    x = grid.nodes()
    tau = 1.0 / args.N
    rows = []
    for k in range(args.N + 1):
        t = k * tau
        for jj in range(args.M + 1):
            rows.append([_fmt(t), _fmt(x[jj]), _fmt(surface[k, jj])])
    _write_text(_csv(["t", "x", "abs_error"], rows), args.out)


_DISPATCH = {
    "coeffs": _cmd_coeffs,
    "deriv": _cmd_deriv,
    "solve": _cmd_solve,
    "spectrum": _cmd_spectrum,
    "convergence": _cmd_convergence,
    "surface": _cmd_surface,
}


def config_from_args(args: argparse.Namespace) -> RunConfig:
    flags = {k: v for k, v in vars(args).items() if k not in ("subcommand", "seed")}
    return RunConfig(args.subcommand, flags, args.seed)


def run(argv: list[str]) -> int:
    """Parse argv, dispatch, and map failures to exit codes."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse handles usage errors and --help
        return int(exc.code or 0)
    try:
        _DISPATCH[args.subcommand](args)
    except NumericsError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1
    return 0


def main() -> None:
    sys.exit(run(sys.argv[1:]))
