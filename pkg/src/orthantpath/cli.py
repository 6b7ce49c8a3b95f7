"""Command-line entry point: ``orthantpath fit`` and ``orthantpath oracle``.

Exit codes: 0 success, 1 usage error, 2 data error, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import contextlib
import sys
from dataclasses import dataclass
from typing import Optional, Union

from .dataio import BreakpointTable, has_nonzero_means, load_csv, prepare, write_oracle, write_trajectory
from .enet import EnetConfig, Solver, enet_path
from .errors import OrthantError
from .lasso import adaptive_weights, lasso_path
from .linalg import Dataset
from .oracle import DEFAULT_MAX_P, LambdaGrid, all_orthant_path
from .path import RegPath

METHODS = ("lasso", "adaptive", "enet")
DEFAULT_TRAJECTORY = 50


@dataclass(frozen=True)
class FitRequest:
    method: str
    input_path: str
    response_column: Union[str, int, None] = None
    center: bool = True
    scale: float = 1.0
    gamma: float = 1.0
    alpha: float = 0.5
    tol: float = 1e-8
    solver: str = "bisection"
    trajectory_samples: int = 0
    output_path: Optional[str] = None
    trajectory_path: Optional[str] = None

    def __post_init__(self):
        if self.method not in METHODS:
            raise ValueError(f"unknown method {self.method!r}")
        if self.gamma < 0:
            raise ValueError("gamma must be nonnegative")
        if not 0 < self.alpha <= 1:
            raise ValueError("alpha must lie in (0, 1]")
        if not self.tol > 0:
            raise ValueError("tol must be positive")
        if not self.scale > 0:
            raise ValueError("scale must be positive")
        if self.trajectory_samples < 0:
            raise ValueError("trajectory sample count must be nonnegative")

    def enet_config(self) -> EnetConfig:
        return EnetConfig(alpha=self.alpha, tol=self.tol, solver=Solver(self.solver))


def load_dataset(req: FitRequest, quiet: bool = False) -> Dataset:
    X, Y = load_csv(req.input_path, req.response_column)
    if req.center and not quiet and has_nonzero_means(X, Y):
        print("note: input columns had nonzero means and were centered", file=sys.stderr)
    return prepare(X, Y, center=req.center, scale=req.scale)


def fit_path(req: FitRequest, data: Dataset) -> RegPath:
    if req.method == "lasso":
        return lasso_path(data)
    if req.method == "adaptive":
        return lasso_path(data, adaptive_weights(data, req.gamma))
    return enet_path(data, req.enet_config())


def oracle_mode(req: FitRequest, data: Dataset):
    if req.method == "lasso":
        return None
    if req.method == "adaptive":
        return adaptive_weights(data, req.gamma)
    return req.enet_config()


@contextlib.contextmanager
def _open_out(path: Optional[str]):
    if path is None or path == "-":
        yield sys.stdout
    else:
        with open(path, "w", newline="", encoding="utf-8") as fh:
            yield fh


def _trajectory_path(req: FitRequest) -> Optional[str]:
    if req.trajectory_path:
        return req.trajectory_path
    if req.output_path and req.output_path != "-":
        stem = req.output_path[:-4] if req.output_path.endswith(".csv") else req.output_path
        return stem + "_trajectory.csv"
    return None


def run_fit(req: FitRequest) -> BreakpointTable:
    """Fit, write the breakpoint table, and optionally the sampled trajectory.

    Without an explicit trajectory path the samples go next to the output
    file as ``<stem>_trajectory.csv``, or after the table on stdout.
    """
    data = load_dataset(req)
    path = fit_path(req, data)
    table = BreakpointTable.from_path(path)
    with _open_out(req.output_path) as fh:
        table.write(fh)
        if req.trajectory_samples > 0 and _trajectory_path(req) is None:
            fh.write("\n")
            write_trajectory(path.sample(max(req.trajectory_samples, 2)), fh)
    if req.trajectory_samples > 0 and _trajectory_path(req) is not None:
        with _open_out(_trajectory_path(req)) as fh:
            write_trajectory(path.sample(max(req.trajectory_samples, 2)), fh)
    return table


def run_oracle(req: FitRequest, grid: LambdaGrid, max_p: int = DEFAULT_MAX_P):
    data = load_dataset(req)
    fits = all_orthant_path(data, grid, oracle_mode(req, data), max_p)
    with _open_out(req.output_path) as fh:
        write_oracle(fits, fh, data.p)
    return fits


def _response(text: Optional[str]):
    if text is None:
        return None
    try:
        return int(text)
    except ValueError:
        return text


def _shared(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--method", choices=METHODS, default="lasso")
    sp.add_argument("--gamma", type=float, default=1.0, help="adaptive-lasso exponent (default 1)")
    sp.add_argument("--alpha", type=float, default=0.5, help="elastic-net L1 share in (0, 1] (default 0.5)")
    sp.add_argument("--tol", type=float, default=1e-8, help="elastic-net root tolerance on lambda")
    sp.add_argument("--solver", choices=[s.value for s in Solver], default="bisection")
    sp.add_argument("--input", required=True, metavar="PATH", help="CSV file with a header row")
    sp.add_argument("--response", metavar="COL", help="response column name or 0-based index (default: last)")
    sp.add_argument("--no-center", action="store_true", help="do not subtract column means")
    sp.add_argument("--scale", type=float, default=1.0, metavar="K", help="divide X and Y by K after centering")
    sp.add_argument("--output", metavar="PATH", help="output CSV (default: stdout)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="orthantpath", description="Exact lasso / elastic-net paths by orthants.")
    sub = parser.add_subparsers(dest="command", required=True)

    fit = sub.add_parser("fit", help="trace the exact path and write its breakpoints")
    _shared(fit)
    fit.add_argument(
        "--trajectory",
        type=int,
        nargs="?",
        const=DEFAULT_TRAJECTORY,
        default=0,
        metavar="N",
        help=f"also sample N points per segment (default N={DEFAULT_TRAJECTORY})",
    )
    fit.add_argument("--trajectory-output", metavar="PATH", help="where to write the trajectory CSV")

    orc = sub.add_parser("oracle", help="exhaustive all-orthant minimiser on a lambda grid")
    _shared(orc)
    g = orc.add_mutually_exclusive_group(required=True)
    g.add_argument("--grid", metavar="START:STOP:STEP")
    g.add_argument("--grid-list", metavar="V1,V2,...")
    orc.add_argument("--max-p", type=int, default=DEFAULT_MAX_P)
    return parser


def _request(args) -> FitRequest:
    return FitRequest(
        method=args.method,
        input_path=args.input,
        response_column=_response(args.response),
        center=not args.no_center,
        scale=args.scale,
        gamma=args.gamma,
        alpha=args.alpha,
        tol=args.tol,
        solver=args.solver,
        trajectory_samples=getattr(args, "trajectory", 0),
        output_path=args.output,
        trajectory_path=getattr(args, "trajectory_output", None),
    )


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 1
    try:
        req = _request(args)
        if args.command == "fit":
            run_fit(req)
        else:
            grid = LambdaGrid.parse(args.grid) if args.grid else LambdaGrid.parse(args.grid_list)
            run_oracle(req, grid, args.max_p)
    except OrthantError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
