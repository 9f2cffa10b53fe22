from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path
from typing import Callable, TextIO

import numpy as np

from fv_solver import (
    FvConfig,
    GridFormatError,
    GridSolution,
    SchemeKind,
    SolverDivergedError,
    read_grid_csv,
    solve,
    write_grid_csv,
)
from oracles import HorizonExceededError, sample_exact
from pinn import (
    CheckpointFormatError,
    MlpParams,
    TrainingConfig,
    TrainingDivergedError,
    predict,
    read_checkpoint,
    train,
    write_checkpoint,
    write_loss_history_csv,
)
from problems import PROBLEM_NAMES, UnknownProblemError, get_problem

from .config import DEFAULT_PROFILE, PROFILES
from .contracts import ConfigError, ExperimentReport, GridMismatchError, LengthMismatchError, TimeNotRecordedError
from .metrics import error_vs_reference, grid_domain, require_same_grid, sample_for_comparison
from .module import rerun_from_report, run_experiment, run_sweep

logger = logging.getLogger(__name__)

_REPORTED_ERRORS = (
    UnknownProblemError,
    ConfigError,
    GridMismatchError,
    LengthMismatchError,
    TimeNotRecordedError,
    SolverDivergedError,
    TrainingDivergedError,
    HorizonExceededError,
    GridFormatError,
    CheckpointFormatError,
)


def _times(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(v) for v in text.split(",") if v.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated times, got {text!r}") from None


def build_arg_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="hyperlab",
        description="Finite-volume references, physics-informed network training and experiments for scalar conservation laws.",
    )
    p.add_argument(
        "--log-level",
        default="WARNING",
        choices=["DEBUG", "INFO", "WARNING", "ERROR"],
        help="Root log level (default: WARNING).",
    )
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("solve-fv", help="Run one finite-volume scheme and write a t,x,u CSV.")
    s.add_argument("--problem", required=True, help=f"Catalog problem: {', '.join(PROBLEM_NAMES)}.")
    s.add_argument("--scheme", choices=[k.value for k in SchemeKind], default=SchemeKind.LAGRANGIAN_EULERIAN.value)
    s.add_argument("--dx", type=float, default=0.01)
    s.add_argument("--cfl", type=float, default=None, help="CFL number; default depends on the scheme.")
    s.add_argument("--times", type=_times, default=None, help="Record times, e.g. 2,4,6,8 (default: t_end).")
    s.add_argument("--out", required=True, type=Path, help="Output solution CSV.")

    t = sub.add_parser("train", help="Train the network and write a checkpoint plus loss history.")
    t.add_argument("--problem", required=True, help=f"Catalog problem: {', '.join(PROBLEM_NAMES)}.")
    t.add_argument("--width", type=int, default=40)
    t.add_argument("--n-f", type=int, default=10_000)
    t.add_argument("--n-u", type=int, default=100)
    t.add_argument("--viscosity", type=float, default=0.0)
    t.add_argument("--seed", type=int, default=0)
    t.add_argument("--iterations", type=int, default=20_000)
    t.add_argument("--learning-rate", type=float, default=1e-3)
    t.add_argument("--checkpoint", required=True, type=Path, help="Output checkpoint file.")
    t.add_argument(
        "--loss-history",
        type=Path,
        default=None,
        help="Loss history CSV (default: <checkpoint stem>_loss_history.csv next to the checkpoint).",
    )
    t.add_argument("--progress", action="store_true", help="Show a progress bar.")

    o = sub.add_parser("oracle", help="Sample the exact solution on the FV cell centers.")
    o.add_argument("--problem", required=True, help=f"Catalog problem: {', '.join(PROBLEM_NAMES)}.")
    o.add_argument("--times", required=True, type=_times)
    o.add_argument("--dx", type=float, default=0.01)
    o.add_argument("--out", required=True, type=Path, help="Output solution CSV.")

    c = sub.add_parser("compare", help="Average quadratic error between two solutions at given times.")
    c.add_argument("left", type=Path, help="Solution CSV or checkpoint (.bin).")
    c.add_argument("right", type=Path, help="Solution CSV or checkpoint (.bin).")
    c.add_argument("--times", required=True, type=_times)
    c.add_argument("--n-u", type=int, default=100, help="Number of equispaced comparison points.")
    c.add_argument("--problem", default=None, help="Catalog problem; required when both inputs are checkpoints.")

    e = sub.add_parser("experiment", help="Run one catalog experiment end to end.")
    e.add_argument("name", nargs="?", default=None, help=f"Experiment name: {', '.join(PROBLEM_NAMES)}.")
    e.add_argument("--profile", choices=list(PROFILES), default=DEFAULT_PROFILE)
    e.add_argument(
        "--override",
        action="append",
        default=[],
        metavar="KEY=VALUE",
        help="Dotted override, e.g. training.width=60 (repeatable).",
    )
    e.add_argument("--from-report", type=Path, default=None, help="Re-run from the configuration echoed in report.json.")
    e.add_argument("--out-dir", type=Path, default=Path("runs"))
    e.add_argument("--config-dir", type=Path, default=None)
    e.add_argument("--progress", action="store_true")

    w = sub.add_parser("sweep", help="Run one experiment across network widths and seeds.")
    w.add_argument("name", help=f"Experiment name: {', '.join(PROBLEM_NAMES)}.")
    w.add_argument("--widths", type=int, nargs="+", default=[40, 60])
    w.add_argument("--seeds", type=int, nargs="+", default=[0, 1, 2])
    w.add_argument("--profile", choices=list(PROFILES), default=DEFAULT_PROFILE)
    w.add_argument("--override", action="append", default=[], metavar="KEY=VALUE")
    w.add_argument("--out-dir", type=Path, default=Path("runs"))
    w.add_argument("--config-dir", type=Path, default=None)
    w.add_argument("--progress", action="store_true")
    return p


def _cmd_solve_fv(args: argparse.Namespace) -> int:
    problem = get_problem(args.problem)
    config = FvConfig(dx=args.dx, scheme=SchemeKind(args.scheme), cfl_number=args.cfl, record_times=args.times or ())
    write_grid_csv(solution=solve(problem, config), out_path=args.out)
    return 0


def _cmd_train(args: argparse.Namespace) -> int:
    config = TrainingConfig(
        problem=get_problem(args.problem),
        n_f=args.n_f,
        n_u=args.n_u,
        width=args.width,
        viscosity=args.viscosity,
        seed=args.seed,
        iterations=args.iterations,
        learning_rate=args.learning_rate,
    )
    result = train(config, progress=args.progress)
    write_checkpoint(params=result.params, out_path=args.checkpoint)
    history_path = args.loss_history or args.checkpoint.with_name(f"{args.checkpoint.stem}_loss_history.csv")
    write_loss_history_csv(history=result.loss_history, out_path=history_path)
    return 0


def _cmd_oracle(args: argparse.Namespace) -> int:
    problem = get_problem(args.problem)
    write_grid_csv(solution=sample_exact(problem, args.times, args.dx), out_path=args.out)
    return 0


def _load_side(path: Path) -> GridSolution | MlpParams:
    if path.suffix == ".bin":
        return read_checkpoint(path)
    return read_grid_csv(path)


def _cmd_compare(args: argparse.Namespace, out: TextIO) -> int:
    left, right = _load_side(args.left), _load_side(args.right)
    grids = [s for s in (left, right) if isinstance(s, GridSolution)]
    if len(grids) == 2:
        require_same_grid(grids[0], grids[1])
    if grids:
        domain = grid_domain(grids[0])
    elif args.problem is not None:
        problem = get_problem(args.problem)
        domain = (problem.x_min, problem.x_max)
    else:
        raise ConfigError("--problem is required to compare two checkpoints")

    def sampler(side: GridSolution | MlpParams) -> Callable[[float], np.ndarray]:
        if isinstance(side, GridSolution):
            return lambda t: sample_for_comparison(side, t, args.n_u, domain=domain)
        return lambda t: sample_for_comparison(
            lambda x, tt: predict(side, x, np.full_like(x, tt)), t, args.n_u, domain=domain
        )

    sample_left, sample_right = sampler(left), sampler(right)
    out.write("t,error\n")
    for t in args.times:
        out.write(f"{t:.17g},{error_vs_reference(sample_left(t), sample_right(t)):.17g}\n")
    return 0


def _print_report_errors(report: ExperimentReport) -> int:
    for e in report.errors:
        print(f"error[{e.code}]: {e.message}", file=sys.stderr)
    return 0 if report.ok else 2


def _cmd_experiment(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    if args.from_report is not None:
        if args.name is not None or args.override:
            parser.error("--from-report cannot be combined with a name or --override")
        report = rerun_from_report(args.from_report, out_dir=args.out_dir, progress=args.progress)
    else:
        if args.name is None:
            parser.error("experiment needs a name or --from-report")
        report = run_experiment(
            args.name,
            args.override,
            out_dir=args.out_dir,
            profile=args.profile,
            progress=args.progress,
            config_dir=args.config_dir,
        )
    return _print_report_errors(report)


def _cmd_sweep(args: argparse.Namespace, out: TextIO) -> int:
    result = run_sweep(
        args.name,
        args.widths,
        args.seeds,
        out_dir=args.out_dir,
        overrides=args.override,
        profile=args.profile,
        progress=args.progress,
        config_dir=args.config_dir,
    )
    if result.best is not None:
        out.write(f"best width={result.best.width} seed={result.best.seed} mean_eel={result.best.mean_eel:.6e}\n")
    return 0 if result.ok else 2


def main(argv: list[str] | None = None) -> int:
    parser = build_arg_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=getattr(logging, args.log_level),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )

    try:
        if args.command == "solve-fv":
            return _cmd_solve_fv(args)
        if args.command == "train":
            return _cmd_train(args)
        if args.command == "oracle":
            return _cmd_oracle(args)
        if args.command == "compare":
            return _cmd_compare(args, sys.stdout)
        if args.command == "experiment":
            return _cmd_experiment(args, parser)
        if args.command == "sweep":
            return _cmd_sweep(args, sys.stdout)
    except _REPORTED_ERRORS as e:
        print(f"error[{e.code}]: {getattr(e, 'message', None) or e}", file=sys.stderr)
        return 2
    except (OSError, ValueError) as e:
        print(f"error[{type(e).__name__}]: {e}", file=sys.stderr)
        return 2
    parser.error(f"unknown command {args.command!r}")
    return 2


if __name__ == "__main__":
    raise SystemExit(main())
