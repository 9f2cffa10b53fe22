from __future__ import annotations

import logging
import time
from dataclasses import replace
from pathlib import Path
from typing import Any, Iterable

import numpy as np

from fv_solver import FvConfig, GridSolution, SchemeKind, SolverDivergedError, solve, write_grid_csv
from oracles import (
    HorizonExceededError,
    exact_solution_for,
    find_shock_candidates,
    sample_exact,
    shock_admissible,
)
from pinn import TrainingDivergedError, TrainingResult, predict, train, write_checkpoint, write_loss_history_csv
from problems import ConservationLawProblem, get_problem

from .artifacts import (
    read_report_json,
    write_error_series_csv,
    write_report_json,
    write_report_markdown,
    write_sweep_csv,
)
from .config import DEFAULT_PROFILE, load_experiment_config, load_experiment_source
from .contracts import (
    EntropyVerdict,
    ErrorSeries,
    ExperimentConfig,
    ExperimentReport,
    HarnessError,
    LengthMismatchError,
    SweepResult,
    SweepRow,
    TimeNotRecordedError,
)
from .metrics import comparison_abscissae, error_vs_reference, sample_for_comparison

logger = logging.getLogger(__name__)

ARTIFACT_NAMES: dict[str, str] = {
    "fv_lax_friedrichs": "fv_lax_friedrichs.csv",
    "fv_lagrangian_eulerian": "fv_lagrangian_eulerian.csv",
    "pinn": "pinn.csv",
    "exact": "exact.csv",
    "errors": "errors.csv",
    "checkpoint": "checkpoint.bin",
    "loss_history": "loss_history.csv",
    "report_json": "report.json",
    "report_md": "report.md",
}


_REPORTED_ERRORS = (
    SolverDivergedError,
    TrainingDivergedError,
    HorizonExceededError,
    LengthMismatchError,
    TimeNotRecordedError,
)


class _Timer:
    def __init__(self, timings: dict[str, float], key: str) -> None:
        self._timings = timings
        self._key = key

    def __enter__(self) -> None:
        self._start = time.perf_counter()

    def __exit__(self, *exc: Any) -> None:
        self._timings[self._key] = time.perf_counter() - self._start
        logger.info("phase %s took %.2fs", self._key, self._timings[self._key])


def _fv_run(problem: ConservationLawProblem, config: ExperimentConfig, scheme: SchemeKind) -> GridSolution:
    cfl = (
        config.fv.cfl_lax_friedrichs
        if scheme == SchemeKind.LAX_FRIEDRICHS
        else config.fv.cfl_lagrangian_eulerian
    )
    return solve(
        problem,
        FvConfig(dx=config.fv.dx, scheme=scheme, cfl_number=cfl, record_times=config.report_times),
    )


def _network_grid(result: TrainingResult, like: GridSolution) -> GridSolution:
    rows = [predict(result.params, like.x_centers, np.full_like(like.x_centers, t)) for t in like.times]
    return GridSolution(
        x_centers=like.x_centers,
        times=like.times,
        values=np.vstack(rows),
        meta={"source": "pinn"},
    )


def _entropy_verdicts(
    problem: ConservationLawProblem, result: TrainingResult, config: ExperimentConfig
) -> list[EntropyVerdict]:
    x = comparison_abscissae((problem.x_min, problem.x_max), config.n_compare)
    verdicts: list[EntropyVerdict] = []
    times = config.report_times
    for t_early, t_late in zip(times[:-1], times[1:]):
        u_early = predict(result.params, x, np.full_like(x, t_early))
        u_late = predict(result.params, x, np.full_like(x, t_late))
        for cand in find_shock_candidates(x, u_early, u_late, t_early, t_late):
            verdicts.append(
                EntropyVerdict(
                    t_early=t_early,
                    t_late=t_late,
                    u_left=cand.u_left,
                    u_right=cand.u_right,
                    speed=cand.speed,
                    speed_resolution=cand.speed_resolution,
                    admissible=shock_admissible(cand, problem.flux),
                )
            )
    return verdicts


def run_experiment_config(
    config: ExperimentConfig,
    *,
    out_dir: Path,
    progress: bool = False,
    source: str | None = None,
) -> ExperimentReport:
    """
    Both FV references, training, oracle sampling, then the error tables. Writes
    every artifact into `out_dir` (created if needed). A failing phase ends the run
    with `ok=False`; files written before it stay on disk.

    `source` is the experiment document text; reports echo it next to the
    resolved configuration.
    """

    problem = get_problem(config.problem)
    out_dir.mkdir(parents=True, exist_ok=True)
    timings: dict[str, float] = {}
    artifacts: dict[str, str] = {}
    errors: list[HarnessError] = []

    series: ErrorSeries | None = None
    cross: tuple[float, ...] = ()
    exact_errors: dict[str, list[float]] = {}
    exact_sources: list[str] = []
    entropy: list[EntropyVerdict] = []
    result: TrainingResult | None = None

    def emit(kind: str) -> Path:
        artifacts[kind] = ARTIFACT_NAMES[kind]
        return out_dir / ARTIFACT_NAMES[kind]

    logger.info("experiment %s: problem=%s profile=%s", config.name, problem.name, config.profile)
    try:
        with _Timer(timings, "fv_lax_friedrichs_s"):
            lf = _fv_run(problem, config, SchemeKind.LAX_FRIEDRICHS)
        write_grid_csv(solution=lf, out_path=emit("fv_lax_friedrichs"))

        with _Timer(timings, "fv_lagrangian_eulerian_s"):
            le = _fv_run(problem, config, SchemeKind.LAGRANGIAN_EULERIAN)
        write_grid_csv(solution=le, out_path=emit("fv_lagrangian_eulerian"))

        with _Timer(timings, "train_s"):
            result = train(config.training.to_training_config(problem), progress=progress)
        write_checkpoint(params=result.params, out_path=emit("checkpoint"))
        write_loss_history_csv(history=result.loss_history, out_path=emit("loss_history"))
        write_grid_csv(solution=_network_grid(result, le), out_path=emit("pinn"))

        with _Timer(timings, "exact_s"):
            exact = sample_exact(problem, config.report_times, config.fv.dx)
        write_grid_csv(solution=exact, out_path=emit("exact"))
        exact_sources = list(exact.meta["source"])

        with _Timer(timings, "compare_s"):
            domain = (problem.x_min, problem.x_max)
            oracle = exact_solution_for(problem)
            params = result.params
            elf: list[float] = []
            eel: list[float] = []
            cross_list: list[float] = []
            exact_errors = {"pinn": [], "lax_friedrichs": [], "lagrangian_eulerian": []}
            for t in config.report_times:
                u_nn = sample_for_comparison(
                    lambda x, tt: predict(params, x, np.full_like(x, tt)), t, config.n_compare, domain=domain
                )
                u_lf = sample_for_comparison(lf, t, config.n_compare, domain=domain)
                u_le = sample_for_comparison(le, t, config.n_compare, domain=domain)
                if oracle.valid_at(t):
                    u_ex = sample_for_comparison(oracle, t, config.n_compare, domain=domain)
                else:
                    u_ex = sample_for_comparison(exact, t, config.n_compare, domain=domain)
                elf.append(error_vs_reference(u_nn, u_lf))
                eel.append(error_vs_reference(u_nn, u_le))
                cross_list.append(error_vs_reference(u_lf, u_le))
                exact_errors["pinn"].append(error_vs_reference(u_nn, u_ex))
                exact_errors["lax_friedrichs"].append(error_vs_reference(u_lf, u_ex))
                exact_errors["lagrangian_eulerian"].append(error_vs_reference(u_le, u_ex))
            series = ErrorSeries(times=config.report_times, elf=tuple(elf), eel=tuple(eel))
            cross = tuple(cross_list)
            entropy = _entropy_verdicts(problem, result, config)
        write_error_series_csv(series=series, out_path=emit("errors"))
    except _REPORTED_ERRORS as e:
        logger.warning("experiment %s failed: %s", config.name, e)
        errors.append(HarnessError.from_exception(e))

    emit("report_json")
    emit("report_md")
    report = ExperimentReport(
        ok=not errors,
        config=config.to_dict(),
        config_source=source,
        series=series,
        cross_scheme=cross,
        exact_errors=exact_errors,
        exact_sources=exact_sources,
        entropy=entropy,
        final_loss_f=result.final_loss_f if result is not None else None,
        final_loss_u=result.final_loss_u if result is not None else None,
        timings=timings,
        artifacts=artifacts,
        errors=errors,
        meta={"num_parameters": result.params.num_parameters} if result is not None else {},
    )
    write_report_json(report=report, out_path=out_dir / ARTIFACT_NAMES["report_json"])
    write_report_markdown(report=report, out_path=out_dir / ARTIFACT_NAMES["report_md"])
    if series is not None:
        logger.info(
            "experiment %s done: mean_elf=%.4e mean_eel=%.4e", config.name, series.mean_elf, series.mean_eel
        )
    return report


def run_experiment(
    name: str,
    overrides: Iterable[str] = (),
    *,
    out_dir: Path,
    profile: str = DEFAULT_PROFILE,
    progress: bool = False,
    config_dir: Path | None = None,
) -> ExperimentReport:
    """
    Resolve `configs/experiments/<name>.yaml` (profile, then overrides) and run it
    into `<out_dir>/<name>/`. Configuration errors raise before anything is written.
    """

    config = load_experiment_config(name, profile=profile, overrides=overrides, config_dir=config_dir)
    source = load_experiment_source(name, config_dir=config_dir)
    return run_experiment_config(config, out_dir=out_dir / config.name, progress=progress, source=source)


def rerun_from_report(report_path: Path, *, out_dir: Path, progress: bool = False) -> ExperimentReport:
    payload = read_report_json(report_path)
    config = ExperimentConfig.from_dict(payload["config"])
    source = payload.get("config_source")
    return run_experiment_config(
        config,
        out_dir=out_dir / config.name,
        progress=progress,
        source=source if isinstance(source, str) else None,
    )


def run_sweep(
    name: str,
    widths: Iterable[int],
    seeds: Iterable[int],
    *,
    out_dir: Path,
    overrides: Iterable[str] = (),
    profile: str = DEFAULT_PROFILE,
    progress: bool = False,
    config_dir: Path | None = None,
) -> SweepResult:
    """
    One experiment per (width, seed) under `<out_dir>/<name>-sweep/`, plus
    sweep.csv; the best run has the lowest mean EEL.
    """

    base = load_experiment_config(name, profile=profile, overrides=overrides, config_dir=config_dir)
    source = load_experiment_source(name, config_dir=config_dir)
    sweep_dir = out_dir / f"{name}-sweep"
    seeds = tuple(seeds)
    rows: list[SweepRow] = []
    for width in widths:
        for seed in seeds:
            config = replace(base, training=replace(base.training, width=int(width), seed=int(seed)))
            logger.info("sweep %s: width=%d seed=%d", name, width, seed)
            report = run_experiment_config(
                config, out_dir=sweep_dir / f"width{width}-seed{seed}", progress=progress, source=source
            )
            if report.series is not None:
                rows.append(SweepRow(int(width), int(seed), report.series.mean_eel, report.series.mean_elf, report.ok))
            else:
                rows.append(SweepRow(int(width), int(seed), float("nan"), float("nan"), False))

    successful = [r for r in rows if r.ok]
    best = min(successful, key=lambda r: r.mean_eel) if successful else None
    result = SweepResult(name=name, rows=rows, best=best)
    write_sweep_csv(result=result, out_path=sweep_dir / "sweep.csv")
    return result
