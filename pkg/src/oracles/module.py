from __future__ import annotations

import logging
import math
from dataclasses import replace
from typing import Any, Callable

import numpy as np

from fv_solver import FvConfig, GridSolution, SchemeKind, cell_centers, solve
from problems import (
    ConservationLawProblem,
    FluxKind,
    FluxName,
    InitialCondition,
    InitialConditionKind,
    flux_deriv,
    flux_eval,
    ic_eval,
)

from .contracts import ExactSolution, HorizonExceededError, ShockCandidate

logger = logging.getLogger(__name__)

SMOOTH_SHOCK_TIME = 1.0  # -1 / min(d/dx (0.5 + sin x))
SMOOTH_REFERENCE_DX = 0.0025
_SOLVE_TOL = 1e-13
_MAX_ITER = 200
_ENTROPY_GRID = 1000
_ENTROPY_TOL = 1e-10

_SHOCK_IC = InitialCondition(InitialConditionKind.SHOCK)
_FAN_IC = InitialCondition(InitialConditionKind.RAREFACTION_FAN)


def _shaped(x: Any, out: np.ndarray) -> Any:
    return float(out) if np.ndim(x) == 0 else out


def _check_time(t: float) -> None:
    if not (math.isfinite(t) and t >= 0):
        raise ValueError(f"t must be finite and >= 0, got {t!r}")


def _bisect(fn: Callable[[np.ndarray], np.ndarray], lo: np.ndarray, hi: np.ndarray) -> np.ndarray:
    """
    Root of a function that is >= 0 at `lo` and < 0 at `hi`, elementwise.
    """

    lo = np.array(lo, dtype=np.float64)
    hi = np.array(hi, dtype=np.float64)
    for _ in range(_MAX_ITER):
        mid = 0.5 * (lo + hi)
        positive = fn(mid) >= 0.0
        lo = np.where(positive, mid, lo)
        hi = np.where(positive, hi, mid)
        if np.all(hi - lo <= 1e-15):
            break
    return 0.5 * (lo + hi)


def exact_burgers_shock(x: Any, t: float) -> Any:
    """u = 1 left of x = t/2 (the shock itself included), 0 right of it."""

    _check_time(t)
    xs = np.asarray(x, dtype=np.float64)
    return _shaped(x, np.where(xs <= 0.5 * t, 1.0, 0.0))


def exact_burgers_rarefaction(x: Any, t: float) -> Any:
    """u = -1 for x <= -t, x/t inside the fan, 1 for x >= t."""

    _check_time(t)
    xs = np.asarray(x, dtype=np.float64)
    if t == 0.0:
        return _shaped(x, np.asarray(ic_eval(_FAN_IC, xs)))
    return _shaped(x, np.clip(xs / t, -1.0, 1.0))


def exact_burgers_smooth(x: Any, t: float) -> Any:
    """
    Solve u = 0.5 + sin(x - u t) pointwise by Newton steps kept inside a
    bisection bracket [-0.5, 1.5]. Valid before the first shock (t < 1).
    """

    _check_time(t)
    if t >= SMOOTH_SHOCK_TIME:
        raise HorizonExceededError(t=t, horizon=SMOOTH_SHOCK_TIME)
    xs = np.asarray(x, dtype=np.float64)
    if t == 0.0:
        return _shaped(x, 0.5 + np.sin(xs))

    lo = np.full(xs.shape, -0.5)
    hi = np.full(xs.shape, 1.5)
    u = np.clip(0.5 + np.sin(xs), lo, hi)
    for _ in range(_MAX_ITER):
        g = u - 0.5 - np.sin(xs - u * t)
        if np.all(np.abs(g) <= _SOLVE_TOL):
            break
        hi = np.where(g > 0, u, hi)
        lo = np.where(g < 0, u, lo)
        newton = u - g / (1.0 + t * np.cos(xs - u * t))
        inside = (newton >= lo) & (newton <= hi)
        u = np.where(g == 0, u, np.where(inside, newton, 0.5 * (lo + hi)))
    return _shaped(x, u)


def welge_state(a: float) -> tuple[float, float]:
    """
    Post-shock state u* and shock speed sigma of the Buckley-Leverett Riemann
    problem 1 -> 0: the chord from (0, 0) is tangent to H at u*, H'(u*) = H(u*)/u*.
    """

    flux = FluxKind.buckley_leverett(a)

    def tangency(u: np.ndarray) -> np.ndarray:
        return flux_deriv(flux, u) * u - flux_eval(flux, u)

    lo = 1e-3
    if tangency(np.asarray(lo)) <= 0:
        raise ValueError(f"no tangency bracket for a={a!r}")
    u_star = float(_bisect(tangency, np.asarray(lo), np.asarray(1.0)))
    return u_star, float(flux_eval(flux, u_star) / u_star)


def exact_bl(x: Any, t: float, a: float = 1.0) -> Any:
    """
    Buckley-Leverett 1 -> 0: rarefaction u = (H')^{-1}(x/t) on [u*, 1] for
    0 < x/t <= sigma, then a shock down to 0.
    """

    _check_time(t)
    if not a > 0:
        raise ValueError("a must be > 0")
    xs = np.asarray(x, dtype=np.float64)
    if t == 0.0:
        return _shaped(x, np.asarray(ic_eval(_SHOCK_IC, xs)))

    flux = FluxKind.buckley_leverett(a)
    u_star, sigma = welge_state(a)
    xi = np.atleast_1d(xs / t)
    out = np.where(xi > sigma, 0.0, 1.0)
    fan = (xi > 0.0) & (xi <= sigma)
    if np.any(fan):
        target = xi[fan]
        out[fan] = _bisect(
            lambda u: flux_deriv(flux, u) - target,
            np.full(target.shape, u_star),
            np.ones(target.shape),
        )
    return _shaped(x, out.reshape(xs.shape))


def entropy_admissible(candidate: ShockCandidate, flux: FluxKind) -> bool:
    """
    Oleinik chord test for every v strictly between the two states:
    (H(v) - H(u_l)) / (v - u_l) >= s >= (H(v) - H(u_r)) / (v - u_r).
    """

    ul, ur, s = candidate.u_left, candidate.u_right, candidate.speed
    v = np.linspace(min(ul, ur), max(ul, ur), _ENTROPY_GRID + 2)[1:-1]
    chord_left = (flux_eval(flux, v) - flux_eval(flux, ul)) / (v - ul)
    chord_right = (flux_eval(flux, v) - flux_eval(flux, ur)) / (v - ur)
    return bool(np.all(chord_left >= s - _ENTROPY_TOL) and np.all(chord_right <= s + _ENTROPY_TOL))


def shock_admissible(candidate: ShockCandidate, flux: FluxKind) -> bool:
    """
    `entropy_admissible` for a measured candidate: passes when some speed within
    `speed ± speed_resolution` passes the exact test.

    The speeds that pass for fixed states form an interval around the
    Rankine-Hugoniot speed, so trying the measured speed and the point of the
    resolution window nearest to that speed is enough.
    """

    if entropy_admissible(candidate, flux):
        return True
    r = candidate.speed_resolution
    if r == 0.0:
        return False
    ul, ur = candidate.u_left, candidate.u_right
    rh = float((flux_eval(flux, ul) - flux_eval(flux, ur)) / (ul - ur))
    nearest = min(max(rh, candidate.speed - r), candidate.speed + r)
    return entropy_admissible(replace(candidate, speed=nearest), flux)


def exact_solution_for(problem: ConservationLawProblem) -> ExactSolution:
    kind = problem.ic.kind
    if problem.flux.name == FluxName.BURGERS:
        if kind == InitialConditionKind.SHOCK:
            return ExactSolution(problem=problem.name, evaluate=exact_burgers_shock)
        if kind == InitialConditionKind.RAREFACTION_FAN:
            return ExactSolution(problem=problem.name, evaluate=exact_burgers_rarefaction)
        return ExactSolution(problem=problem.name, evaluate=exact_burgers_smooth, horizon=SMOOTH_SHOCK_TIME)
    if problem.flux.name == FluxName.BUCKLEY_LEVERETT and kind == InitialConditionKind.SHOCK:
        a = float(problem.flux.a)  # type: ignore[arg-type]
        return ExactSolution(problem=problem.name, evaluate=lambda x, t: exact_bl(x, t, a))
    raise ValueError(f"no exact solution for problem {problem.name!r}")


def sample_exact(
    problem: ConservationLawProblem,
    times: tuple[float, ...],
    dx: float,
    *,
    reference_dx: float = SMOOTH_REFERENCE_DX,
) -> GridSolution:
    """
    Exact solution at the FV cell centers for `dx`. Times past the oracle's
    horizon come from a fine-grid Lagrangian-Eulerian run interpolated onto the
    same centers; meta["source"] records which one each row used.
    """

    oracle = exact_solution_for(problem)
    x, h = cell_centers(problem, dx)
    late = tuple(t for t in times if not oracle.valid_at(t))
    reference: GridSolution | None = None
    if late:
        logger.info("oracle %s: fine-grid reference for t=%s", problem.name, list(late))
        reference = solve(
            problem,
            FvConfig(dx=reference_dx, scheme=SchemeKind.LAGRANGIAN_EULERIAN, record_times=late),
        )

    rows: list[np.ndarray] = []
    sources: list[str] = []
    for t in times:
        if oracle.valid_at(t):
            rows.append(np.asarray(oracle(x, t), dtype=np.float64))
            sources.append("exact")
        else:
            assert reference is not None
            rows.append(np.interp(x, reference.x_centers, reference.at_time(t)))
            sources.append(f"fv_lagrangian_eulerian_dx={reference_dx:g}")
    return GridSolution(
        x_centers=x,
        times=np.asarray(times, dtype=np.float64),
        values=np.vstack(rows) if rows else np.zeros((0, x.size)),
        meta={"problem": problem.name, "dx": h, "source": sources},
    )
