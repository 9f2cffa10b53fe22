from __future__ import annotations

from typing import Any, Callable

import numpy as np

from fv_solver import GridSolution

from .contracts import GridMismatchError, LengthMismatchError, TimeNotRecordedError

Predictor = Callable[[np.ndarray, float], Any]


def error_vs_reference(u_nn: Any, u_ref: Any) -> float:
    """
    Average quadratic error sum_i (u_nn_i - u_ref_i)^2 / N.
    """

    a = np.asarray(u_nn, dtype=np.float64).ravel()
    b = np.asarray(u_ref, dtype=np.float64).ravel()
    if a.size != b.size or a.size == 0:
        raise LengthMismatchError(a.size, b.size)
    return float(np.mean((a - b) ** 2))


def comparison_abscissae(domain: tuple[float, float], n_u: int) -> np.ndarray:
    if n_u < 2:
        raise ValueError("n_u must be >= 2")
    x_min, x_max = domain
    if not x_min < x_max:
        raise ValueError("domain must satisfy x_min < x_max")
    return np.linspace(x_min, x_max, n_u)


def grid_domain(solution: GridSolution) -> tuple[float, float]:
    """Outer cell faces of a uniform grid."""

    half = 0.5 * solution.dx if solution.x_centers.size > 1 else 0.0
    return float(solution.x_centers[0] - half), float(solution.x_centers[-1] + half)


def sample_for_comparison(
    solution: GridSolution | Predictor,
    t: float,
    n_u: int = 100,
    *,
    domain: tuple[float, float] | None = None,
) -> np.ndarray:
    """
    Values at `n_u` equispaced positions covering the domain, both ends included.

    Grid solutions are linearly interpolated between cell centers (constant past
    the outermost centers) and must have `t` recorded. Predictors are called as
    `predictor(x, t)` and need an explicit `domain`.
    """

    if isinstance(solution, GridSolution):
        idx = solution.time_index(t)
        if idx is None:
            raise TimeNotRecordedError(float(t), solution.times.tolist())
        x = comparison_abscissae(domain or grid_domain(solution), n_u)
        return np.interp(x, solution.x_centers, solution.values[idx])

    if domain is None:
        raise ValueError("domain is required when sampling a predictor")
    if not t >= 0:
        raise ValueError(f"t must be >= 0, got {t!r}")
    x = comparison_abscissae(domain, n_u)
    return np.asarray(solution(x, float(t)), dtype=np.float64).ravel()


def require_same_grid(left: GridSolution, right: GridSolution) -> None:
    if left.x_centers.shape != right.x_centers.shape:
        raise GridMismatchError(
            f"grids differ in size: {left.x_centers.size} vs {right.x_centers.size} cells",
            left_cells=int(left.x_centers.size),
            right_cells=int(right.x_centers.size),
        )
    if not np.allclose(left.x_centers, right.x_centers, rtol=0.0, atol=1e-9):
        raise GridMismatchError(
            "grids have the same size but different cell centers",
            left_dx=left.dx,
            right_dx=right.dx,
        )
