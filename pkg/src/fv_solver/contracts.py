from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Any

import numpy as np


class SchemeKind(str, Enum):
    """
    Numerical flux of the conservative update.
    """

    LAX_FRIEDRICHS = "lax_friedrichs"
    LAGRANGIAN_EULERIAN = "lagrangian_eulerian"


# CFL numbers used for the reference solutions.
DEFAULT_CFL: dict[SchemeKind, float] = {
    SchemeKind.LAX_FRIEDRICHS: 0.4,
    SchemeKind.LAGRANGIAN_EULERIAN: 0.2,
}


class SolverDivergedError(ArithmeticError):
    code = "FV_SOLVER_DIVERGED"

    def __init__(self, message: str, *, t: float, step: int | None = None) -> None:
        self.message = message
        self.detail: dict[str, Any] = {"t": t, "step": step}
        super().__init__(f"{message} (t={t!r}, step={step!r})")


@dataclass(frozen=True, slots=True)
class FvConfig:
    """
    Finite-volume run configuration.

    max|H'| k / h < 1/2 must hold, so `cfl_number` lies strictly inside (0, 0.5).
    `record_times` must be ascending and non-negative; the upper bound t_end is
    checked against the problem by `solve`.
    """

    dx: float
    scheme: SchemeKind
    cfl_number: float | None = None  # None => DEFAULT_CFL[scheme]
    record_times: tuple[float, ...] = ()

    def __post_init__(self) -> None:
        if not isinstance(self.scheme, SchemeKind):
            raise TypeError("scheme must be a SchemeKind")
        if not (math.isfinite(self.dx) and self.dx > 0):
            raise ValueError("dx must be a finite value > 0")
        if self.cfl_number is None:
            object.__setattr__(self, "cfl_number", DEFAULT_CFL[self.scheme])
        if not (0.0 < float(self.cfl_number) < 0.5):  # type: ignore[arg-type]
            raise ValueError("cfl_number must be within (0, 0.5)")
        times = tuple(float(t) for t in self.record_times)
        if any(not math.isfinite(t) or t < 0 for t in times):
            raise ValueError("record_times must be finite and >= 0")
        if list(times) != sorted(times):
            raise ValueError("record_times must be sorted ascending")
        object.__setattr__(self, "record_times", times)

    def to_dict(self) -> dict[str, Any]:
        return {
            "dx": self.dx,
            "scheme": self.scheme.value,
            "cfl_number": self.cfl_number,
            "record_times": list(self.record_times),
        }


@dataclass(frozen=True, slots=True, eq=False)
class GridSolution:
    """
    Cell values U_j^n on a uniform grid, one row per recorded time.

    values.shape == (len(times), len(x_centers)).
    """

    x_centers: np.ndarray
    times: np.ndarray
    values: np.ndarray
    meta: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        x = np.asarray(self.x_centers, dtype=np.float64)
        t = np.asarray(self.times, dtype=np.float64)
        v = np.asarray(self.values, dtype=np.float64)
        if x.ndim != 1 or x.size == 0:
            raise ValueError("x_centers must be a nonempty 1-D array")
        if t.ndim != 1:
            raise ValueError("times must be a 1-D array")
        if v.shape != (t.size, x.size):
            raise ValueError(f"values shape {v.shape} does not match (times, cells)=({t.size}, {x.size})")
        if x.size > 1:
            spacing = np.diff(x)
            if np.any(spacing <= 0) or not np.allclose(spacing, spacing[0], rtol=1e-9, atol=1e-12):
                raise ValueError("x_centers must be uniformly spaced and increasing")
        object.__setattr__(self, "x_centers", x)
        object.__setattr__(self, "times", t)
        object.__setattr__(self, "values", v)

    @property
    def dx(self) -> float:
        if self.x_centers.size < 2:
            return float("nan")
        return float((self.x_centers[-1] - self.x_centers[0]) / (self.x_centers.size - 1))

    def time_index(self, t: float, *, tol: float = 1e-9) -> int | None:
        hits = np.flatnonzero(np.abs(self.times - float(t)) <= tol * max(1.0, abs(float(t))))
        return int(hits[0]) if hits.size else None

    def at_time(self, t: float) -> np.ndarray:
        idx = self.time_index(t)
        if idx is None:
            raise KeyError(f"time {t!r} not recorded; recorded: {self.times.tolist()}")
        return self.values[idx]

    def total_mass(self) -> np.ndarray:
        """Sum_j U_j^n * dx for every recorded time."""

        return self.values.sum(axis=1) * self.dx

    def same_as(self, other: "GridSolution") -> bool:
        return (
            np.array_equal(self.x_centers, other.x_centers)
            and np.array_equal(self.times, other.times)
            and np.array_equal(self.values, other.values)
        )
