from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any, Callable

import numpy as np


class HorizonExceededError(ValueError):
    code = "ORACLE_HORIZON_EXCEEDED"

    def __init__(self, *, t: float, horizon: float) -> None:
        self.message = f"exact solution is only valid for t < {horizon}"
        self.detail: dict[str, Any] = {"t": t, "horizon": horizon}
        super().__init__(f"{self.message} (t={t!r})")


@dataclass(frozen=True, slots=True)
class ShockCandidate:
    """
    A jump from u_left to u_right travelling at `speed`. A measured speed is only
    known to within `speed_resolution` (either side); 0 means exact.
    """

    u_left: float
    u_right: float
    speed: float
    speed_resolution: float = 0.0

    def __post_init__(self) -> None:
        if not all(math.isfinite(v) for v in (self.u_left, self.u_right, self.speed, self.speed_resolution)):
            raise ValueError("shock candidate values must be finite")
        if self.u_left == self.u_right:
            raise ValueError("u_left and u_right must differ")
        if self.speed_resolution < 0.0:
            raise ValueError("speed_resolution must be >= 0")


@dataclass(frozen=True, slots=True)
class ExactSolution:
    """
    Entropy solution u(x, t) of one catalog problem, valid for 0 <= t < horizon.
    """

    problem: str
    evaluate: Callable[[np.ndarray, float], np.ndarray]
    horizon: float = math.inf

    def valid_at(self, t: float) -> bool:
        return 0.0 <= t < self.horizon

    def __call__(self, x: Any, t: float) -> Any:
        if t >= self.horizon:
            raise HorizonExceededError(t=t, horizon=self.horizon)
        return self.evaluate(x, t)
