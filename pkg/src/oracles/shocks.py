from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from .contracts import ShockCandidate

logger = logging.getLogger(__name__)


@dataclass(frozen=True, slots=True)
class _Jump:
    position: float
    u_left: float
    u_right: float

    @property
    def sign(self) -> float:
        return float(np.sign(self.u_right - self.u_left))


def _jumps(x: np.ndarray, u: np.ndarray, *, slope_threshold: float, plateau_width: int) -> list[_Jump]:
    diffs = np.diff(u)
    steep = np.flatnonzero(np.abs(diffs) > slope_threshold)
    if steep.size == 0:
        return []

    # runs of consecutive steep intervals form one jump
    breaks = np.flatnonzero(np.diff(steep) > 1) + 1
    out: list[_Jump] = []
    for run in np.split(steep, breaks):
        first, last = int(run[0]), int(run[-1])
        if np.unique(np.sign(diffs[run])).size != 1:
            continue
        steepest = int(run[np.argmax(np.abs(diffs[run]))])
        left = u[max(0, first + 1 - plateau_width) : first + 1]
        right = u[last + 1 : last + 1 + plateau_width]
        out.append(
            _Jump(
                position=float(0.5 * (x[steepest] + x[steepest + 1])),
                u_left=float(np.median(left)),
                u_right=float(np.median(right)),
            )
        )
    return out


def find_shock_candidates(
    x: np.ndarray,
    u_early: np.ndarray,
    u_late: np.ndarray,
    t_early: float,
    t_late: float,
    *,
    slope_threshold: float = 0.5,
    plateau_width: int = 3,
) -> list[ShockCandidate]:
    """
    Jumps steeper than `slope_threshold` per sample spacing in the late profile,
    with flanking plateau states and a speed estimated from the displacement of
    the matching jump (same direction, nearest position) in the early profile.
    Each jump position is only known to one sample spacing, so every candidate
    carries `speed_resolution = max spacing / (t_late - t_early)`.

    Late jumps with no counterpart at the early time are dropped.
    """

    x = np.asarray(x, dtype=np.float64)
    u_early = np.asarray(u_early, dtype=np.float64)
    u_late = np.asarray(u_late, dtype=np.float64)
    if x.ndim != 1 or u_early.shape != x.shape or u_late.shape != x.shape:
        raise ValueError("x, u_early and u_late must be 1-D arrays of one length")
    if x.size < 2 or np.any(np.diff(x) <= 0):
        raise ValueError("x must be strictly increasing with at least two points")
    if not t_late > t_early:
        raise ValueError("t_late must be greater than t_early")
    if plateau_width < 1:
        raise ValueError("plateau_width must be >= 1")

    early = _jumps(x, u_early, slope_threshold=slope_threshold, plateau_width=plateau_width)
    late = _jumps(x, u_late, slope_threshold=slope_threshold, plateau_width=plateau_width)

    resolution = float(np.max(np.diff(x))) / (t_late - t_early)
    candidates: list[ShockCandidate] = []
    for jump in late:
        matches = [j for j in early if j.sign == jump.sign]
        if not matches:
            logger.debug("jump at x=%.4g has no counterpart at t=%g", jump.position, t_early)
            continue
        origin = min(matches, key=lambda j: abs(j.position - jump.position))
        if jump.u_left == jump.u_right:
            continue
        candidates.append(
            ShockCandidate(
                u_left=jump.u_left,
                u_right=jump.u_right,
                speed=(jump.position - origin.position) / (t_late - t_early),
                speed_resolution=resolution,
            )
        )
    return candidates
