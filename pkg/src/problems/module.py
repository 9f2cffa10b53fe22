from __future__ import annotations

from typing import Any, TypeVar

import numpy as np

from .contracts import FluxKind, FluxName, InitialCondition, InitialConditionKind

# Works on floats, numpy arrays and recorded autodiff values alike: only
# arithmetic operators are used on `u`.
State = TypeVar("State")


def flux_eval(flux: FluxKind, u: State) -> State:
    """
    H(u): u^2/2 for Burgers, u^2 / (u^2 + a(1-u)^2) for Buckley-Leverett.
    """

    if flux.name == FluxName.BURGERS:
        return 0.5 * (u * u)
    if flux.name == FluxName.BUCKLEY_LEVERETT:
        a = float(flux.a)  # type: ignore[arg-type]
        u2 = u * u
        w = 1.0 - u
        return u2 / (u2 + a * (w * w))
    raise ValueError(f"Unsupported flux: {flux.name}")


def flux_deriv(flux: FluxKind, u: State) -> State:
    """
    H'(u) in closed form. Buckley-Leverett: 2a u (1-u) / (u^2 + a(1-u)^2)^2.
    """

    if flux.name == FluxName.BURGERS:
        return 1.0 * u
    if flux.name == FluxName.BUCKLEY_LEVERETT:
        a = float(flux.a)  # type: ignore[arg-type]
        w = 1.0 - u
        den = u * u + a * (w * w)
        return (2.0 * a) * (u * w) / (den * den)
    raise ValueError(f"Unsupported flux: {flux.name}")


def max_abs_wave_speed(flux: FluxKind, u: np.ndarray) -> float:
    return float(np.max(np.abs(flux_deriv(flux, np.asarray(u, dtype=np.float64)))))


def _riemann_states(kind: InitialConditionKind) -> tuple[float, float]:
    if kind == InitialConditionKind.SHOCK:
        return 1.0, 0.0
    if kind == InitialConditionKind.RAREFACTION_FAN:
        return -1.0, 1.0
    raise ValueError(f"{kind.value} is not a Riemann initial condition")


def riemann_states(ic: InitialCondition) -> tuple[float, float]:
    """(u_left, u_right) of a two-state initial condition."""

    return _riemann_states(ic.kind)


def ic_eval(ic: InitialCondition, x: Any) -> Any:
    """
    u_0(x). Scalars in, float out; arrays in, float64 array out.
    """

    xs = np.asarray(x, dtype=np.float64)
    if ic.kind == InitialConditionKind.SMOOTH:
        out = 0.5 + np.sin(xs)
    else:
        left, right = _riemann_states(ic.kind)
        out = np.where(xs <= 0.0, left, right)
    if out.ndim == 0:
        return float(out)
    return out.astype(np.float64, copy=False)
