from __future__ import annotations

from typing import Any

import numpy as np

from autodiff import DualValue, SupportsLayers, Var, dual_propagate
from problems import FluxKind, flux_deriv

from .network import forward


def _scalar(v: Any) -> Any:
    # Recorded losses stay on the tape; plain ones come back as floats.
    return v if isinstance(v, Var) else float(v)


def residual_from_dual(u: DualValue, flux: FluxKind, viscosity: float) -> Any:
    """
    f = u_t + H'(u) u_x - eps u_xx, i.e. u_t + H(u)_x - eps u_xx with the flux
    derivative expanded by the chain rule.
    """

    f = u.d_dt + flux_deriv(flux, u.value) * u.d_dx
    if viscosity != 0.0:
        f = f - viscosity * u.d2_dx2
    return f


def residual_f(params: SupportsLayers, flux: FluxKind, viscosity: float, x: Any, t: Any) -> Any:
    return residual_from_dual(dual_propagate(params, x, t), flux, viscosity)


def loss_f(params: SupportsLayers, flux: FluxKind, viscosity: float, x_f: np.ndarray, t_f: np.ndarray) -> Any:
    """L_f = mean |f(x_f, t_f)|^2."""

    if np.size(x_f) == 0:
        raise ValueError("loss_f needs at least one collocation point")
    f = residual_f(params, flux, viscosity, x_f, t_f)
    return _scalar((f * f).mean())


def loss_u(params: SupportsLayers, x_u: np.ndarray, u_u: np.ndarray) -> Any:
    """L_u = mean |u(x_u, 0) - u_u|^2."""

    x_u = np.asarray(x_u, dtype=np.float64).ravel()
    u_u = np.asarray(u_u, dtype=np.float64).ravel()
    if x_u.size == 0:
        raise ValueError("loss_u needs at least one initial point")
    if x_u.shape != u_u.shape:
        raise ValueError("x_u and u_u must have the same length")
    diff = forward(params, x_u, np.zeros_like(x_u)) - u_u[:, None]
    return _scalar((diff * diff).mean())
