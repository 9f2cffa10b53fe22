from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Protocol, Sequence

import numpy as np

from .tape import Tape, Var

# A channel is either a float64 array or a recorded `Var`.
Channel = Any

# Inside a network pass the four channels travel as one (4, N, width) stack in the
# order value, d/dx, d/dt, d2/dx2, so every layer records two tape nodes in total.
CHANNELS = 4


class SupportsLayers(Protocol):
    @property
    def layers(self) -> Sequence[tuple[Channel, Channel]]: ...


@dataclass(frozen=True, slots=True)
class LayerStack:
    """
    Plain (weight, bias) pairs of a tanh network with a linear output layer.

    Weights are (fan_in, fan_out); biases are (fan_out,). Depth is unrestricted.
    """

    layers: tuple[tuple[Channel, Channel], ...]


@dataclass(frozen=True, slots=True)
class DualValue:
    """
    Network output together with u_x, u_t and u_xx at the same points.
    """

    value: Channel
    d_dx: Channel
    d_dt: Channel
    d2_dx2: Channel


def _value(c: Channel) -> np.ndarray:
    return c.value if isinstance(c, Var) else np.asarray(c, dtype=np.float64)


def _shared_tape(*items: Channel) -> Tape | None:
    tapes = {id(v.tape): v.tape for v in items if isinstance(v, Var)}
    if len(tapes) > 1:
        raise ValueError("cannot combine values recorded on different tapes")
    return next(iter(tapes.values()), None)


def _input_stack(x: np.ndarray, t: np.ndarray) -> np.ndarray:
    z = np.zeros((CHANNELS, x.size, 2))
    z[0, :, 0] = x
    z[0, :, 1] = t
    z[1, :, 0] = 1.0
    z[2, :, 1] = 1.0
    return z


def dual_affine(z: Channel, weight: Channel, bias: Channel) -> Channel:
    """
    Stacked channels (4, N, k) times W (k, m); the bias only shifts the value
    channel. Recorded as one node when anything involved is on a tape.
    """

    zv, wv, bv = _value(z), _value(weight), _value(bias)
    c, n, k = zv.shape
    m = wv.shape[1]
    out = (zv.reshape(c * n, k) @ wv).reshape(c, n, m)
    out[0] += bv

    tape = _shared_tape(z, weight, bias)
    if tape is None:
        return out
    parents = []
    if isinstance(z, Var):
        parents.append((z, lambda g: (g.reshape(c * n, m) @ wv.T).reshape(c, n, k)))
    if isinstance(weight, Var):
        parents.append((weight, lambda g: zv.reshape(c * n, k).T @ g.reshape(c * n, m)))
    if isinstance(bias, Var):
        parents.append((bias, lambda g: g[0].sum(axis=0)))
    return tape.record(out, tuple(parents))


def dual_tanh(z: Channel) -> Channel:
    """
    y = tanh(v), s = 1 - y^2:
    y_x = s v_x, y_t = s v_t, y_xx = s v_xx - 2 y s v_x^2.

    On a tape this is a single node whose adjoint is written out by hand.
    """

    v = _value(z)
    v1, v2, v3 = v[1], v[2], v[3]
    y = np.tanh(v[0])
    s = 1.0 - y * y
    out = np.stack((y, s * v1, s * v2, s * v3 - 2.0 * (y * s) * (v1 * v1)))
    if not isinstance(z, Var):
        return out

    def backward(g: np.ndarray) -> np.ndarray:
        g0, g1, g2, g3 = g[0], g[1], g[2], g[3]
        dv = np.empty_like(v)
        # ds/dv = -2 y s and d(y s)/dv = s (1 - 3 y^2)
        dv[0] = s * (g0 - 2.0 * y * (g1 * v1 + g2 * v2 + g3 * v3) - 2.0 * (1.0 - 3.0 * y * y) * (g3 * v1 * v1))
        dv[1] = s * (g1 - 4.0 * y * v1 * g3)
        dv[2] = s * g2
        dv[3] = s * g3
        return dv

    return z.tape.record(out, ((z, backward),))


def dual_propagate(params: SupportsLayers, x: Any, t: Any) -> DualValue:
    """
    Forward pass carrying (u, u_x, u_t, u_xx) through every layer.

    Array inputs of length N give (N, 1) channels. Scalar inputs with plain array
    parameters give float channels.
    """

    scalar = np.ndim(x) == 0 and np.ndim(t) == 0
    xs = np.atleast_1d(np.asarray(x, dtype=np.float64)).ravel()
    ts = np.atleast_1d(np.asarray(t, dtype=np.float64)).ravel()
    if xs.shape != ts.shape:
        raise ValueError(f"x and t must have the same length, got {xs.size} and {ts.size}")

    layers = list(params.layers)
    if not layers:
        raise ValueError("network has no layers")

    z: Channel = _input_stack(xs, ts)
    for weight, bias in layers[:-1]:
        z = dual_tanh(dual_affine(z, weight, bias))
    z = dual_affine(z, *layers[-1])

    out = DualValue(value=z[0], d_dx=z[1], d_dt=z[2], d2_dx2=z[3])
    if scalar and not isinstance(out.value, Var):
        return DualValue(
            value=float(out.value[0, 0]),
            d_dx=float(out.d_dx[0, 0]),
            d_dt=float(out.d_dt[0, 0]),
            d2_dx2=float(out.d2_dx2[0, 0]),
        )
    return out
