from __future__ import annotations

from typing import Any

import numpy as np

from autodiff import LayerStack, SupportsLayers, Tape, Var, tanh

from .contracts import HIDDEN_LAYERS, INPUT_DIM, OUTPUT_DIM, MlpParams


def init_params(width: int, seed: int) -> MlpParams:
    """
    Glorot-uniform weights, U(-r, r) with r = sqrt(6 / (fan_in + fan_out)) per
    layer, and zero biases.
    """

    if width < 1:
        raise ValueError("width must be >= 1")
    rng = np.random.default_rng(seed)
    sizes = [INPUT_DIM] + [width] * HIDDEN_LAYERS + [OUTPUT_DIM]
    weights: list[np.ndarray] = []
    biases: list[np.ndarray] = []
    for fan_in, fan_out in zip(sizes[:-1], sizes[1:]):
        bound = np.sqrt(6.0 / (fan_in + fan_out))
        weights.append(rng.uniform(-bound, bound, size=(fan_in, fan_out)))
        biases.append(np.zeros(fan_out))
    return MlpParams(weights=tuple(weights), biases=tuple(biases))


def forward(params: SupportsLayers, x: Any, t: Any) -> Any:
    """Output values only, shape (N, 1)."""

    xs = np.atleast_1d(np.asarray(x, dtype=np.float64)).ravel()
    ts = np.atleast_1d(np.asarray(t, dtype=np.float64)).ravel()
    if xs.shape != ts.shape:
        raise ValueError(f"x and t must have the same length, got {xs.size} and {ts.size}")
    layers = list(params.layers)
    a: Any = np.column_stack((xs, ts))
    for weight, bias in layers[:-1]:
        a = tanh(a @ weight + bias)
    weight, bias = layers[-1]
    return a @ weight + bias


def predict(params: SupportsLayers, x: Any, t: Any) -> np.ndarray:
    """Network values u(x, t) at paired points, as a 1-D array."""

    out = forward(params, x, t)
    if isinstance(out, Var):
        out = out.value
    return np.asarray(out, dtype=np.float64).ravel()


def watch_params(tape: Tape, params: MlpParams) -> tuple[LayerStack, list[Var]]:
    """
    Put every weight and bias on `tape`; the returned leaves follow
    `MlpParams.arrays()` order.
    """

    leaves = [tape.watch(a) for a in params.arrays()]
    return LayerStack(layers=tuple(zip(leaves[0::2], leaves[1::2]))), leaves
