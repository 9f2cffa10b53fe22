from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Sequence

import numpy as np

from problems import ConservationLawProblem

HIDDEN_LAYERS = 9
INPUT_DIM = 2  # (x, t)
OUTPUT_DIM = 1


class TrainingDivergedError(ArithmeticError):
    code = "PINN_TRAINING_DIVERGED"

    def __init__(self, *, iteration: int, loss: float) -> None:
        self.message = "non-finite training loss"
        self.detail: dict[str, Any] = {"iteration": iteration, "loss": repr(loss)}
        super().__init__(f"{self.message} at iteration {iteration} (loss={loss!r})")


@dataclass(frozen=True, slots=True, eq=False)
class MlpParams:
    """
    Weights and biases of the 2 -> [w] * 9 -> 1 tanh network (linear output layer).

    weights[i] has shape (fan_in, fan_out); biases[i] has shape (fan_out,).
    """

    weights: tuple[np.ndarray, ...]
    biases: tuple[np.ndarray, ...]

    def __post_init__(self) -> None:
        ws = tuple(np.asarray(w, dtype=np.float64) for w in self.weights)
        bs = tuple(np.asarray(b, dtype=np.float64) for b in self.biases)
        if len(ws) != HIDDEN_LAYERS + 1 or len(bs) != len(ws):
            raise ValueError(f"expected {HIDDEN_LAYERS + 1} weight/bias pairs, got {len(ws)}/{len(bs)}")
        fan_in = INPUT_DIM
        for i, (w, b) in enumerate(zip(ws, bs)):
            if w.ndim != 2 or w.shape[0] != fan_in:
                raise ValueError(f"layer {i}: weight shape {w.shape} does not take {fan_in} inputs")
            if b.shape != (w.shape[1],):
                raise ValueError(f"layer {i}: bias shape {b.shape} does not match weight shape {w.shape}")
            if not (np.all(np.isfinite(w)) and np.all(np.isfinite(b))):
                raise ValueError(f"layer {i}: non-finite parameter")
            fan_in = w.shape[1]
        if fan_in != OUTPUT_DIM:
            raise ValueError(f"output dimension must be {OUTPUT_DIM}, got {fan_in}")
        if len({w.shape[1] for w in ws[:-1]}) != 1:
            raise ValueError("hidden layers must share one width")
        object.__setattr__(self, "weights", ws)
        object.__setattr__(self, "biases", bs)

    @property
    def layer_sizes(self) -> tuple[int, ...]:
        return (INPUT_DIM,) + tuple(int(w.shape[1]) for w in self.weights)

    @property
    def width(self) -> int:
        return int(self.weights[0].shape[1])

    @property
    def layers(self) -> tuple[tuple[np.ndarray, np.ndarray], ...]:
        return tuple(zip(self.weights, self.biases))

    @property
    def num_parameters(self) -> int:
        return sum(w.size + b.size for w, b in self.layers)

    def arrays(self) -> list[np.ndarray]:
        """[W0, b0, W1, b1, ...], the order used by the optimizer and checkpoints."""

        out: list[np.ndarray] = []
        for w, b in self.layers:
            out.extend((w, b))
        return out

    @staticmethod
    def from_arrays(arrays: Sequence[np.ndarray]) -> "MlpParams":
        return MlpParams(weights=tuple(arrays[0::2]), biases=tuple(arrays[1::2]))

    def flatten(self) -> np.ndarray:
        return np.concatenate([a.ravel() for a in self.arrays()])

    def with_flat(self, vector: np.ndarray) -> "MlpParams":
        vector = np.asarray(vector, dtype=np.float64)
        if vector.size != self.num_parameters:
            raise ValueError(f"expected {self.num_parameters} values, got {vector.size}")
        out: list[np.ndarray] = []
        offset = 0
        for a in self.arrays():
            out.append(vector[offset : offset + a.size].reshape(a.shape).copy())
            offset += a.size
        return MlpParams.from_arrays(out)

    def same_as(self, other: "MlpParams") -> bool:
        return self.layer_sizes == other.layer_sizes and all(
            np.array_equal(a, b) for a, b in zip(self.arrays(), other.arrays())
        )


@dataclass(frozen=True, slots=True)
class TrainingConfig:
    """
    Network training configuration.

    Defaults: N_f = 10^4 interior points, N_u = 100 initial points, 40 neurons per
    hidden layer, no viscosity, Adam(1e-3, 0.9, 0.999, 1e-8) for 20000 full-batch
    iterations.
    """

    problem: ConservationLawProblem
    n_f: int = 10_000
    n_u: int = 100
    width: int = 40
    viscosity: float = 0.0
    seed: int = 0
    learning_rate: float = 1e-3
    beta1: float = 0.9
    beta2: float = 0.999
    adam_epsilon: float = 1e-8
    iterations: int = 20_000
    log_every: int = 1000

    def __post_init__(self) -> None:
        if not isinstance(self.problem, ConservationLawProblem):
            raise TypeError("problem must be a ConservationLawProblem")
        if self.n_f < 1 or self.n_u < 1:
            raise ValueError("n_f and n_u must be >= 1")
        if self.width < 1:
            raise ValueError("width must be >= 1")
        if not (math.isfinite(self.viscosity) and self.viscosity >= 0):
            raise ValueError("viscosity must be a finite value >= 0")
        if self.seed < 0:
            raise ValueError("seed must be >= 0")
        if self.iterations < 0:
            raise ValueError("iterations must be >= 0")
        if not self.learning_rate > 0:
            raise ValueError("learning_rate must be > 0")
        if not (0.0 <= self.beta1 < 1.0 and 0.0 <= self.beta2 < 1.0):
            raise ValueError("beta1 and beta2 must be within [0, 1)")
        if not self.adam_epsilon > 0:
            raise ValueError("adam_epsilon must be > 0")
        if self.log_every < 1:
            raise ValueError("log_every must be >= 1")

    def to_dict(self) -> dict[str, Any]:
        return {
            "problem": self.problem.name,
            "n_f": self.n_f,
            "n_u": self.n_u,
            "width": self.width,
            "viscosity": self.viscosity,
            "seed": self.seed,
            "learning_rate": self.learning_rate,
            "beta1": self.beta1,
            "beta2": self.beta2,
            "adam_epsilon": self.adam_epsilon,
            "iterations": self.iterations,
        }


@dataclass(frozen=True, slots=True, eq=False)
class CollocationSet:
    """
    Interior points (x_f, t_f) for the residual loss and initial points
    (x_u, 0, u_u) for the initial-value loss.
    """

    x_f: np.ndarray
    t_f: np.ndarray
    x_u: np.ndarray
    u_u: np.ndarray

    @property
    def t_u(self) -> np.ndarray:
        return np.zeros_like(self.x_u)

    @property
    def n_f(self) -> int:
        return int(self.x_f.size)

    @property
    def n_u(self) -> int:
        return int(self.x_u.size)


@dataclass(frozen=True, slots=True, eq=False)
class TrainingResult:
    params: MlpParams
    loss_history: np.ndarray  # total loss at each iteration, before that iteration's update
    final_loss_f: float
    final_loss_u: float
    iterations: int
    meta: dict[str, Any] = field(default_factory=dict)

    @property
    def final_loss(self) -> float:
        return self.final_loss_f + self.final_loss_u
