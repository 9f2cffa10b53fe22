from __future__ import annotations

import numpy as np

from problems import ConservationLawProblem, ic_eval

from .contracts import CollocationSet

# Separate RNG stream from parameter initialization under the same seed.
_COLLOCATION_STREAM = 1


def initial_abscissae(problem: ConservationLawProblem, n_u: int) -> np.ndarray:
    """n_u equispaced points over [x_min, x_max], both ends included."""

    if n_u < 1:
        raise ValueError("n_u must be >= 1")
    return np.linspace(problem.x_min, problem.x_max, n_u)


def sample_collocation(problem: ConservationLawProblem, n_f: int, n_u: int, seed: int) -> CollocationSet:
    """
    Interior points uniform over [x_min, x_max] x [0, t_end]; initial points
    equispaced at t = 0 with values u_0(x).
    """

    if n_f < 1:
        raise ValueError("n_f must be >= 1")
    rng = np.random.default_rng((seed, _COLLOCATION_STREAM))
    x_f = rng.uniform(problem.x_min, problem.x_max, size=n_f)
    t_f = rng.uniform(0.0, problem.t_end, size=n_f)
    x_u = initial_abscissae(problem, n_u)
    return CollocationSet(
        x_f=x_f,
        t_f=t_f,
        x_u=x_u,
        u_u=np.asarray(ic_eval(problem.ic, x_u), dtype=np.float64),
    )
