from __future__ import annotations

import logging
import math
import time

import numpy as np
import tqdm
from tqdm.contrib.logging import logging_redirect_tqdm

from autodiff import Tape, grad_wrt_params

from .contracts import CollocationSet, MlpParams, TrainingConfig, TrainingDivergedError, TrainingResult
from .losses import loss_f, loss_u
from .network import init_params, watch_params
from .optimizer import Adam
from .sampling import sample_collocation

logger = logging.getLogger(__name__)


def total_loss_and_grads(
    params: MlpParams, config: TrainingConfig, points: CollocationSet
) -> tuple[float, float, float, list[np.ndarray] | None]:
    """
    (L_f + L_u, L_f, L_u, gradients in `MlpParams.arrays()` order).

    Gradients are None when the loss is not finite.
    """

    tape = Tape()
    watched, leaves = watch_params(tape, params)
    lf = loss_f(watched, config.problem.flux, config.viscosity, points.x_f, points.t_f)
    lu = loss_u(watched, points.x_u, points.u_u)
    total = lf + lu
    total_v, lf_v, lu_v = total.item(), lf.item(), lu.item()
    if not math.isfinite(total_v):
        return total_v, lf_v, lu_v, None
    return total_v, lf_v, lu_v, grad_wrt_params(tape, total, leaves)


def train(
    config: TrainingConfig,
    *,
    initial_params: MlpParams | None = None,
    progress: bool = False,
) -> TrainingResult:
    """
    Full-batch Adam on L_f + L_u. Deterministic for a given config (seed included).
    """

    started = time.perf_counter()
    params = initial_params if initial_params is not None else init_params(config.width, config.seed)
    points = sample_collocation(config.problem, config.n_f, config.n_u, config.seed)
    optimizer = Adam(
        learning_rate=config.learning_rate,
        beta1=config.beta1,
        beta2=config.beta2,
        epsilon=config.adam_epsilon,
    )

    history = np.empty(config.iterations, dtype=np.float64)
    bar = tqdm.trange(
        config.iterations,
        desc=f"train {config.problem.name}",
        disable=not progress,
        leave=False,
    )
    with logging_redirect_tqdm([logger]):
        for i in bar:
            total, lf, lu, grads = total_loss_and_grads(params, config, points)
            if grads is None:
                logger.warning("training diverged problem=%s iteration=%d loss=%r", config.problem.name, i, total)
                raise TrainingDivergedError(iteration=i, loss=total)
            history[i] = total
            if i % config.log_every == 0:
                logger.info(
                    "train problem=%s iteration=%d loss=%.6e loss_f=%.6e loss_u=%.6e",
                    config.problem.name,
                    i,
                    total,
                    lf,
                    lu,
                )
                bar.set_postfix({"loss": f"{total:.3e}"})
            updated = optimizer.update(params.arrays(), grads)
            if not all(np.all(np.isfinite(a)) for a in updated):
                raise TrainingDivergedError(iteration=i, loss=total)
            params = MlpParams.from_arrays(updated)

    final_f = float(loss_f(params, config.problem.flux, config.viscosity, points.x_f, points.t_f))
    final_u = float(loss_u(params, points.x_u, points.u_u))
    if not math.isfinite(final_f + final_u):
        raise TrainingDivergedError(iteration=config.iterations, loss=final_f + final_u)

    elapsed = time.perf_counter() - started
    logger.info(
        "train done problem=%s iterations=%d loss_f=%.6e loss_u=%.6e elapsed_s=%.2f",
        config.problem.name,
        config.iterations,
        final_f,
        final_u,
        elapsed,
    )
    return TrainingResult(
        params=params,
        loss_history=history,
        final_loss_f=final_f,
        final_loss_u=final_u,
        iterations=config.iterations,
        meta={"elapsed_s": elapsed, "num_parameters": params.num_parameters},
    )
