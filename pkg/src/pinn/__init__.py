"""
Physics-informed network: 9 hidden tanh layers, residual and initial-value losses,
collocation sampling, and the full-batch training loop minimizing L_f + L_u.

No boundary-condition loss is used; the network is fitted to the PDE residual and
the initial data only.
"""

from .artifacts import (
    CheckpointFormatError,
    parse_checkpoint,
    read_checkpoint,
    serialize_checkpoint,
    write_checkpoint,
    write_loss_history_csv,
)
from .contracts import (
    HIDDEN_LAYERS,
    CollocationSet,
    MlpParams,
    TrainingConfig,
    TrainingDivergedError,
    TrainingResult,
)
from .losses import loss_f, loss_u, residual_f, residual_from_dual
from .module import total_loss_and_grads, train
from .network import forward, init_params, predict, watch_params
from .optimizer import Adam
from .sampling import initial_abscissae, sample_collocation

__all__ = [
    "Adam",
    "CheckpointFormatError",
    "CollocationSet",
    "HIDDEN_LAYERS",
    "MlpParams",
    "TrainingConfig",
    "TrainingDivergedError",
    "TrainingResult",
    "forward",
    "init_params",
    "initial_abscissae",
    "loss_f",
    "loss_u",
    "parse_checkpoint",
    "predict",
    "read_checkpoint",
    "residual_f",
    "residual_from_dual",
    "sample_collocation",
    "serialize_checkpoint",
    "total_loss_and_grads",
    "train",
    "watch_params",
    "write_checkpoint",
    "write_loss_history_csv",
]
