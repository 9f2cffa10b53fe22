"""
Automatic differentiation for network residuals.

Input derivatives (u_x, u_t, u_xx) are propagated forward as fixed dual channels;
parameter gradients of any loss built from those channels come from one reverse
sweep over a `Tape` rebuilt per loss evaluation.
"""

from .dual import CHANNELS, DualValue, LayerStack, SupportsLayers, dual_affine, dual_propagate, dual_tanh
from .tape import Tape, Var, grad_wrt_params, tanh

__all__ = [
    "CHANNELS",
    "DualValue",
    "LayerStack",
    "SupportsLayers",
    "Tape",
    "Var",
    "dual_affine",
    "dual_propagate",
    "dual_tanh",
    "grad_wrt_params",
    "tanh",
]
