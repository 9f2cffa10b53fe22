"""
Scalar conservation-law problems: flux functions, initial data, the four catalog cases.

Everything here is immutable and free of I/O; downstream stages (FV solver, network
training, oracles) receive a `ConservationLawProblem` explicitly.
"""

from .catalog import PROBLEM_CATALOG, PROBLEM_NAMES, UnknownProblemError, get_problem
from .contracts import (
    ConservationLawProblem,
    FluxKind,
    FluxName,
    InitialCondition,
    InitialConditionKind,
)
from .module import flux_deriv, flux_eval, ic_eval, max_abs_wave_speed, riemann_states

__all__ = [
    "ConservationLawProblem",
    "FluxKind",
    "FluxName",
    "InitialCondition",
    "InitialConditionKind",
    "PROBLEM_CATALOG",
    "PROBLEM_NAMES",
    "UnknownProblemError",
    "flux_deriv",
    "flux_eval",
    "get_problem",
    "ic_eval",
    "max_abs_wave_speed",
    "riemann_states",
]
