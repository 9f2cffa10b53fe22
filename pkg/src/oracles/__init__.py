"""
Exact entropy solutions for the catalog problems and the Oleinik shock-admissibility
check. Used as ground truth by the solver, network and harness tests.
"""

from .contracts import ExactSolution, HorizonExceededError, ShockCandidate
from .module import (
    SMOOTH_REFERENCE_DX,
    SMOOTH_SHOCK_TIME,
    entropy_admissible,
    exact_bl,
    exact_burgers_rarefaction,
    exact_burgers_shock,
    exact_burgers_smooth,
    exact_solution_for,
    sample_exact,
    shock_admissible,
    welge_state,
)
from .shocks import find_shock_candidates

__all__ = [
    "ExactSolution",
    "HorizonExceededError",
    "SMOOTH_REFERENCE_DX",
    "SMOOTH_SHOCK_TIME",
    "ShockCandidate",
    "entropy_admissible",
    "exact_bl",
    "exact_burgers_rarefaction",
    "exact_burgers_shock",
    "exact_burgers_smooth",
    "exact_solution_for",
    "find_shock_candidates",
    "sample_exact",
    "shock_admissible",
    "welge_state",
]
