"""
Conservative finite-volume reference solvers (Lax-Friedrichs, Lagrangian-Eulerian).

The solvers are the numerical references the network is measured against; they use
first-order interface fluxes, a CFL-limited explicit step, and zero-gradient ghost
cells at both ends of the domain.
"""

from .artifacts import GridFormatError, parse_grid_csv, read_grid_csv, serialize_grid_csv, write_grid_csv
from .contracts import DEFAULT_CFL, FvConfig, GridSolution, SchemeKind, SolverDivergedError
from .module import cell_centers, cfl_timestep, interface_fluxes, numerical_flux, solve, step

__all__ = [
    "DEFAULT_CFL",
    "FvConfig",
    "GridFormatError",
    "GridSolution",
    "SchemeKind",
    "SolverDivergedError",
    "cell_centers",
    "cfl_timestep",
    "interface_fluxes",
    "numerical_flux",
    "parse_grid_csv",
    "read_grid_csv",
    "serialize_grid_csv",
    "solve",
    "step",
    "write_grid_csv",
]
