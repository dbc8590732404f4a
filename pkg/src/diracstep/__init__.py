"""Fermion scattering off relativistic potential steps, with causal
trajectories through the step computed by two independent routes.

Layers:
- spinors:    plane-wave Dirac spinors and their bilinears.
- scattering: matching at z = 0, amplitudes, currents, R/T, sweeps.
- bohm:       velocity field, implicit orbits, RK4 integration, fans.
- kernels:    hot loops; compiled extension with pure-Python fallback.
- output/cli: deterministic CSV/JSON/SVG emission and the command line.
"""

from .bohm import (
    OrbitConstants,
    PlaneWaveSuperposition,
    Trajectory,
    VelocityField,
    integrate_rk4,
    orbit_constants,
    solve_orbit_implicit,
    superposition_current,
    superposition_density,
    trajectory_fan,
    trajectory_implicit,
    trajectory_rk4,
    velocity,
    velocity_at_step,
    velocity_numeric,
)
from .errors import (
    BoundaryError,
    ConvergenceError,
    DomainError,
    NotApplicableError,
    StaticFieldError,
)
from .kernels import BACKEND
from .scattering import (
    ScatterSolution,
    StepProblem,
    SweepRow,
    assemble_region_wave,
    asymptotic_gamma,
    classify_regime,
    coefficients,
    continuity_residual,
    currents,
    gamma_factor,
    match_amplitudes,
    nonrel_coefficients,
    solve,
    sweep,
    wavenumbers,
)
from .spinors import Momentum3, Spinor4, current_z, density, free_spinor

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "BoundaryError",
    "ConvergenceError",
    "DomainError",
    "Momentum3",
    "NotApplicableError",
    "OrbitConstants",
    "PlaneWaveSuperposition",
    "ScatterSolution",
    "Spinor4",
    "StaticFieldError",
    "StepProblem",
    "SweepRow",
    "Trajectory",
    "VelocityField",
    "assemble_region_wave",
    "asymptotic_gamma",
    "classify_regime",
    "coefficients",
    "continuity_residual",
    "currents",
    "current_z",
    "density",
    "free_spinor",
    "gamma_factor",
    "integrate_rk4",
    "match_amplitudes",
    "nonrel_coefficients",
    "orbit_constants",
    "solve",
    "solve_orbit_implicit",
    "superposition_current",
    "superposition_density",
    "sweep",
    "trajectory_fan",
    "trajectory_implicit",
    "trajectory_rk4",
    "velocity",
    "velocity_at_step",
    "velocity_numeric",
    "wavenumbers",
]
