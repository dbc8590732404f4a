"""Causal velocity field of the step problem and its trajectories.

The conserved Dirac current defines a 3-velocity v = j/j0 at every point
where the density is nonzero.  For the stationary scattering states of
this package the field is time independent and piecewise analytic:

    z < 0:   v(z) = k (1-|A|^2) / ((1+|A|^2) E + 2 m |A| cos(2kz - phi))
    z >= 0:  v    = Re(q) / (E - U)        (constant)

with A = |A| exp(i phi) the reflected amplitude.  Integrating dz/dt = v
in the left region gives the implicit orbit

    u + eps sin(u) = omega t + c,         u = 2 k z - phi,

a Kepler-type relation with modulation eps = 2 m |A| / (E (1+|A|^2)) < 1
and rate omega = 2 k^2 (1-|A|^2) / (E (1+|A|^2)); the right region is the
straight line z = v_T (t - t_cross).  The same orbit can be produced two
independent ways - solving the implicit relation, or RK4 on the velocity
field - and the tests hold the two routes together.

Besides step solutions, every operation accepts a PlaneWaveSuperposition:
a uniform-medium fixture (incident plus reflected wave with a prescribed
amplitude, no step anywhere) whose oscillatory field and Kepler orbit
extend over all z.  The worked |A| = sqrt(2) - 1 example lives there.

Sign behaviour: sign(v) = sign(omega) = sign(1 - |A|^2) in z < 0.  A
Klein-zone solution under the momentum convention has |A| > 1, so its
flow runs in -z everywhere (particles leave the step); the crossing then
happens from right to left and the two orbit branches swap time order.
In the evanescent regime |A| = 1 makes the field vanish identically;
trajectory requests return flagged static trajectories.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal, Sequence

import numpy as np

from . import kernels
from .errors import ConvergenceError, DomainError, StaticFieldError
from .scattering import assemble_region_wave
from .spinors import current_z, density

__all__ = [
    "PlaneWaveSuperposition",
    "VelocityField",
    "OrbitConstants",
    "Trajectory",
    "superposition_density",
    "superposition_current",
    "velocity",
    "velocity_at_step",
    "velocity_numeric",
    "orbit_constants",
    "solve_orbit_implicit",
    "integrate_rk4",
    "trajectory_implicit",
    "trajectory_rk4",
    "trajectory_fan",
]

Method = Literal["implicit", "rk4"]

DEFAULT_DT = 1e-3
KEPLER_TOL = 1e-13
KEPLER_MAX_ITER = 100


@dataclass(frozen=True, slots=True)
class PlaneWaveSuperposition:
    """Incident + reflected wave with prescribed |A| and phi, no step.

    m and k fix the kinematics; amp >= 0 is the reflected modulus (amp = 1
    gives a static field, amp > 1 a leftward flow).  The oscillatory
    density, current, velocity and orbit formulas apply over all z.
    """

    m: float
    k: float
    amp: float
    phase: float = 0.0

    def __post_init__(self) -> None:
        if not (self.m > 0.0 and math.isfinite(self.m)):
            raise DomainError(f"mass must be positive and finite, got {self.m}")
        if not (self.k > 0.0 and math.isfinite(self.k)):
            raise DomainError(f"momentum must be positive and finite, got {self.k}")
        if not (self.amp >= 0.0 and math.isfinite(self.amp)):
            raise DomainError(f"amplitude modulus must be >= 0, got {self.amp}")
        if not math.isfinite(self.phase):
            raise DomainError("phase must be finite")

    @property
    def E(self) -> float:
        return math.hypot(self.k, self.m)

    @property
    def A(self) -> complex:
        return self.amp * complex(math.cos(self.phase), math.sin(self.phase))

    uniform = True

    @property
    def static(self) -> bool:
        return self.amp == 1.0


@dataclass(frozen=True, slots=True)
class VelocityField:
    """Constants of the piecewise velocity field, cached off a state.

    v_t is the constant speed of the z >= 0 branch; None for uniform
    fixtures, whose oscillatory branch extends everywhere.
    """

    m: float
    E: float
    k: float
    amp: float
    phase: float
    v_t: float | None
    static: bool

    @classmethod
    def from_state(cls, state) -> "VelocityField":
        uniform = bool(getattr(state, "uniform", False))
        return cls(
            m=state.m,
            E=state.E,
            k=state.k,
            amp=state.amp,
            phase=state.phase,
            v_t=None if uniform else state.v_t,
            static=state.static,
        )

    @property
    def piecewise(self) -> bool:
        return self.v_t is not None

    def oscillatory(self, z: float) -> float:
        """Left-branch velocity formula, valid at any z for fixtures."""
        a = self.amp
        return (
            self.k
            * (1.0 - a * a)
            / ((1.0 + a * a) * self.E + 2.0 * self.m * a * math.cos(2.0 * self.k * z - self.phase))
        )

    def at(self, z: float) -> float:
        if self.static:
            return 0.0
        if self.piecewise and z >= 0.0:
            return self.v_t  # type: ignore[return-value]
        return self.oscillatory(z)


def _as_field(state) -> VelocityField:
    if isinstance(state, VelocityField):
        return state
    return VelocityField.from_state(state)


def superposition_density(state, z: float) -> float:
    """Probability density of the total wave at z.

    Left of the step (everywhere for fixtures) this is the corrected
    closed form 2 (E+m)^-1 [(1+|A|^2) E + 2 m |A| cos(2kz - phi)]; right
    of a step it is the transmitted-wave density, evaluated off the
    assembled spinor so the evanescent decay comes out right too.
    """
    f = _as_field(state)
    if f.piecewise and z >= 0.0:
        if getattr(state, "regime", None) == "evanescent":
            return density(assemble_region_wave(state, z, 0.0))
        w = state.w
        return abs(state.C) ** 2 * 2.0 * w / (w + f.m)
    a = f.amp
    return (
        2.0
        / (f.E + f.m)
        * ((1.0 + a * a) * f.E + 2.0 * f.m * a * math.cos(2.0 * f.k * z - f.phase))
    )


def superposition_current(state) -> float:
    """z-current of the total wave: (2k/(E+m)) (1 - |A|^2), z independent.

    Equals the transmitted current of the matching problem (flux
    conservation); negative for |A| > 1, zero in the evanescent regime.
    """
    f = _as_field(state)
    return 2.0 * f.k / (f.E + f.m) * (1.0 - f.amp * f.amp)


def velocity(state, z: float) -> float:
    """Flow velocity at z; piecewise for step solutions, |v| <= 1 always.

    Evanescent solutions have a static field and return 0 everywhere.
    """
    return _as_field(state).at(z)


def velocity_at_step(state) -> tuple[float, float]:
    """Left and right limits of the velocity at z = 0 (equal limits for
    any continuous matching; the left limit uses the closed form)."""
    f = _as_field(state)
    if f.static:
        return 0.0, 0.0
    left = f.oscillatory(0.0)
    right = f.v_t if f.piecewise else left
    return left, right


def velocity_numeric(state, z: float, t: float) -> float:
    """Guidance-law velocity j/j0 evaluated on the assembled spinor.

    Independent of t for these stationary states; agrees with velocity()
    to rounding and serves as its cross-check.
    """
    psi = assemble_region_wave(state, z, t)
    rho = density(psi)
    if rho <= 0.0:
        raise DomainError(f"vanishing density at z={z}; velocity undefined")
    return current_z(psi) / rho


@dataclass(frozen=True, slots=True)
class OrbitConstants:
    """Parameters of one implicit orbit u + eps sin(u) = omega t + c."""

    eps: float
    omega: float
    phi: float
    c: float
    c_prime: float
    t_cross: float


def orbit_constants(state, c: float = 0.0, c_prime: float | None = None) -> OrbitConstants:
    """Orbit parameters for the given state and integration constant c.

    t_cross solves the left orbit at z = 0 (u = -phi):
    omega t_cross + c = -phi + eps sin(-phi).  c_prime is derived so the
    straight branch passes through (t_cross, 0) unless given explicitly.
    """
    f = _as_field(state)
    if f.static:
        raise StaticFieldError(
            "velocity field is static (|A| = 1); no orbit exists"
        )
    a = f.amp
    scale = f.E * (1.0 + a * a)
    eps = 2.0 * f.m * a / scale
    omega = 2.0 * f.k * f.k * (1.0 - a * a) / scale
    if eps >= 1.0:
        raise DomainError(f"orbit modulation eps={eps} >= 1; E > m is violated")
    # z = 0 means u = -phi, where the mean anomaly is u + eps sin(u).
    mean_cross = -f.phase + eps * math.sin(-f.phase)
    t_cross = (mean_cross - c) / omega
    if c_prime is None:
        c_prime = -f.v_t * t_cross if f.piecewise else 0.0
    return OrbitConstants(
        eps=eps, omega=omega, phi=f.phase, c=c, c_prime=c_prime, t_cross=t_cross
    )


def solve_orbit_implicit(
    oc: OrbitConstants, k: float, v_t: float | None, t: float
) -> tuple[float, float]:
    """Position and velocity at time t from the implicit orbit.

    Left branch: Newton on the Kepler-type relation (unique root, slope
    >= 1 - eps).  Right branch: z = v_T (t - t_cross).  Which branch is
    active at a given t follows the flow direction: rightward flows
    (omega > 0) occupy z < 0 for t <= t_cross, leftward flows (omega < 0,
    Klein momentum convention) for t >= t_cross.  v_t None (uniform
    fixture) keeps the Kepler branch for all t.
    """
    if v_t is None:
        on_left = True
    elif oc.omega > 0.0:
        on_left = t <= oc.t_cross
    else:
        on_left = t >= oc.t_cross
    if on_left:
        mean = oc.omega * t + oc.c
        u = kernels.kepler_u(mean, oc.eps, KEPLER_TOL, KEPLER_MAX_ITER)
        if math.isnan(u):
            raise ConvergenceError(
                f"implicit orbit solve failed at t={t} (eps={oc.eps}, mean={mean})"
            )
        z = (u + oc.phi) / (2.0 * k)
        v = oc.omega / (2.0 * k * (1.0 + oc.eps * math.cos(u)))
        return z, v
    return v_t * (t - oc.t_cross), v_t


def _orbit_on_grid(
    oc: OrbitConstants, k: float, v_t: float | None, t_grid: np.ndarray
) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized solve_orbit_implicit over a time grid."""
    t_grid = np.asarray(t_grid, dtype=np.float64)
    if v_t is None:
        on_left = np.ones(t_grid.shape, dtype=bool)
    elif oc.omega > 0.0:
        on_left = t_grid <= oc.t_cross
    else:
        on_left = t_grid >= oc.t_cross
    z = np.empty_like(t_grid)
    v = np.empty_like(t_grid)
    if on_left.any():
        mean = oc.omega * t_grid[on_left] + oc.c
        u = np.asarray(kernels.kepler_u_array(mean, oc.eps, KEPLER_TOL, KEPLER_MAX_ITER))
        if np.isnan(u).any():
            raise ConvergenceError(
                f"implicit orbit solve failed on grid (eps={oc.eps})"
            )
        z[on_left] = (u + oc.phi) / (2.0 * k)
        v[on_left] = oc.omega / (2.0 * k * (1.0 + oc.eps * np.cos(u)))
    if not on_left.all():
        line = ~on_left
        z[line] = v_t * (t_grid[line] - oc.t_cross)
        v[line] = v_t
    return z, v


@dataclass(frozen=True, slots=True)
class Trajectory:
    """Sampled path (t, z, v); t strictly increasing, |v| <= 1.

    static marks the flagged constant trajectories of the evanescent
    regime; offset records the integration constant for fan members.
    """

    t: np.ndarray
    z: np.ndarray
    v: np.ndarray
    method: Method
    crossed: bool
    static: bool = False
    offset: float | None = None

    @property
    def samples(self) -> list[tuple[float, float, float]]:
        return [
            (float(a), float(b), float(c))
            for a, b, c in zip(self.t, self.z, self.v)
        ]


def _time_grid(t0: float, t1: float, n: int) -> np.ndarray:
    if not (t1 > t0):
        raise DomainError(f"need t1 > t0, got [{t0}, {t1}]")
    if n < 2:
        raise DomainError(f"need at least 2 samples, got {n}")
    return np.linspace(t0, t1, n)


def _static_trajectory(
    t_grid: np.ndarray, z0: float, method: Method, offset: float | None = None
) -> Trajectory:
    z = np.full_like(t_grid, z0)
    return Trajectory(
        t=t_grid,
        z=z,
        v=np.zeros_like(t_grid),
        method=method,
        crossed=False,
        static=True,
        offset=offset,
    )


def _crossed(z: np.ndarray) -> bool:
    return bool(z.min() <= 0.0 <= z.max())


def trajectory_implicit(
    state, c: float = 0.0, t0: float = 0.0, t1: float = 10.0, n: int = 100
) -> Trajectory:
    """Orbit for integration constant c sampled on n times in [t0, t1].

    A static field (evanescent regime) has no orbit; the result is a
    flagged constant path pinned at z = c, the only position-like datum
    available.
    """
    t_grid = _time_grid(t0, t1, n)
    f = _as_field(state)
    if f.static:
        return _static_trajectory(t_grid, c, "implicit", offset=c)
    oc = orbit_constants(state, c)
    z, v = _orbit_on_grid(oc, f.k, f.v_t, t_grid)
    return Trajectory(
        t=t_grid, z=z, v=v, method="implicit", crossed=_crossed(z), offset=c
    )


def integrate_rk4(
    state, z0: float, t0: float, t1: float, dt: float = DEFAULT_DT
) -> Trajectory:
    """RK4 on dz/dt = v(z) from (t0, z0), one sample per step.

    The step count is ceil((t1-t0)/dt) with the stride shrunk to land on
    t1 exactly.  The field is continuous at z = 0, so the integrator runs
    straight through the stitch.
    """
    if not (dt > 0.0 and math.isfinite(dt)):
        raise DomainError(f"dt must be positive, got {dt}")
    if not math.isfinite(z0):
        raise DomainError(f"z0 must be finite, got {z0}")
    if not (t1 > t0):
        raise DomainError(f"need t1 > t0, got [{t0}, {t1}]")
    f = _as_field(state)
    n_steps = max(1, math.ceil((t1 - t0) / dt))
    t_grid = t0 + (t1 - t0) * np.arange(n_steps + 1) / n_steps
    t_grid[-1] = t1
    if f.static:
        return _static_trajectory(t_grid, z0, "rk4")
    z, v = kernels.rk4_on_grid(
        z0,
        t_grid,
        (t1 - t0) / n_steps,
        f.k,
        f.E,
        f.m,
        f.amp,
        f.phase,
        f.v_t if f.piecewise else math.nan,
        f.piecewise,
    )
    return Trajectory(t=t_grid, z=z, v=v, method="rk4", crossed=_crossed(z))


def trajectory_rk4(
    state,
    z0: float | None = None,
    c: float = 0.0,
    t0: float = 0.0,
    t1: float = 10.0,
    n: int = 100,
    dt: float = DEFAULT_DT,
) -> Trajectory:
    """RK4 trajectory sampled on n grid times, substeps no longer than dt.

    When z0 is omitted the start position is anchored at the implicit
    orbit for constant c, which makes the result directly comparable to
    trajectory_implicit with the same c.
    """
    t_grid = _time_grid(t0, t1, n)
    f = _as_field(state)
    if f.static:
        return _static_trajectory(t_grid, z0 if z0 is not None else c, "rk4", offset=c)
    if not (dt > 0.0 and math.isfinite(dt)):
        raise DomainError(f"dt must be positive, got {dt}")
    if z0 is None:
        oc = orbit_constants(state, c)
        z0, _ = solve_orbit_implicit(oc, f.k, f.v_t, t0)
    z, v = kernels.rk4_on_grid(
        z0,
        t_grid,
        dt,
        f.k,
        f.E,
        f.m,
        f.amp,
        f.phase,
        f.v_t if f.piecewise else math.nan,
        f.piecewise,
    )
    return Trajectory(
        t=t_grid, z=z, v=v, method="rk4", crossed=_crossed(z), offset=c
    )


def trajectory_fan(
    state,
    offsets: Sequence[float],
    t0: float,
    t1: float,
    n: int = 100,
    method: Method = "implicit",
    dt: float = DEFAULT_DT,
) -> list[Trajectory]:
    """One trajectory per integration constant, on a shared time grid.

    Members are returned in ascending offset order and, by uniqueness of
    the 1D flow, never cross.  The rk4 method anchors each member at the
    implicit-orbit position for t0, then integrates the field with
    substeps no longer than dt.
    """
    if method not in ("implicit", "rk4"):
        raise DomainError(f"method must be 'implicit' or 'rk4', got {method!r}")
    ordered = sorted(float(c) for c in offsets)
    if len(ordered) != len(set(ordered)):
        raise DomainError("fan offsets must be distinct")
    if not ordered:
        raise DomainError("fan needs at least one offset")
    t_grid = _time_grid(t0, t1, n)
    f = _as_field(state)
    if f.static:
        return [_static_trajectory(t_grid, c, method, offset=c) for c in ordered]
    fan: list[Trajectory] = []
    for c in ordered:
        if method == "implicit":
            oc = orbit_constants(state, c)
            z, v = _orbit_on_grid(oc, f.k, f.v_t, t_grid)
            fan.append(
                Trajectory(
                    t=t_grid, z=z, v=v, method=method, crossed=_crossed(z), offset=c
                )
            )
        else:
            fan.append(trajectory_rk4(state, c=c, t0=t0, t1=t1, n=n, dt=dt))
    return fan
