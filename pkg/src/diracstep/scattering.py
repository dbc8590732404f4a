"""Plane-wave matching at a sharp potential step on the z axis.

Geometry: an incident wave of energy E = sqrt(k^2 + m^2) > m travels in +z
through z < 0; the potential jumps at z = 0 by a magnitude V >= 0, either
down ("attractive", signed potential U = -V in z > 0) or up (repulsive,
U = +V).  Writing w = E - U for the effective energy in z > 0, the
transmitted wavenumber obeys q^2 = w^2 - m^2 and the regimes are

    downward, any V        w > m       propagating, q real
    upward, V < E - m      w > m       propagating, q real
    upward, E-m < V < E+m  |w| < m     evanescent, q = i*kappa, R = 1
    upward, V > E + m      w < -m      Klein zone, q real

Continuity of the wave at z = 0 fixes the reflected and transmitted
amplitudes

    A = (1 - gamma) / (1 + gamma),   C = 1 + A = 2 / (1 + gamma),

with the single matching ratio gamma = q (E + m) / (k (w + m)) valid in
every propagating regime and reducing to the familiar radical
sqrt((E+V-m)(E+m) / ((E-m)(E+V+m))) for downward steps.

In the Klein zone the sign of q is a genuine convention and both choices
are implemented:

    "group-velocity"  q < 0, gamma > 0, R < 1   (transmitted group
                      velocity points away from the step)
    "momentum"        q > 0, gamma < 0, R > 1, T < 0  (the textbook
                      paradox presentation)

R is |A|^2; T is the signed current ratio J_T / J_I, so R + T = 1 holds
identically in all regimes and conventions.  Exact regime boundaries
(E = m, V = E -+ m) are rejected rather than regularized: gamma is
singular there and callers must perturb.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Literal

import numpy as np

from .errors import BoundaryError, DomainError, NotApplicableError
from .spinors import Spinor4, phase_factor

__all__ = [
    "StepProblem",
    "ScatterSolution",
    "SweepRow",
    "classify_regime",
    "wavenumbers",
    "gamma_factor",
    "match_amplitudes",
    "solve",
    "currents",
    "coefficients",
    "asymptotic_gamma",
    "sweep",
    "nonrel_coefficients",
    "assemble_region_wave",
    "continuity_residual",
]

Direction = Literal["down", "up"]
Convention = Literal["group-velocity", "momentum"]
Regime = Literal["propagating", "evanescent", "klein"]

GROUP_VELOCITY: Convention = "group-velocity"
MOMENTUM: Convention = "momentum"


@dataclass(frozen=True, slots=True)
class StepProblem:
    """Physical inputs for one step-scattering problem.

    E and k are stored redundantly and must satisfy E = sqrt(k^2 + m^2);
    use the from_energy / from_momentum constructors, which derive one
    from the other.
    """

    m: float
    E: float
    k: float
    V: float
    direction: Direction = "down"
    convention: Convention = GROUP_VELOCITY

    def __post_init__(self) -> None:
        if not (self.m > 0.0 and math.isfinite(self.m)):
            raise DomainError(f"mass must be positive and finite, got {self.m}")
        if not math.isfinite(self.E) or self.E <= self.m:
            raise DomainError("energy must exceed mass")
        if not (self.k > 0.0 and math.isfinite(self.k)):
            raise DomainError(f"momentum must be positive and finite, got {self.k}")
        if abs(self.E - math.hypot(self.k, self.m)) > 1e-12 * self.E:
            raise DomainError(
                f"inconsistent kinematics: E={self.E} vs sqrt(k^2+m^2)="
                f"{math.hypot(self.k, self.m)}"
            )
        if not (self.V >= 0.0 and math.isfinite(self.V)):
            raise DomainError(f"step magnitude must be >= 0, got {self.V}")
        if self.direction not in ("down", "up"):
            raise DomainError(f"direction must be 'down' or 'up', got {self.direction!r}")
        if self.convention not in (GROUP_VELOCITY, MOMENTUM):
            raise DomainError(f"unknown convention {self.convention!r}")

    @classmethod
    def from_energy(
        cls,
        m: float,
        E: float,
        V: float,
        direction: Direction = "down",
        convention: Convention = GROUP_VELOCITY,
    ) -> "StepProblem":
        if not (m > 0.0 and math.isfinite(m)):
            raise DomainError(f"mass must be positive and finite, got {m}")
        if not math.isfinite(E) or E <= m:
            raise DomainError("energy must exceed mass")
        k = math.sqrt(E * E - m * m)
        return cls(m=m, E=E, k=k, V=V, direction=direction, convention=convention)

    @classmethod
    def from_momentum(
        cls,
        m: float,
        k: float,
        V: float,
        direction: Direction = "down",
        convention: Convention = GROUP_VELOCITY,
    ) -> "StepProblem":
        if not (m > 0.0 and math.isfinite(m)):
            raise DomainError(f"mass must be positive and finite, got {m}")
        if not (k > 0.0 and math.isfinite(k)):
            raise DomainError(f"momentum must be positive and finite, got {k}")
        return cls(m=m, E=math.hypot(k, m), k=k, V=V, direction=direction, convention=convention)

    @property
    def U(self) -> float:
        """Signed potential in z > 0: -V downward, +V upward."""
        return -self.V if self.direction == "down" else self.V

    @property
    def w(self) -> float:
        """Effective energy E - U seen by the transmitted wave."""
        return self.E - self.U


@dataclass(frozen=True, slots=True)
class ScatterSolution:
    """Amplitudes and coefficients derived from one StepProblem.

    q is complex: real in propagating and Klein regimes (signed by the
    convention in the Klein zone), i*kappa with kappa > 0 in evanescence.
    gamma holds the matching ratio in propagating/Klein regimes; in the
    evanescent regime it holds the real ratio gamma_t of A = (1 - i
    gamma_t)/(1 + i gamma_t), the only real number the matching produces
    there.
    """

    problem: StepProblem
    k: float
    q: complex
    gamma: float
    A: complex
    C: complex
    R: float
    T: float
    regime: Regime

    # Pass-through views used heavily downstream.
    @property
    def m(self) -> float:
        return self.problem.m

    @property
    def E(self) -> float:
        return self.problem.E

    @property
    def V(self) -> float:
        return self.problem.V

    @property
    def U(self) -> float:
        return self.problem.U

    @property
    def w(self) -> float:
        return self.problem.w

    @property
    def direction(self) -> Direction:
        return self.problem.direction

    @property
    def convention(self) -> Convention:
        return self.problem.convention

    @property
    def amp(self) -> float:
        """|A| of the polar form A = |A| exp(i phi)."""
        return abs(self.A)

    @property
    def phase(self) -> float:
        """phi of the polar form; pi for negative real A, 0 for A = 0."""
        if self.A == 0:
            return 0.0
        return math.atan2(self.A.imag, self.A.real)

    @property
    def v_t(self) -> float:
        """Transmitted flow speed Re(q)/w; zero in the evanescent regime."""
        return self.q.real / self.w

    # Distinguishes step solutions from uniform-medium fixtures in the
    # trajectory layer; see diracstep.bohm.PlaneWaveSuperposition.
    uniform = False

    @property
    def static(self) -> bool:
        """True when the velocity field vanishes (total reflection)."""
        return self.regime == "evanescent"


def classify_regime(p: StepProblem) -> Regime:
    """Regime of the transmitted wave; exact boundaries are rejected."""
    w = p.w
    if abs(w) == p.m:
        raise BoundaryError(
            f"regime boundary: |E - U| = m exactly (V = {p.V}); perturb the input"
        )
    if w > p.m:
        return "propagating"
    if w < -p.m:
        return "klein"
    return "evanescent"


def wavenumbers(p: StepProblem) -> tuple[float, complex, Regime]:
    """Incident and transmitted wavenumbers plus the regime tag.

    k = sqrt(E^2 - m^2).  q = sqrt(w^2 - m^2) when |w| > m (negative root
    taken in the Klein zone under the group-velocity convention);
    q = i sqrt(m^2 - w^2) when |w| < m.
    """
    regime = classify_regime(p)
    w = p.w
    if regime == "evanescent":
        q = complex(0.0, math.sqrt(p.m * p.m - w * w))
    elif p.V == 0.0:
        # No step means no scattering: force q = k so gamma = 1 and A = 0
        # exactly instead of within an ulp.
        q = complex(p.k, 0.0)
    else:
        q_mag = math.sqrt(w * w - p.m * p.m)
        if regime == "klein" and p.convention == GROUP_VELOCITY:
            q_mag = -q_mag
        q = complex(q_mag, 0.0)
    return p.k, q, regime


def gamma_factor(p: StepProblem) -> float:
    """Matching ratio gamma = q (E + m) / (k (w + m)).

    Defined in propagating and Klein regimes only.  Downward steps give
    the radical sqrt((E+V-m)(E+m)/((E-m)(E+V+m))) >= 1; the Klein zone
    gives gamma > 0 (group-velocity convention) or gamma < 0 (momentum
    convention).
    """
    k, q, regime = wavenumbers(p)
    if regime == "evanescent":
        raise NotApplicableError(
            "gamma is not defined in the evanescent regime; amplitudes are "
            "computed directly there"
        )
    return q.real * (p.E + p.m) / (k * (p.w + p.m))


def _evanescent_ratio(p: StepProblem, kappa: float) -> float:
    return kappa * (p.E + p.m) / (p.k * (p.w + p.m))


def match_amplitudes(p: StepProblem) -> tuple[complex, complex]:
    """Reflected and transmitted amplitudes (A, C) with C = 1 + A exactly."""
    k, q, regime = wavenumbers(p)
    if regime == "evanescent":
        gt = _evanescent_ratio(p, q.imag)
        A = (1.0 - 1j * gt) / (1.0 + 1j * gt)
    else:
        gamma = gamma_factor(p)
        A = complex((1.0 - gamma) / (1.0 + gamma), 0.0)
    return A, 1.0 + A


def solve(p: StepProblem) -> ScatterSolution:
    """Full matching solution for one problem.

    R = |A|^2 and T = J_T/J_I are computed through independent routes;
    flux conservation makes R + T = 1 to rounding.
    """
    k, q, regime = wavenumbers(p)
    if regime == "evanescent":
        gamma = _evanescent_ratio(p, q.imag)
        A = (1.0 - 1j * gamma) / (1.0 + 1j * gamma)
    else:
        gamma = q.real * (p.E + p.m) / (k * (p.w + p.m))
        A = complex((1.0 - gamma) / (1.0 + gamma), 0.0)
    C = 1.0 + A
    # |A| = 1 is an analytic identity in evanescence: total reflection
    # is exact, not a rounding accident.
    R = 1.0 if regime == "evanescent" else abs(A) ** 2
    j_i = 2.0 * k / (p.E + p.m)
    j_t = 2.0 * q.real * abs(C) ** 2 / (p.w + p.m)
    T = j_t / j_i
    return ScatterSolution(
        problem=p, k=k, q=q, gamma=gamma, A=A, C=C, R=R, T=T, regime=regime
    )


def currents(sol: ScatterSolution) -> tuple[float, float, float]:
    """Incident, reflected and transmitted z-currents (J_I, J_R, J_T).

    J_I = 2k/(E+m), J_R = -J_I |A|^2, J_T = 2 Re(q) |C|^2 / (w + m);
    J_I + J_R = J_T expresses flux conservation.
    """
    j_i = 2.0 * sol.k / (sol.E + sol.m)
    j_r = -j_i * abs(sol.A) ** 2
    j_t = 2.0 * sol.q.real * abs(sol.C) ** 2 / (sol.w + sol.m)
    return j_i, j_r, j_t


def coefficients(sol: ScatterSolution) -> tuple[float, float]:
    """Reflection and transmission coefficients (R, T) with R + T = 1."""
    return sol.R, sol.T


def asymptotic_gamma(m: float, E: float) -> float:
    """V -> infinity limit of gamma for a downward step: sqrt((E+m)/(E-m))."""
    if m < 0.0 or not math.isfinite(m):
        raise DomainError(f"mass must be >= 0 and finite, got {m}")
    if not math.isfinite(E) or E <= m:
        raise DomainError("energy must exceed mass")
    return math.sqrt((E + m) / (E - m))


@dataclass(frozen=True, slots=True)
class SweepRow:
    """One grid point of a parameter sweep.

    Rows whose grid point hits a regime boundary (or otherwise fails the
    problem invariants) are flagged rather than fatal; their physics
    columns are zeroed and must be ignored.
    """

    value: float
    gamma: float
    R: float
    T: float
    boundary: bool = False


def _sweep_grid(lo: float, hi: float, n: int, scale: str) -> np.ndarray:
    if n < 2:
        raise DomainError(f"sweep needs n >= 2, got {n}")
    if not (lo < hi):
        raise DomainError(f"sweep needs lo < hi, got [{lo}, {hi}]")
    if scale == "linear":
        return np.linspace(lo, hi, n)
    if scale == "log":
        if lo < 0.0:
            raise DomainError("log sweep needs lo >= 0")
        if lo == 0.0:
            # Endpoints stay exact; the geometric part spans 9 decades
            # below hi, an arbitrary but documented anchor.
            return np.concatenate(([0.0], np.geomspace(hi * 1e-9, hi, n - 1)))
        return np.geomspace(lo, hi, n)
    raise DomainError(f"scale must be 'linear' or 'log', got {scale!r}")


def sweep(
    template: StepProblem,
    axis: Literal["V", "E"],
    lo: float,
    hi: float,
    n: int,
    scale: Literal["linear", "log"] = "linear",
) -> list[SweepRow]:
    """Solve along a V or E grid, endpoints inclusive, in lo -> hi order.

    The template supplies every field not being swept.  Boundary hits are
    flagged per row and do not abort the sweep.
    """
    if axis not in ("V", "E"):
        raise DomainError(f"sweep axis must be 'V' or 'E', got {axis!r}")
    rows: list[SweepRow] = []
    for value in _sweep_grid(lo, hi, n, scale):
        x = float(value)
        try:
            if axis == "V":
                p = replace(template, V=x)
            else:
                p = StepProblem.from_energy(
                    template.m, x, template.V, template.direction, template.convention
                )
            s = solve(p)
        except DomainError:
            rows.append(SweepRow(value=x, gamma=0.0, R=0.0, T=0.0, boundary=True))
        else:
            rows.append(SweepRow(value=x, gamma=s.gamma, R=s.R, T=s.T))
    return rows


def nonrel_coefficients(
    m: float, E_kin: float, V: float, direction: Direction = "down"
) -> tuple[float, float]:
    """Schroedinger step coefficients for comparison with the Dirac case.

    k = sqrt(2 m E_kin); q = sqrt(2 m (E_kin + V)) downward or
    sqrt(2 m (E_kin - V)) upward; R = ((k-q)/(k+q))^2 and T = 1 - R.
    An upward step higher than the kinetic energy reflects totally.  The
    result is independent of the step direction whenever both waves
    propagate.
    """
    if not (m > 0.0 and math.isfinite(m)):
        raise DomainError(f"mass must be positive and finite, got {m}")
    if not (E_kin > 0.0 and math.isfinite(E_kin)):
        raise DomainError(f"kinetic energy must be positive, got {E_kin}")
    if not (V >= 0.0 and math.isfinite(V)):
        raise DomainError(f"step magnitude must be >= 0, got {V}")
    if direction not in ("down", "up"):
        raise DomainError(f"direction must be 'down' or 'up', got {direction!r}")
    if direction == "up" and E_kin < V:
        return 1.0, 0.0
    k = math.sqrt(2.0 * m * E_kin)
    q = math.sqrt(2.0 * m * (E_kin + V if direction == "down" else E_kin - V))
    R = ((k - q) / (k + q)) ** 2
    return R, 1.0 - R


def _superposition_at(sol, z: float, t: float) -> Spinor4:
    """Incident + reflected wave, valid in z < 0 (everywhere for fixtures)."""
    ratio = sol.k / (sol.E + sol.m)
    fwd = phase_factor(sol.E, sol.k, z, t)
    bwd = sol.A * phase_factor(sol.E, -sol.k, z, t)
    return Spinor4(fwd + bwd, 0j, ratio * (fwd - bwd), 0j)


def _transmitted_at(sol: ScatterSolution, z: float, t: float) -> Spinor4:
    """Transmitted wave in z >= 0; complex q covers evanescent decay too."""
    ratio = sol.q / (sol.w + sol.m)
    ph = sol.C * phase_factor(sol.E, sol.q, z, t)
    return Spinor4(ph, 0j, ratio * ph, 0j)


def assemble_region_wave(sol, z: float, t: float) -> Spinor4:
    """Total wavefunction at (z, t): psi_I + psi_R left of the step,
    psi_T right of it; continuous at z = 0 by construction.

    Accepts any solution-like object; uniform-medium fixtures (no step)
    use the superposition form everywhere.
    """
    if sol.uniform or z < 0.0:
        return _superposition_at(sol, z, t)
    return _transmitted_at(sol, z, t)


def continuity_residual(sol: ScatterSolution) -> float:
    """Max componentwise mismatch between the two sides of z = 0 at t = 0."""
    left = _superposition_at(sol, 0.0, 0.0)
    right = _transmitted_at(sol, 0.0, 0.0)
    diff = left - right
    return max(abs(diff.c0), abs(diff.c1), abs(diff.c2), abs(diff.c3))
