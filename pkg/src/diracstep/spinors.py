"""Dirac plane-wave spinors and their bilinear observables.

Conventions (used everywhere in this package):
- Natural units, hbar = c = 1.  Energy, mass and momentum share one unit;
  time and length share its inverse.
- Standard (Dirac) representation.  Only alpha^3 and the identity are ever
  needed, so no general gamma-matrix layer exists; the z-current is written
  out componentwise.
- Spin-up branch only.  Every scattering state in this package propagates
  along z with k^1 = k^2 = 0, so the fourth component stays zero.
- A free positive-energy wave of momentum k and mass m carries the
  amplitude

      sqrt((E + m) / 2E) * (1, 0, k3/(E+m), (k1 + i k2)/(E+m)),

  normalized so that the density psi^dag psi equals 1 exactly.  The
  spacetime phase exp(-i(E t - k z)) is applied by callers.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .errors import DomainError

__all__ = [
    "Momentum3",
    "Spinor4",
    "free_spinor",
    "density",
    "current_z",
]


@dataclass(frozen=True, slots=True)
class Momentum3:
    """Spatial momentum (kx, ky, kz) in natural units."""

    kx: float
    ky: float
    kz: float

    def norm_sq(self) -> float:
        return self.kx * self.kx + self.ky * self.ky + self.kz * self.kz

    def energy(self, m: float) -> float:
        """Relativistic dispersion E = sqrt(k^2 + m^2) >= m."""
        return math.sqrt(self.norm_sq() + m * m)


@dataclass(frozen=True, slots=True)
class Spinor4:
    """Four complex amplitudes at a single spacetime point."""

    c0: complex
    c1: complex
    c2: complex
    c3: complex

    def __add__(self, other: "Spinor4") -> "Spinor4":
        return Spinor4(
            self.c0 + other.c0,
            self.c1 + other.c1,
            self.c2 + other.c2,
            self.c3 + other.c3,
        )

    def __sub__(self, other: "Spinor4") -> "Spinor4":
        return Spinor4(
            self.c0 - other.c0,
            self.c1 - other.c1,
            self.c2 - other.c2,
            self.c3 - other.c3,
        )

    def scaled(self, factor: complex) -> "Spinor4":
        return Spinor4(
            factor * self.c0,
            factor * self.c1,
            factor * self.c2,
            factor * self.c3,
        )


def free_spinor(k: Momentum3, m: float) -> Spinor4:
    """Positive-energy spin-up plane-wave amplitude at the origin.

    Returns sqrt((E+m)/2E) * (1, 0, k3/(E+m), (k1 + i k2)/(E+m)); the
    phase factor exp(-i k.x) is excluded.  density(result) == 1.
    """
    if not (m > 0.0) or not math.isfinite(m):
        raise DomainError(f"mass must be positive and finite, got {m}")
    if not all(math.isfinite(c) for c in (k.kx, k.ky, k.kz)):
        raise DomainError("momentum components must be finite")
    e = k.energy(m)
    norm = math.sqrt((e + m) / (2.0 * e))
    return Spinor4(
        complex(norm),
        0j,
        complex(norm * k.kz / (e + m)),
        norm * complex(k.kx, k.ky) / (e + m),
    )


def density(psi: Spinor4) -> float:
    """Probability density psi^dag psi = sum |c_i|^2 >= 0."""
    return (
        abs(psi.c0) ** 2 + abs(psi.c1) ** 2 + abs(psi.c2) ** 2 + abs(psi.c3) ** 2
    )


def current_z(psi: Spinor4) -> float:
    """z-component of the probability current, psi^dag alpha^3 psi.

    In the standard representation alpha^3 swaps the upper and lower
    bispinor blocks with a sigma_3 twist, giving 2 Re(c0* c2 - c1* c3).
    Real by construction and bounded by density(psi).
    """
    return 2.0 * (psi.c0.conjugate() * psi.c2 - psi.c1.conjugate() * psi.c3).real


def phase_factor(energy: float, wavenumber: complex, z: float, t: float) -> complex:
    """Plane-wave phase exp(-i(E t - k z)) shared by all region waves."""
    return cmath.exp(-1j * (energy * t - wavenumber * z))
