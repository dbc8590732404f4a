"""Kernel backend selection.

Imports the compiled extension when present and falls back to the pure
Python twins otherwise.  BACKEND names the active implementation;
benchmarks/bench_kernels.py times the two side by side.
"""

from __future__ import annotations

from . import _kernels_py

try:
    from . import _kernels_cy as _impl  # type: ignore[attr-defined]
except ImportError:
    _impl = _kernels_py

BACKEND: str = _impl.BACKEND

kepler_u = _impl.kepler_u
kepler_u_array = _impl.kepler_u_array
rk4_on_grid = _impl.rk4_on_grid

__all__ = ["BACKEND", "kepler_u", "kepler_u_array", "rk4_on_grid"]
