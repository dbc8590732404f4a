"""Pure-Python kernel implementations.

Reference versions of the hot loops; diracstep.kernels swaps these for the
Cython twins (_kernels_cy) when the extension built.  Signatures and
numerics must stay bit-compatible with the compiled module - the parity
tests in tests/test_kernels.py hold both to that.
"""

from __future__ import annotations

import math

import numpy as np

BACKEND = "python"


def kepler_u(mean: float, eps: float, tol: float = 1e-13, max_iter: int = 100) -> float:
    """Root u of u + eps*sin(u) = mean for 0 <= eps < 1.

    The residual is strictly increasing (slope >= 1 - eps > 0), so the
    root is unique and lies in [mean - eps, mean + eps].  Safeguarded
    Newton: steps leaving the current sign bracket fall back to bisection.
    Returns NaN after max_iter failures (callers raise).
    """
    tol_eff = max(tol, 4e-16 * abs(mean))
    lo = mean - eps
    hi = mean + eps
    u = mean
    for _ in range(max_iter):
        f = u + eps * math.sin(u) - mean
        if abs(f) <= tol_eff:
            return u
        if f > 0.0:
            hi = u
        else:
            lo = u
        step = f / (1.0 + eps * math.cos(u))
        candidate = u - step
        if candidate <= lo or candidate >= hi:
            candidate = 0.5 * (lo + hi)
        u = candidate
    return math.nan


def kepler_u_array(
    mean: np.ndarray, eps: float, tol: float = 1e-13, max_iter: int = 100
) -> np.ndarray:
    """Vectorized kepler_u over an array of mean values."""
    mean = np.asarray(mean, dtype=np.float64)
    out = np.empty_like(mean)
    flat_in = mean.ravel()
    flat_out = out.ravel()
    for i in range(flat_in.size):
        flat_out[i] = kepler_u(float(flat_in[i]), eps, tol, max_iter)
    return out


def rk4_on_grid(
    z0: float,
    t_grid: np.ndarray,
    dt_max: float,
    k: float,
    E: float,
    m: float,
    amp: float,
    phase: float,
    v_t: float,
    piecewise: bool,
) -> tuple[np.ndarray, np.ndarray]:
    """Classical RK4 for dz/dt = v(z), sampled at the given times.

    v(z) = k(1-amp^2) / ((1+amp^2)E + 2 m amp cos(2kz - phase)) in z < 0
    (everywhere when piecewise is false) and the constant v_t in z >= 0.
    Each grid interval is subdivided into equal substeps no longer than
    dt_max; every grid time is hit exactly.
    """
    t_grid = np.asarray(t_grid, dtype=np.float64)
    n = t_grid.size
    z_out = np.empty(n)
    v_out = np.empty(n)

    v_num = k * (1.0 - amp * amp)
    den0 = (1.0 + amp * amp) * E
    den1 = 2.0 * m * amp
    two_k = 2.0 * k
    cos = math.cos

    def vel(z: float) -> float:
        if piecewise and z >= 0.0:
            return v_t
        return v_num / (den0 + den1 * cos(two_k * z - phase))

    z = z0
    z_out[0] = z
    v_out[0] = vel(z)
    for i in range(1, n):
        span = t_grid[i] - t_grid[i - 1]
        n_sub = max(1, math.ceil(span / dt_max))
        h = span / n_sub
        for _ in range(n_sub):
            k1 = vel(z)
            k2 = vel(z + 0.5 * h * k1)
            k3 = vel(z + 0.5 * h * k2)
            k4 = vel(z + h * k3)
            z += h * (k1 + 2.0 * k2 + 2.0 * k3 + k4) / 6.0
        z_out[i] = z
        v_out[i] = vel(z)
    return z_out, v_out
