# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernel twins of diracstep._kernels_py; same contracts."""

from libc.math cimport ceil, cos, fabs, sin, NAN

import numpy as np

BACKEND = "compiled"


cdef double _kepler_scalar(double mean, double eps, double tol, int max_iter) noexcept nogil:
    cdef double tol_eff = tol
    cdef double scale = 4e-16 * fabs(mean)
    cdef double lo = mean - eps
    cdef double hi = mean + eps
    cdef double u = mean
    cdef double f, candidate
    cdef int i
    if scale > tol_eff:
        tol_eff = scale
    for i in range(max_iter):
        f = u + eps * sin(u) - mean
        if fabs(f) <= tol_eff:
            return u
        if f > 0.0:
            hi = u
        else:
            lo = u
        candidate = u - f / (1.0 + eps * cos(u))
        if candidate <= lo or candidate >= hi:
            candidate = 0.5 * (lo + hi)
        u = candidate
    return NAN


def kepler_u(double mean, double eps, double tol=1e-13, int max_iter=100):
    """Root u of u + eps*sin(u) = mean; NaN after max_iter failures."""
    return _kepler_scalar(mean, eps, tol, max_iter)


def kepler_u_array(mean, double eps, double tol=1e-13, int max_iter=100):
    """Vectorized kepler_u over an array of mean values."""
    cdef double[::1] flat = np.ascontiguousarray(mean, dtype=np.float64).ravel()
    out_arr = np.empty(flat.shape[0], dtype=np.float64)
    cdef double[::1] out = out_arr
    cdef Py_ssize_t i
    with nogil:
        for i in range(flat.shape[0]):
            out[i] = _kepler_scalar(flat[i], eps, tol, max_iter)
    return out_arr.reshape(np.shape(mean))


cdef inline double _vel(
    double z, double v_num, double den0, double den1, double two_k,
    double phase, double v_t, bint piecewise,
) noexcept nogil:
    if piecewise and z >= 0.0:
        return v_t
    return v_num / (den0 + den1 * cos(two_k * z - phase))


def rk4_on_grid(
    double z0,
    t_grid,
    double dt_max,
    double k,
    double E,
    double m,
    double amp,
    double phase,
    double v_t,
    bint piecewise,
):
    """Classical RK4 for dz/dt = v(z), sampled at the given times."""
    cdef double[::1] t = np.ascontiguousarray(t_grid, dtype=np.float64)
    cdef Py_ssize_t n = t.shape[0]
    z_arr = np.empty(n, dtype=np.float64)
    v_arr = np.empty(n, dtype=np.float64)
    cdef double[::1] z_out = z_arr
    cdef double[::1] v_out = v_arr

    cdef double v_num = k * (1.0 - amp * amp)
    cdef double den0 = (1.0 + amp * amp) * E
    cdef double den1 = 2.0 * m * amp
    cdef double two_k = 2.0 * k

    cdef double z = z0
    cdef double span, h, k1, k2, k3, k4
    cdef Py_ssize_t i, j, n_sub

    with nogil:
        z_out[0] = z
        v_out[0] = _vel(z, v_num, den0, den1, two_k, phase, v_t, piecewise)
        for i in range(1, n):
            span = t[i] - t[i - 1]
            n_sub = <Py_ssize_t> ceil(span / dt_max)
            if n_sub < 1:
                n_sub = 1
            h = span / n_sub
            for j in range(n_sub):
                k1 = _vel(z, v_num, den0, den1, two_k, phase, v_t, piecewise)
                k2 = _vel(z + 0.5 * h * k1, v_num, den0, den1, two_k, phase, v_t, piecewise)
                k3 = _vel(z + 0.5 * h * k2, v_num, den0, den1, two_k, phase, v_t, piecewise)
                k4 = _vel(z + h * k3, v_num, den0, den1, two_k, phase, v_t, piecewise)
                z += h * (k1 + 2.0 * k2 + 2.0 * k3 + k4) / 6.0
            z_out[i] = z
            v_out[i] = _vel(z, v_num, den0, den1, two_k, phase, v_t, piecewise)
    return z_arr, v_arr
