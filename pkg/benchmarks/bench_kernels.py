#!/usr/bin/env python3
"""Times the hot kernels in both backends.

Usage: python benchmarks/bench_kernels.py [--repeat N]

Covers the two loops that dominate trajectory work: the Kepler-type
implicit solve over a dense mean-anomaly grid, and long RK4 integrations
of the piecewise velocity field.  Falls back to reporting only the pure
Python numbers when the extension is not built.
"""

from __future__ import annotations

import argparse
import math
import time

import numpy as np

from diracstep import _kernels_py

try:
    from diracstep import _kernels_cy
except ImportError:
    _kernels_cy = None


def _best_of(repeat, fn, *args):
    best = math.inf
    for _ in range(repeat):
        start = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - start)
    return best


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    rng = np.random.default_rng(0)
    means = rng.uniform(-40.0, 40.0, size=200_000)
    d1 = dict(
        k=0.5, E=math.hypot(0.5, 0.5), m=0.5,
        amp=0.2819716800612405, phase=math.pi,
        v_t=0.9561451575849219, piecewise=True,
    )
    t_grid = np.linspace(0.0, 50.0, 501)

    cases = [
        (
            "kepler solve, 2e5 points, eps=0.85",
            lambda impl: impl.kepler_u_array(means, 0.85),
        ),
        (
            "rk4 over t in [0,50], dt=1e-3",
            lambda impl: impl.rk4_on_grid(
                -20.0, t_grid, 1e-3, d1["k"], d1["E"], d1["m"],
                d1["amp"], d1["phase"], d1["v_t"], d1["piecewise"],
            ),
        ),
    ]

    backends = [("python", _kernels_py)]
    if _kernels_cy is not None:
        backends.append(("compiled", _kernels_cy))

    print(f"{'case':<40} " + " ".join(f"{name:>12}" for name, _ in backends)
          + ("      speedup" if len(backends) == 2 else ""))
    for label, runner in cases:
        times = [_best_of(args.repeat, runner, impl) for _, impl in backends]
        row = f"{label:<40} " + " ".join(f"{t * 1e3:>10.2f}ms" for t in times)
        if len(times) == 2:
            row += f"  {times[0] / times[1]:>10.1f}x"
        print(row)
    if _kernels_cy is None:
        print("compiled backend unavailable; build it with "
              "`pip install -e . --no-build-isolation`")


if __name__ == "__main__":
    main()
