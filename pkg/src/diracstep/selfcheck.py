"""Seeded invariant suite behind the `check` subcommand.

Every invariant declared by the physics layers is exercised here with a
deterministic RNG, so repeated runs with one seed are reproducible.  The
helpers (sample_problem, conservation_errors) are shared with the test
suite, which additionally pins the fixture values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterable

import numpy as np

from . import bohm, kernels, output, scattering
from .scattering import GROUP_VELOCITY, MOMENTUM, ScatterSolution, StepProblem
from .spinors import Momentum3, Spinor4, current_z, density, free_spinor

__all__ = [
    "CheckResult",
    "sample_problem",
    "sample_solution",
    "conservation_errors",
    "run_all",
    "report",
]


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


def sample_problem(
    rng: np.random.Generator,
    direction: str | None = None,
    regime: str | None = None,
    convention: str | None = None,
) -> StepProblem:
    """Random problem away from regime boundaries, spanning all regimes.

    Masses cover two decades, E/m reaches from barely relativistic to
    ultrarelativistic, and upward steps are drawn per-regime with a 5%
    margin off the V = E -+ m boundaries.
    """
    m = 10.0 ** rng.uniform(-1.0, 1.0)
    E = m * (1.0 + 10.0 ** rng.uniform(-3.0, 1.0))
    if direction is None:
        direction = "down" if rng.random() < 0.5 else "up"
    if direction == "down":
        V = m * 10.0 ** rng.uniform(-3.0, 3.0)
    else:
        if regime is None:
            regime = ("propagating", "evanescent", "klein")[rng.integers(0, 3)]
        if regime == "propagating":
            V = (E - m) * rng.uniform(0.05, 0.95)
        elif regime == "evanescent":
            V = (E - m) + 2.0 * m * rng.uniform(0.05, 0.95)
        else:
            V = (E + m) * (1.0 + 10.0 ** rng.uniform(-2.0, 2.0))
    if convention is None:
        convention = GROUP_VELOCITY if rng.random() < 0.5 else MOMENTUM
    return StepProblem.from_energy(m, E, V, direction, convention)


def sample_solution(rng: np.random.Generator, **kwargs) -> ScatterSolution:
    return scattering.solve(sample_problem(rng, **kwargs))


def conservation_errors(seed: int, n: int) -> dict[str, float]:
    """Worst-case errors of the four matching identities over n problems.

    Keys: rt (|R+T-1|), flux (relative |J_I+J_R-J_T|), c1a (|C-(1+A)|),
    continuity (max spinor mismatch at z = 0).
    """
    rng = np.random.default_rng(seed)
    worst = {"rt": 0.0, "flux": 0.0, "c1a": 0.0, "continuity": 0.0}
    for _ in range(n):
        s = scattering.solve(sample_problem(rng))
        j_i, j_r, j_t = scattering.currents(s)
        worst["rt"] = max(worst["rt"], abs(s.R + s.T - 1.0))
        worst["flux"] = max(worst["flux"], abs(j_i + j_r - j_t) / abs(j_i))
        worst["c1a"] = max(worst["c1a"], abs(s.C - (1.0 + s.A)))
        worst["continuity"] = max(worst["continuity"], scattering.continuity_residual(s))
    return worst


def _random_spinor(rng: np.random.Generator) -> Spinor4:
    raw = rng.standard_normal(8)
    return Spinor4(
        complex(raw[0], raw[1]),
        complex(raw[2], raw[3]),
        complex(raw[4], raw[5]),
        complex(raw[6], raw[7]),
    )


# ---------------------------------------------------------------------------
# Individual checks.  Each returns (passed, detail).


def _check_spinor_normalization(rng) -> tuple[bool, str]:
    worst = 0.0
    for _ in range(10_000):
        m = 10.0 ** rng.uniform(-2.0, 2.0)
        kvec = Momentum3(*(m * rng.standard_normal(3) * 3.0))
        worst = max(worst, abs(density(free_spinor(kvec, m)) - 1.0))
    return worst < 1e-14, f"max |density-1| = {worst:.3e} over 1e4 draws"

def _check_current_bound(rng) -> tuple[bool, str]:
    worst = -math.inf
    for _ in range(10_000):
        psi = _random_spinor(rng)
        worst = max(worst, abs(current_z(psi)) - density(psi))
    return worst <= 1e-12, f"max |J|-rho = {worst:.3e} (subluminal flux)"

def _check_step_continuity(rng) -> tuple[bool, str]:
    worst = max(
        scattering.continuity_residual(sample_solution(rng)) for _ in range(1_000)
    )
    return worst < 1e-12, f"max residual at z=0: {worst:.3e}"

def _check_reflected_linearity(rng) -> tuple[bool, str]:
    import dataclasses

    worst = 0.0
    for _ in range(200):
        s = sample_solution(rng)
        s2 = dataclasses.replace(s, A=s.A + 0.25, C=s.C + 0.25)
        for _ in range(5):
            z = -5.0 * rng.random()
            t = 10.0 * rng.random() - 5.0
            diff = scattering.assemble_region_wave(
                s2, z, t
            ) - scattering.assemble_region_wave(s, z, t)
            ratio = s.k / (s.E + s.m)
            expect = Spinor4(1.0, 0j, -ratio, 0j).scaled(
                0.25 * np.exp(-1j * (s.E * t + s.k * z))
            )
            d = diff - expect
            worst = max(worst, abs(d.c0), abs(d.c1), abs(d.c2), abs(d.c3))
    return worst < 1e-12, f"amplitude change alters only the reflected part: {worst:.3e}"

def _check_unitarity(rng) -> tuple[bool, str]:
    worst = conservation_errors(int(rng.integers(0, 2**31)), 100_000)
    ok = (
        worst["rt"] < 1e-12
        and worst["flux"] < 1e-12
        and worst["c1a"] <= 1e-15
        and worst["continuity"] < 1e-12
    )
    return ok, (
        "1e5 problems: |R+T-1|<={rt:.1e} flux<={flux:.1e} "
        "|C-1-A|<={c1a:.1e} continuity<={continuity:.1e}".format(**worst)
    )

def _check_downward_monotonic(rng) -> tuple[bool, str]:
    for _ in range(300):
        m = 10.0 ** rng.uniform(-1.0, 1.0)
        E = m * (1.0 + 10.0 ** rng.uniform(-3.0, 1.0))
        last_r = -1.0
        for V in np.geomspace(1e-3 * m, 1e3 * m, 12):
            s = scattering.solve(StepProblem.from_energy(m, E, float(V), "down"))
            if not (
                s.gamma >= 1.0
                and s.A.imag == 0.0
                and s.A.real <= 0.0
                and 0.0 <= s.R < 1.0
                and s.R >= last_r - 1e-15
            ):
                return False, f"downward ordering violated at m={m}, E={E}, V={V}"
            last_r = s.R
    return True, "gamma>=1, A<=0, 0<=R<1, R nondecreasing in V (300 ladders)"

def _check_evanescent(rng) -> tuple[bool, str]:
    worst_amp = 0.0
    for _ in range(2_000):
        s = sample_solution(rng, direction="up", regime="evanescent")
        worst_amp = max(worst_amp, abs(abs(s.A) - 1.0))
        if s.R != 1.0 or s.T != 0.0:
            return False, f"evanescent R,T = {s.R},{s.T}"
    return worst_amp < 1e-14, f"total reflection, max ||A|-1| = {worst_amp:.3e}"

def _check_klein_conventions(rng) -> tuple[bool, str]:
    worst = 0.0
    for _ in range(2_000):
        p = sample_problem(rng, direction="up", regime="klein", convention=MOMENTUM)
        s_m = scattering.solve(p)
        s_g = scattering.solve(
            StepProblem.from_energy(p.m, p.E, p.V, "up", GROUP_VELOCITY)
        )
        if not (s_m.R > 1.0 and s_m.T < 0.0 and 0.0 < s_g.R < 1.0 and 0.0 < s_g.T < 1.0):
            return False, f"convention phenomenology broken at V={p.V}, E={p.E}"
        worst = max(worst, abs((s_m.R - 1.0) - abs(s_m.T)))
    return worst < 1e-12, f"momentum: R>1, T<0, |R-1-|T|| <= {worst:.3e}; group-velocity: R<1"

def _check_dual_route(rng) -> tuple[bool, str]:
    worst = 0.0
    for _ in range(5_000):
        s = sample_solution(rng)
        j_i, j_r, _ = scattering.currents(s)
        worst = max(worst, abs(abs(s.A) ** 2 - abs(j_r) / abs(j_i)))
        if s.regime != "evanescent":
            worst = max(
                worst, abs(((1.0 - s.gamma) / (1.0 + s.gamma)) ** 2 - s.R)
            )
    return worst < 1e-13, f"R agrees across |A|^2, |J_R/J_I| and gamma routes: {worst:.3e}"

def _check_transparency(rng) -> tuple[bool, str]:
    worst = 0.0
    for _ in range(500):
        m = 10.0 ** rng.uniform(-1.0, 1.0)
        E = m * (1.0 + 10.0 ** rng.uniform(-2.0, 1.0))
        direction = "down" if rng.random() < 0.5 else "up"
        s = scattering.solve(StepProblem.from_energy(m, E, 1e-9, direction))
        worst = max(worst, s.R)
    return worst < 1e-12, f"V=1e-9 gives R <= {worst:.3e}"

def _check_guidance_oracle(rng) -> tuple[bool, str]:
    worst = 0.0
    for _ in range(50):
        s = sample_solution(rng)
        for _ in range(200):
            z = rng.uniform(-20.0, 20.0)
            t = rng.uniform(-20.0, 20.0)
            worst = max(
                worst, abs(bohm.velocity_numeric(s, z, t) - bohm.velocity(s, z))
            )
    return worst < 1e-12, f"j/j0 on spinors vs closed form: {worst:.3e}"

def _check_cross_method(rng) -> tuple[bool, str]:
    worst = 0.0
    for state, c in (
        (bohm.PlaneWaveSuperposition(0.5, 0.5, math.sqrt(2.0) - 1.0, 0.0), -10.0),
        (scattering.solve(StepProblem.from_momentum(0.5, 0.5, 1.0, "down")), -20.0),
    ):
        imp = bohm.trajectory_implicit(state, c=c, t0=0.0, t1=50.0, n=501)
        oc = bohm.orbit_constants(state, c)
        f = bohm.VelocityField.from_state(state)
        z0, _ = bohm.solve_orbit_implicit(oc, f.k, f.v_t, 0.0)
        rk = kernels.rk4_on_grid(
            z0, imp.t, 1e-3, f.k, f.E, f.m, f.amp, f.phase,
            f.v_t if f.piecewise else math.nan, f.piecewise,
        )
        worst = max(worst, float(np.max(np.abs(rk[0] - imp.z))))
    return worst < 1e-8, f"implicit vs RK4 positions over [0,50]: {worst:.3e}"

def _check_finite_difference(rng) -> tuple[bool, str]:
    h = 1e-5
    worst = 0.0
    for _ in range(40):
        s = sample_solution(rng, regime="propagating")
        oc = bohm.orbit_constants(s, c=rng.uniform(-5.0, 5.0))
        for _ in range(25):
            t = rng.uniform(0.0, 30.0)
            zm, _ = bohm.solve_orbit_implicit(oc, s.k, s.v_t, t - h)
            zp, _ = bohm.solve_orbit_implicit(oc, s.k, s.v_t, t + h)
            z, _ = bohm.solve_orbit_implicit(oc, s.k, s.v_t, t)
            worst = max(worst, abs((zp - zm) / (2.0 * h) - bohm.velocity(s, z)))
    return worst < 1e-6, f"(z(t+h)-z(t-h))/2h vs v(z(t)), h=1e-5: {worst:.3e}"

def _check_subluminal(rng) -> tuple[bool, str]:
    worst = 0.0
    for _ in range(200):
        s = sample_solution(rng)
        for _ in range(50):
            worst = max(worst, abs(bohm.velocity(s, rng.uniform(-30.0, 30.0))))
    return worst < 1.0, f"max |v| = {worst:.15f} < 1"

def _check_velocity_continuity(rng) -> tuple[bool, str]:
    worst = 0.0
    for _ in range(1_000):
        regime = "propagating" if rng.random() < 0.5 else "klein"
        s = sample_solution(rng, regime=regime)
        left, right = bohm.velocity_at_step(s)
        worst = max(worst, abs(left - right))
    return worst < 1e-10, f"|v(0-) - v(0+)| <= {worst:.3e} over 1e3 solutions"

def _check_downward_flow(rng) -> tuple[bool, str]:
    for _ in range(300):
        s = sample_solution(rng, direction="down")
        a = s.amp
        bound = s.k * (1.0 - a * a) / ((1.0 + a * a) * s.E + 2.0 * s.m * a)
        if bound <= 0.0:
            return False, f"lower bound not positive at V={s.V}"
        zs = np.linspace(-10.0, 10.0, 64)
        if min(bohm.velocity(s, float(z)) for z in zs) < bound * (1.0 - 1e-12):
            return False, f"velocity dips below bound at V={s.V}"
        if not math.isfinite(bohm.orbit_constants(s).t_cross):
            return False, "crossing time not finite"
    return True, "v(z) >= k(1-|A|^2)/((1+|A|^2)E+2m|A|) > 0; crossing in finite time"

def _check_klein_outflow(rng) -> tuple[bool, str]:
    for _ in range(300):
        s = sample_solution(rng, direction="up", regime="klein", convention=MOMENTUM)
        if s.v_t >= 0.0:
            return False, f"v_T = {s.v_t} not negative"
        zs = np.linspace(-10.0, -0.01, 32)
        if max(bohm.velocity(s, float(z)) for z in zs) >= 0.0:
            return False, "leftward flow violated in z < 0"
    return True, "momentum convention: v < 0 in z < 0 and v_T < 0"

def _check_kepler_monotone(rng) -> tuple[bool, str]:
    worst_res = 0.0
    for _ in range(500):
        eps = rng.uniform(0.0, 0.999)
        if 1.0 - eps <= 0.0:
            return False, "slope bound violated"
        mean = rng.uniform(-50.0, 50.0)
        u = kernels.kepler_u(mean, eps)
        if math.isnan(u):
            return False, f"no convergence at eps={eps}, mean={mean}"
        worst_res = max(worst_res, abs(u + eps * math.sin(u) - mean))
    return worst_res < 1e-12, f"residuals <= {worst_res:.3e}; slope >= 1-eps > 0"

def _check_fan_ordering(rng) -> tuple[bool, str]:
    for state in (
        bohm.PlaneWaveSuperposition(0.5, 0.5, math.sqrt(2.0) - 1.0, 0.0),
        scattering.solve(StepProblem.from_momentum(0.5, 0.5, 1.0, "down")),
        scattering.solve(StepProblem.from_energy(1.0, 1.5, 4.0, "up", MOMENTUM)),
    ):
        fan = bohm.trajectory_fan(state, [-4.0, -2.5, -1.0, 0.5, 2.0], 0.0, 30.0, n=120)
        for lo, hi in zip(fan, fan[1:]):
            if not np.all(hi.z > lo.z):
                return False, "fan members cross"
    return True, "fans stay strictly ordered on shared grids"

def _check_csv_determinism(rng) -> tuple[bool, str]:
    p = StepProblem.from_energy(1.0, 1.001, 0.0, "down")
    def render() -> str:
        rows = scattering.sweep(p, "V", 0.0, 1e6, 50, "log")
        table = output.Table(
            columns=["V", "gamma", "R", "T", "boundary"],
            rows=[(r.value, r.gamma, r.R, r.T, r.boundary) for r in rows],
        )
        return output.render_csv(table)
    first, second = render(), render()
    ok = first == second
    back = []
    for line in first.splitlines()[1:]:
        cells = line.split(",")
        back.append(all(
            output.format_real(float(cell)) == cell
            for cell in cells[:4]
        ))
    return ok and all(back), "identical bytes across renders; cells round-trip"


_CHECKS: list[tuple[str, Callable]] = [
    ("spinor-normalization", _check_spinor_normalization),
    ("current-bounded-by-density", _check_current_bound),
    ("wave-continuity-at-step", _check_step_continuity),
    ("reflected-part-linearity", _check_reflected_linearity),
    ("conservation-suite", _check_unitarity),
    ("downward-monotonic-reflection", _check_downward_monotonic),
    ("evanescent-total-reflection", _check_evanescent),
    ("klein-conventions", _check_klein_conventions),
    ("reflection-dual-route", _check_dual_route),
    ("shallow-step-transparency", _check_transparency),
    ("guidance-law-oracle", _check_guidance_oracle),
    ("cross-method-trajectories", _check_cross_method),
    ("velocity-finite-difference", _check_finite_difference),
    ("subluminality", _check_subluminal),
    ("velocity-continuity-at-step", _check_velocity_continuity),
    ("downward-forward-flow", _check_downward_flow),
    ("klein-momentum-outflow", _check_klein_outflow),
    ("kepler-solver-monotone", _check_kepler_monotone),
    ("fan-non-crossing", _check_fan_ordering),
    ("csv-determinism-round-trip", _check_csv_determinism),
]


def run_all(seed: int = 42) -> list[CheckResult]:
    """Run every registered invariant with a seed-derived RNG per check."""
    results = []
    root = np.random.default_rng(seed)
    for name, fn in _CHECKS:
        rng = np.random.default_rng(root.integers(0, 2**63))
        try:
            passed, detail = fn(rng)
        except Exception as exc:  # a crashed check is a failed check
            passed, detail = False, f"raised {type(exc).__name__}: {exc}"
        results.append(CheckResult(name=name, passed=passed, detail=detail))
    return results


def report(results: Iterable[CheckResult], write: Callable[[str], object]) -> bool:
    """Emit one PASS/FAIL line per check plus a summary; True if all passed."""
    results = list(results)
    for r in results:
        write(f"{'PASS' if r.passed else 'FAIL'} {r.name}: {r.detail}\n")
    n_pass = sum(r.passed for r in results)
    write(f"passed {n_pass}/{len(results)} checks (backend={kernels.BACKEND})\n")
    return n_pass == len(results)
