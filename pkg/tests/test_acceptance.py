"""Acceptance suite: one test per criterion, one printed line per result.

Expected values are recomputed here from the closed forms in 50-digit
arithmetic (mpmath) rather than trusted from any rounded rendering; run
with -s to see the per-criterion lines.
"""

import hashlib
import math
import time

import mpmath as mp
import numpy as np

import diracstep as ds
from diracstep.cli import run_cli
from diracstep.selfcheck import conservation_errors, sample_solution

mp.mp.dps = 50


def _report(name: str, ok: bool, detail: str) -> None:
    print(f"{'PASS' if ok else 'FAIL'} {name}: {detail}")
    assert ok, f"{name}: {detail}"


def _exact_matching(m, E, V, sign_u, sign_q=1):
    """Closed-form gamma, A, C, R, T in extended precision.

    sign_u: -1 downward, +1 upward.  sign_q: transmitted momentum sign
    (Klein zone only).
    """
    m, E, V = mp.mpf(m), mp.mpf(E), mp.mpf(V)
    k = mp.sqrt(E * E - m * m)
    w = E - sign_u * V
    q = sign_q * mp.sqrt(w * w - m * m)
    gamma = q * (E + m) / (k * (w + m))
    A = (1 - gamma) / (1 + gamma)
    C = 1 + A
    R = A * A
    T = 4 * gamma / (1 + gamma) ** 2
    return gamma, A, C, R, T


def test_criterion_1_downward_fixture():
    s = ds.solve(ds.StepProblem.from_momentum(0.5, 0.5, 1.0, "down"))
    gamma, A, C, R, T = _exact_matching("0.5", mp.sqrt(mp.mpf("0.5")), 1, -1)
    errs = [
        abs(s.gamma - float(gamma)),
        abs(s.A.real - float(A)),
        abs(s.C.real - float(C)),
        abs(s.R - float(R)),
        abs(s.T - float(T)),
    ]
    ok = max(errs) < 1e-6 and abs(s.R + s.T - 1.0) < 1e-12
    _report(
        "criterion 1 (downward fixture D1)",
        ok,
        f"max closed-form deviation {max(errs):.2e}, |R+T-1| = {abs(s.R + s.T - 1.0):.2e}",
    )


def test_criterion_2_conservation_suite():
    start = time.perf_counter()
    worst = conservation_errors(seed=42, n=100_000)
    elapsed = time.perf_counter() - start
    ok = (
        worst["rt"] < 1e-12
        and worst["flux"] < 1e-12
        and worst["continuity"] < 1e-12
        and worst["c1a"] <= 1e-15
        and elapsed < 10.0
    )
    _report(
        "criterion 2 (conservation over 1e5 problems)",
        ok,
        "|R+T-1|<={rt:.1e} flux<={flux:.1e} continuity<={continuity:.1e} "
        "|C-1-A|<={c1a:.1e}".format(**worst) + f" in {elapsed:.1f}s",
    )


def test_criterion_3_canonical_orbit(canonical):
    oc = ds.orbit_constants(canonical, c=0.0)
    two_pi = 2.0 * math.pi
    z_imp, _ = ds.solve_orbit_implicit(oc, canonical.k, None, two_pi)
    z_rk4 = ds.integrate_rk4(canonical, 0.0, 0.0, two_pi, dt=1e-3).z[-1]
    vel_errs = [
        abs(ds.velocity(canonical, 0.0) - 1.0 / 3.0),
        abs(ds.velocity(canonical, math.pi / 2.0) - 0.5),
        abs(ds.velocity(canonical, math.pi) - 1.0),
    ]
    ok = (
        abs(oc.eps - 0.5) < 1e-14
        and abs(oc.omega - 0.5) < 1e-14
        and abs(z_imp - math.pi) < 1e-10
        and abs(z_rk4 - math.pi) < 1e-8
        and max(vel_errs) < 1e-12
    )
    _report(
        "criterion 3 (canonical orbit)",
        ok,
        f"eps-1/2={oc.eps - 0.5:.1e} omega-1/2={oc.omega - 0.5:.1e} "
        f"z_imp-pi={z_imp - math.pi:.1e} z_rk4-pi={z_rk4 - math.pi:.1e} "
        f"max vel err={max(vel_errs):.1e}",
    )


def test_criterion_4_guidance_oracle():
    rng = np.random.default_rng(4242)
    start = time.perf_counter()
    worst = 0.0
    for _ in range(100):
        s = sample_solution(rng)
        zs = rng.uniform(-25.0, 25.0, size=1000)
        ts = rng.uniform(-25.0, 25.0, size=1000)
        for z, t in zip(zs, ts):
            worst = max(
                worst,
                abs(ds.velocity_numeric(s, float(z), float(t)) - ds.velocity(s, float(z))),
            )
    elapsed = time.perf_counter() - start
    ok = worst < 1e-12 and elapsed < 5.0
    _report(
        "criterion 4 (guidance-law oracle, 100 x 1e3 points)",
        ok,
        f"max |v_numeric - v_closed| = {worst:.2e} in {elapsed:.1f}s",
    )


def test_criterion_5_velocity_continuity(d1):
    rng = np.random.default_rng(55)
    worst = 0.0
    for _ in range(1000):
        regime = "propagating" if rng.random() < 0.5 else "klein"
        s = sample_solution(rng, regime=regime)
        left, right = ds.velocity_at_step(s)
        worst = max(worst, abs(left - right))
    left, right = ds.velocity_at_step(d1)
    vt_exact = float(
        mp.sqrt((mp.sqrt(mp.mpf("0.5")) + 1) ** 2 - mp.mpf("0.25"))
        / (mp.sqrt(mp.mpf("0.5")) + 1)
    )
    ok = (
        worst < 1e-10
        and abs(left - right) < 1e-10
        and abs(left - 0.9561451) < 1e-6
        and abs(left - vt_exact) < 1e-12
    )
    _report(
        "criterion 5 (velocity continuity at z=0)",
        ok,
        f"max |v(0-)-v(0+)| = {worst:.2e} over 1e3 solutions; "
        f"D1 v(0) = {left:.7f} (0.9561451 +- 1e-6)",
    )


def test_criterion_6_asymptotics():
    g_low = ds.asymptotic_gamma(1.0, 1.001)
    r_low = ((g_low - 1.0) / (g_low + 1.0)) ** 2
    s_deep = ds.solve(ds.StepProblem.from_energy(1.0, 1.001, 1e6, "down"))
    g_mod = ds.asymptotic_gamma(1.0, 10.0)
    r_mod = ((g_mod - 1.0) / (g_mod + 1.0)) ** 2
    s_shallow = ds.solve(ds.StepProblem.from_energy(1.0, 1.7, 1e-9, "down"))
    g_txt = ds.asymptotic_gamma(1.0, 1.01)
    r_txt = ((g_txt - 1.0) / (g_txt + 1.0)) ** 2
    ok = (
        abs(s_deep.R - r_low) < 1e-3
        and abs(r_low - 0.914449) < 1e-3
        and abs(r_mod - 0.0025126) < 1e-6
        and s_shallow.R < 1e-12
        and abs(r_txt - 0.7538) < 1e-3
    )
    _report(
        "criterion 6 (deep/shallow step limits)",
        ok,
        f"R(V=1e6; E=1.001) = {s_deep.R:.6f} vs limit {r_low:.6f}; "
        f"R_inf(E=10) = {r_mod:.7f}; R(V=1e-9) = {s_shallow.R:.1e}",
    )
    print(
        "      note: the E=1.01 deep-step limit derived from the closed "
        f"forms is {r_txt:.4f}; the figure 0.979 quoted in prose is not "
        "reproducible from them."
    )


def test_criterion_7_monotone_sweep():
    p = ds.StepProblem.from_energy(1.0, 1.001, 0.0, "down")
    rows = ds.sweep(p, "V", 0.0, 1e6, 100, "log")
    rs = [r.R for r in rows]
    ok = (
        len(rows) == 100
        and not any(r.boundary for r in rows)
        and all(b >= a - 1e-15 for a, b in zip(rs, rs[1:]))
    )
    _report(
        "criterion 7 (R nondecreasing along 100-point log sweep)",
        ok,
        f"R spans {rs[0]:.3f} -> {rs[-1]:.6f} without decreasing",
    )


def test_criterion_8_klein_phenomenology(klein_momentum, klein_group):
    _, _, _, R_m, T_m = _exact_matching(1, "1.5", 4, +1, sign_q=+1)
    _, _, _, R_g, T_g = _exact_matching(1, "1.5", 4, +1, sign_q=-1)
    errs = [
        abs(klein_momentum.R - float(R_m)),
        abs(klein_momentum.T - float(T_m)),
        abs(klein_group.R - float(R_g)),
    ]
    v_neg = all(
        ds.velocity(klein_momentum, float(z)) < 0.0 for z in np.linspace(-20.0, 20.0, 81)
    )
    ok = (
        max(errs) < 1e-6
        and v_neg
        and klein_momentum.v_t < 0.0
        and 0.0 < klein_group.T < 1.0
        and klein_group.R < 1.0
        and ds.continuity_residual(klein_momentum) < 1e-12
        and ds.continuity_residual(klein_group) < 1e-12
    )
    _report(
        "criterion 8 (Klein paradox conventions)",
        ok,
        f"momentum R = {klein_momentum.R:.7f}, T = {klein_momentum.T:.7f}, "
        f"v < 0 everywhere: {v_neg}; group-velocity R = {klein_group.R:.7f}",
    )
    print(
        "      note: the unified-gamma closed forms give R_momentum = "
        f"{float(R_m):.7f} and R_group = {float(R_g):.7f}; renderings "
        "3.3413654 / 0.2992776 are off those by ~2e-5 and are superseded "
        "by the formula-derived values above."
    )


def test_criterion_9_nonrelativistic_comparator():
    r_down, _ = ds.nonrel_coefficients(1.0, 1.0, 3.0, "down")
    r_up, _ = ds.nonrel_coefficients(1.0, 4.0, 3.0, "up")
    ok = abs(r_down - 1.0 / 9.0) < 1e-14 and abs(r_up - 1.0 / 9.0) < 1e-14
    _report(
        "criterion 9 (Schroedinger step direction independence)",
        ok,
        f"R_down = {r_down:.16f}, R_up = {r_up:.16f}, both 1/9",
    )


def test_criterion_10_trajectory_fans(d1, canonical):
    start = time.perf_counter()
    offsets = list(np.linspace(-25.0, -4.0, 10))
    fan = ds.trajectory_fan(d1, offsets, 0.0, 50.0, n=201)
    ordered = all(np.all(hi.z > lo.z) for lo, hi in zip(fan, fan[1:]))
    all_pass = all(t.crossed and t.z[-1] > 0.0 for t in fan)
    slope_ok = True
    for t in fan:
        tail = t.z > 0.1
        if tail.sum() >= 2:
            slopes = np.diff(t.z[tail]) / np.diff(t.t[tail])
            slope_ok &= bool(np.max(np.abs(slopes - d1.v_t)) < 1e-10)
    fan_fx = ds.trajectory_fan(canonical, list(np.linspace(-9.0, 0.0, 10)), 0.0, 30.0, n=201)
    ordered_fx = all(np.all(hi.z > lo.z) for lo, hi in zip(fan_fx, fan_fx[1:]))
    elapsed = time.perf_counter() - start
    ok = ordered and all_pass and slope_ok and ordered_fx and elapsed < 5.0
    _report(
        "criterion 10 (fans: non-crossing, all pass, terminal slope)",
        ok,
        f"10 downward members cross and settle on v_T = {d1.v_t:.7f}; "
        f"non-crossing holds; {elapsed:.1f}s",
    )


def test_criterion_11_cli_determinism(tmp_path, capsys):
    code = run_cli(["check", "--seed", "42"])
    out = capsys.readouterr().out
    assert "passed" in out
    digests = []
    for tag in ("a", "b"):
        path = tmp_path / f"{tag}.csv"
        assert run_cli([
            "sweep", "--mass", "1", "--energy", "1.001", "--axis", "V",
            "--lo", "0", "--hi", "1e6", "--n", "100", "--scale", "log",
            "--out", str(path),
        ]) == 0
        digests.append(hashlib.sha256(path.read_bytes()).hexdigest())
    ok = code == 0 and digests[0] == digests[1]
    _report(
        "criterion 11 (check exits 0; byte-identical CSV)",
        ok,
        f"check exit {code}; sweep sha256 {digests[0][:16]}... twice",
    )
