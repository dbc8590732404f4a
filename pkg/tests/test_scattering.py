import math

import numpy as np
import pytest

from diracstep import (
    BoundaryError,
    DomainError,
    NotApplicableError,
    StepProblem,
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
from diracstep.selfcheck import sample_problem, sample_solution


class TestProblemValidation:
    def test_energy_momentum_consistency(self):
        p = StepProblem.from_momentum(0.5, 0.5, 1.0)
        assert p.E == pytest.approx(math.sqrt(0.5), abs=1e-16)
        p2 = StepProblem.from_energy(0.5, p.E, 1.0)
        assert p2.k == pytest.approx(0.5, abs=1e-15)

    def test_rejects_subthreshold_energy(self):
        with pytest.raises(DomainError, match="energy must exceed mass"):
            StepProblem.from_energy(1.0, 0.5, 1.0)
        with pytest.raises(DomainError):
            StepProblem.from_energy(1.0, 1.0, 1.0)

    def test_rejects_bad_inputs(self):
        with pytest.raises(DomainError):
            StepProblem.from_momentum(-1.0, 0.5, 1.0)
        with pytest.raises(DomainError):
            StepProblem.from_momentum(1.0, 0.0, 1.0)
        with pytest.raises(DomainError):
            StepProblem.from_momentum(1.0, 0.5, -2.0)

    def test_signed_potential(self):
        assert StepProblem.from_momentum(1.0, 1.0, 2.0, "down").U == -2.0
        assert StepProblem.from_momentum(1.0, 1.0, 2.0, "up").U == 2.0


class TestRegimes:
    def test_downward_always_propagating(self):
        for v in (0.0, 1e-6, 1.0, 1e6):
            assert classify_regime(StepProblem.from_energy(1.0, 1.5, v, "down")) == "propagating"

    def test_upward_regimes(self):
        assert classify_regime(StepProblem.from_energy(1.0, 1.5, 0.25, "up")) == "propagating"
        assert classify_regime(StepProblem.from_energy(1.0, 1.5, 1.0, "up")) == "evanescent"
        assert classify_regime(StepProblem.from_energy(1.0, 1.5, 4.0, "up")) == "klein"

    def test_exact_boundaries_rejected(self):
        with pytest.raises(BoundaryError):
            classify_regime(StepProblem.from_energy(1.0, 1.5, 0.5, "up"))
        with pytest.raises(BoundaryError):
            classify_regime(StepProblem.from_energy(1.0, 1.5, 2.5, "up"))


class TestWavenumbers:
    def test_downward_d1(self):
        k, q, regime = wavenumbers(StepProblem.from_momentum(0.5, 0.5, 1.0, "down"))
        assert k == 0.5
        assert regime == "propagating"
        assert q.imag == 0.0
        assert q.real == pytest.approx(1.6322418, abs=1e-7)
        e = math.sqrt(0.5)
        assert q.real == pytest.approx(math.sqrt((e + 1.0) ** 2 - 0.25), abs=1e-15)

    def test_evanescent_kappa(self):
        _, q, regime = wavenumbers(StepProblem.from_energy(1.0, 1.5, 1.0, "up"))
        assert regime == "evanescent"
        assert q.real == 0.0
        assert q.imag == pytest.approx(math.sqrt(3.0) / 2.0, abs=1e-15)
        assert q.imag == pytest.approx(0.8660254, abs=1e-7)

    def test_klein_q_signs(self):
        mag = math.sqrt(5.25)
        _, q, regime = wavenumbers(StepProblem.from_energy(1.0, 1.5, 4.0, "up", "momentum"))
        assert regime == "klein" and q.real == pytest.approx(mag, abs=1e-15)
        _, q, _ = wavenumbers(StepProblem.from_energy(1.0, 1.5, 4.0, "up", "group-velocity"))
        assert q.real == pytest.approx(-mag, abs=1e-15)
        assert mag == pytest.approx(2.2912878, abs=1e-7)


class TestGamma:
    def test_transparent_step(self):
        for direction in ("down", "up"):
            assert gamma_factor(
                StepProblem.from_momentum(0.5, 0.5, 0.0, direction)
            ) == pytest.approx(1.0, abs=1e-15)

    def test_d1_matches_radical(self):
        p = StepProblem.from_momentum(0.5, 0.5, 1.0, "down")
        g = gamma_factor(p)
        radical = math.sqrt(
            (p.E + p.V - p.m) * (p.E + p.m) / ((p.E - p.m) * (p.E + p.V + p.m))
        )
        assert g == pytest.approx(radical, abs=1e-14)
        assert g == pytest.approx(1.7854056, abs=1e-6)

    def test_klein_gamma_both_signs(self):
        mag = math.sqrt(35.0 / 3.0)
        g_m = gamma_factor(StepProblem.from_energy(1.0, 1.5, 4.0, "up", "momentum"))
        g_g = gamma_factor(StepProblem.from_energy(1.0, 1.5, 4.0, "up", "group-velocity"))
        assert g_m == pytest.approx(-mag, abs=1e-13)
        assert g_g == pytest.approx(mag, abs=1e-13)

    def test_not_applicable_in_evanescence(self):
        with pytest.raises(NotApplicableError):
            gamma_factor(StepProblem.from_energy(1.0, 1.5, 1.0, "up"))


class TestAmplitudes:
    def test_transparent(self):
        A, C = match_amplitudes(StepProblem.from_momentum(1.0, 2.0, 0.0))
        assert A == 0 and C == 1

    def test_d1(self, d1):
        assert d1.A.real == pytest.approx(-0.2819717, abs=1e-7)
        assert d1.A.imag == 0.0
        assert d1.C.real == pytest.approx(0.7180283, abs=1e-7)
        assert d1.amp == pytest.approx(0.2819717, abs=1e-7)
        assert d1.phase == pytest.approx(math.pi)

    def test_klein_momentum_overreflection(self, klein_momentum):
        # |A| > 1: the reflected beam exceeds the incident one
        assert klein_momentum.A.real < -1.0
        assert klein_momentum.A.real == pytest.approx(-1.8279344228, abs=1e-9)

    def test_evanescent_unimodular(self, evanescent):
        gt = math.sqrt(3.0) / 2.0 * 2.5 / (math.sqrt(1.25) * 1.5)
        expect = (1.0 - 1j * gt) / (1.0 + 1j * gt)
        assert abs(evanescent.A - expect) < 1e-15
        assert abs(abs(evanescent.A) - 1.0) < 1e-15

    def test_c_equals_one_plus_a_everywhere(self):
        rng = np.random.default_rng(3)
        for _ in range(300):
            s = sample_solution(rng)
            assert s.C == 1.0 + s.A


class TestCurrents:
    def test_d1_triple(self, d1):
        j_i, j_r, j_t = currents(d1)
        assert j_i == pytest.approx(0.8284271, abs=1e-7)
        assert j_i == pytest.approx(2 * 0.5 / (d1.E + 0.5), abs=1e-15)
        assert j_r == pytest.approx(-j_i * d1.R, abs=1e-15)
        assert j_i + j_r == pytest.approx(j_t, abs=1e-14)

    def test_transparent(self):
        s = solve(StepProblem.from_momentum(0.5, 0.5, 0.0))
        j_i, j_r, j_t = currents(s)
        assert j_r == 0.0 and j_t == pytest.approx(j_i, abs=1e-16)

    def test_evanescent_total_reflection(self, evanescent):
        j_i, j_r, j_t = currents(evanescent)
        assert j_t == 0.0
        assert j_r == pytest.approx(-j_i, abs=1e-15)


class TestCoefficients:
    def test_d1(self, d1):
        R, T = coefficients(d1)
        assert R == pytest.approx(0.0795080, abs=1e-7)
        assert T == pytest.approx(0.9204920, abs=1e-7)
        assert R + T == pytest.approx(1.0, abs=1e-15)

    def test_transparent(self):
        s = solve(StepProblem.from_momentum(1.0, 1.0, 0.0))
        assert s.R == 0.0 and s.T == pytest.approx(1.0, abs=1e-15)

    def test_klein_conventions(self, klein_momentum, klein_group):
        # Formula-derived oracles: gamma = -+sqrt(35/3)
        g = math.sqrt(35.0 / 3.0)
        r_mom = ((1.0 + g) / (1.0 - g)) ** 2
        assert klein_momentum.R == pytest.approx(r_mom, abs=1e-12)
        assert klein_momentum.T == pytest.approx(1.0 - r_mom, abs=1e-12)
        assert klein_group.R == pytest.approx(1.0 / r_mom, abs=1e-13)
        assert 0.0 < klein_group.T < 1.0

    def test_transmission_matches_gamma_form(self):
        rng = np.random.default_rng(5)
        for _ in range(200):
            s = sample_solution(rng)
            if s.regime == "evanescent":
                continue
            assert s.T == pytest.approx(
                4.0 * s.gamma / (1.0 + s.gamma) ** 2, abs=1e-12
            )


class TestAsymptotics:
    def test_massless_limit(self):
        assert asymptotic_gamma(0.0, 2.0) == 1.0

    def test_low_energy(self):
        # rel tolerance: the binary representation of 1.001 shifts E - m
        # by ~1e-16, which the ratio amplifies
        g = asymptotic_gamma(1.0, 1.001)
        assert g == pytest.approx(math.sqrt(2001.0), rel=1e-12)
        assert g == pytest.approx(44.732538, abs=1e-6)
        assert ((g - 1) / (g + 1)) ** 2 == pytest.approx(0.914447, abs=1e-6)

    def test_moderate_energy(self):
        g = asymptotic_gamma(1.0, 10.0)
        assert g == pytest.approx(1.1055416, abs=1e-7)
        assert ((g - 1) / (g + 1)) ** 2 == pytest.approx(0.0025126, abs=1e-6)

    def test_domain(self):
        with pytest.raises(DomainError):
            asymptotic_gamma(1.0, 0.9)


class TestSweep:
    def test_grid_contract(self):
        p = StepProblem.from_energy(1.0, 1.001, 0.0, "down")
        rows = sweep(p, "V", 0.0, 1e6, 100, "log")
        assert len(rows) == 100
        assert rows[0].value == 0.0
        assert rows[-1].value == 1e6
        assert rows[0].R == 0.0 and rows[0].T == pytest.approx(1.0, abs=1e-15)

    def test_monotone_reflection_and_limit(self):
        p = StepProblem.from_energy(1.0, 1.001, 0.0, "down")
        rows = sweep(p, "V", 0.0, 1e6, 100, "log")
        rs = [r.R for r in rows]
        assert all(b >= a - 1e-15 for a, b in zip(rs, rs[1:]))
        g_inf = asymptotic_gamma(1.0, 1.001)
        assert rs[-1] == pytest.approx(((g_inf - 1) / (g_inf + 1)) ** 2, abs=1e-3)

    def test_boundary_rows_flagged_not_fatal(self):
        p = StepProblem.from_energy(1.0, 1.5, 0.0, "up")
        rows = sweep(p, "V", 0.0, 5.0, 11, "linear")
        flagged = [r.value for r in rows if r.boundary]
        assert flagged == [0.5, 2.5]  # V = E - m and V = E + m exactly
        assert len(rows) == 11

    def test_energy_axis(self):
        p = StepProblem.from_energy(1.0, 2.0, 3.0, "down")
        rows = sweep(p, "E", 1.5, 5.0, 8, "linear")
        assert [r.boundary for r in rows] == [False] * 8
        direct = solve(StepProblem.from_energy(1.0, 1.5, 3.0, "down"))
        assert rows[0].R == pytest.approx(direct.R, abs=1e-15)

    def test_bad_grids(self):
        p = StepProblem.from_energy(1.0, 2.0, 0.0)
        with pytest.raises(DomainError):
            sweep(p, "V", 1.0, 0.0, 5)
        with pytest.raises(DomainError):
            sweep(p, "V", 0.0, 1.0, 1)
        with pytest.raises(DomainError):
            sweep(p, "V", -1.0, 1.0, 5, "log")


class TestNonRelativistic:
    def test_direction_independence(self):
        r_down, t_down = nonrel_coefficients(1.0, 1.0, 3.0, "down")
        r_up, t_up = nonrel_coefficients(1.0, 4.0, 3.0, "up")
        assert r_down == pytest.approx(1.0 / 9.0, abs=1e-15)
        assert r_up == pytest.approx(1.0 / 9.0, abs=1e-15)
        assert t_down == pytest.approx(8.0 / 9.0, abs=1e-15)

    def test_transparent(self):
        assert nonrel_coefficients(1.0, 2.0, 0.0, "down") == (0.0, 1.0)

    def test_total_reflection_above_barrier(self):
        assert nonrel_coefficients(1.0, 1.0, 2.0, "up") == (1.0, 0.0)

    def test_domain(self):
        with pytest.raises(DomainError):
            nonrel_coefficients(1.0, 0.0, 1.0, "down")


class TestInvariants:
    def test_conservation_panel(self):
        rng = np.random.default_rng(17)
        for _ in range(2000):
            s = sample_solution(rng)
            j_i, j_r, j_t = currents(s)
            assert abs(s.R + s.T - 1.0) < 1e-12
            assert abs(j_i + j_r - j_t) / abs(j_i) < 1e-12
            assert s.C == 1.0 + s.A
            assert continuity_residual(s) < 1e-12

    def test_downward_structure(self):
        rng = np.random.default_rng(23)
        for _ in range(500):
            s = sample_solution(rng, direction="down")
            assert s.gamma >= 1.0
            assert s.A.imag == 0.0 and s.A.real <= 0.0
            assert 0.0 <= s.R < 1.0

    def test_evanescent_structure(self):
        rng = np.random.default_rng(29)
        for _ in range(500):
            s = sample_solution(rng, direction="up", regime="evanescent")
            assert abs(abs(s.A) - 1.0) < 1e-14
            assert s.R == 1.0 and s.T == 0.0

    def test_klein_structure(self):
        rng = np.random.default_rng(31)
        for _ in range(500):
            p = sample_problem(rng, direction="up", regime="klein", convention="momentum")
            s = solve(p)
            assert s.R > 1.0 and s.T < 0.0
            assert abs((s.R - 1.0) - abs(s.T)) < 1e-12
            g = solve(StepProblem.from_energy(p.m, p.E, p.V, "up", "group-velocity"))
            assert 0.0 < g.R < 1.0

    def test_dual_route_reflection(self):
        rng = np.random.default_rng(37)
        for _ in range(500):
            s = sample_solution(rng)
            j_i, j_r, _ = currents(s)
            assert abs(abs(s.A) ** 2 - abs(j_r) / abs(j_i)) < 1e-13
            if s.regime != "evanescent":
                assert abs(((1 - s.gamma) / (1 + s.gamma)) ** 2 - abs(s.A) ** 2) < 1e-13

    def test_shallow_step_transparency(self):
        for direction in ("down", "up"):
            s = solve(StepProblem.from_energy(1.0, 1.7, 1e-9, direction))
            assert s.R < 1e-12

    def test_continuity_residual_exact_cases(self, d1, klein_momentum, klein_group):
        assert continuity_residual(solve(StepProblem.from_momentum(0.5, 0.5, 0.0))) == 0.0
        assert continuity_residual(d1) < 1e-12
        assert continuity_residual(klein_momentum) < 1e-12
        assert continuity_residual(klein_group) < 1e-12
