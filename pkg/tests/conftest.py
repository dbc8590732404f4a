import math

import pytest

from diracstep import PlaneWaveSuperposition, StepProblem, solve


@pytest.fixture(scope="session")
def d1():
    """Downward reference fixture: m = 0.5, k = 0.5, V = 1."""
    return solve(StepProblem.from_momentum(0.5, 0.5, 1.0, "down"))


@pytest.fixture(scope="session")
def klein_momentum():
    return solve(StepProblem.from_energy(1.0, 1.5, 4.0, "up", "momentum"))


@pytest.fixture(scope="session")
def klein_group():
    return solve(StepProblem.from_energy(1.0, 1.5, 4.0, "up", "group-velocity"))


@pytest.fixture(scope="session")
def evanescent():
    return solve(StepProblem.from_energy(1.0, 1.5, 1.0, "up"))


@pytest.fixture(scope="session")
def canonical():
    """Worked uniform-medium fixture: m = k = 1/2, |A| = sqrt(2) - 1, phi = 0."""
    return PlaneWaveSuperposition(0.5, 0.5, math.sqrt(2.0) - 1.0, 0.0)
