import pytest

from glhs.simulate import SimConfig, simulate


@pytest.fixture(scope="session")
def sim_t1_d256():
    return simulate(SimConfig(t=-1.0, dim=256, steps=64, reps=50, seed=2024))


@pytest.fixture(scope="session")
def sim_t1_d64():
    return simulate(SimConfig(t=-1.0, dim=64, steps=64, reps=50, seed=2024))


@pytest.fixture(scope="session")
def sim_t1_d16():
    return simulate(SimConfig(t=-1.0, dim=16, steps=64, reps=50, seed=2024))
