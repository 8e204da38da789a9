import numpy as np
import pytest

from wignerlab import boost_map

LAMBDAS = (1 / 3, 2 / 5, 3 / 5, 4 / 5, 1.0)
SCENARIOS = boost_map.supported_scenarios()


def scenario_id(sc):
    fam, rt = sc
    return f"{fam.value}-{rt.label}"


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def grid():
    return np.linspace(0.0, np.pi, 361)


def random_su2(rng):
    q = rng.normal(size=4)
    q /= np.linalg.norm(q)
    w, x, y, z = q
    return np.array([[w - 1j * z, -y - 1j * x], [y - 1j * x, w + 1j * z]])


def random_state(rng, rank=4):
    G = rng.normal(size=(4, rank)) + 1j * rng.normal(size=(4, rank))
    rho = G @ G.conj().T
    return rho / np.trace(rho).real
