import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from numpy.testing import assert_allclose

from wignerlab import geometry
from wignerlab.boost_map import ScenarioConfig, mixed, same, single
from wignerlab.errors import DomainError
from wignerlab.geometry import (CorrelationTensor, bell_diagonal_state, bell_violation_possible, bell_weights,
                                concurrence, concurrence_eig, correlation_tensor, in_octahedron, in_tetrahedron,
                                t_vector)
from wignerlab.spin_algebra import I4, bell_state, projector, werner_state

from conftest import random_state, random_su2

lams = st.floats(0.0, 1.0)


@pytest.mark.parametrize("kind", ["phi+", "phi-", "psi+", "psi-"])
def test_bell_concurrence(kind):
    assert concurrence(projector(bell_state(kind))) == pytest.approx(1.0, abs=1e-14)


def test_product_and_mixed_concurrence():
    assert concurrence(I4 / 4) == 0.0
    up = np.zeros(4)
    up[0] = 1
    assert concurrence(projector(up)) == pytest.approx(0.0, abs=1e-15)
    assert concurrence(werner_state(1 / 3)) == pytest.approx(0.0, abs=1e-15)


@given(lams)
def test_werner_concurrence(lam):
    assert abs(concurrence(werner_state(lam)) - max(0.0, (3 * lam - 1) / 2)) <= 1e-12


def test_concurrence_rejects_invalid():
    with pytest.raises(DomainError):
        concurrence(np.eye(4))


@pytest.mark.parametrize("rank", [1, 2, 4])
def test_two_concurrence_routes_agree(rank, rng):
    for _ in range(20):
        rho = random_state(rng, rank)
        assert concurrence(rho) == pytest.approx(concurrence_eig(rho), abs=1e-6)


def test_stable_route_on_rank_deficient_outputs():
    # pure Bell states rotated locally: exact value 1, eigenvalue route loses digits
    rng = np.random.default_rng(7)
    for _ in range(50):
        U = np.kron(random_su2(rng), random_su2(rng))
        rho = U @ projector(bell_state("phi+")) @ U.conj().T
        assert concurrence(rho) == pytest.approx(1.0, abs=1e-13)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32 - 1), st.sampled_from([1, 2, 3, 4]))
def test_local_unitary_invariance(seed, rank):
    rng = np.random.default_rng(seed)
    rho = random_state(rng, rank)
    U = np.kron(random_su2(rng), random_su2(rng))
    assert abs(concurrence(U @ rho @ U.conj().T) - concurrence(rho)) <= 1e-10


def test_batched_concurrence(rng):
    rhos = np.stack([random_state(rng, r) for r in (1, 2, 3, 4, 4)])
    assert_allclose(geometry.concurrences(rhos), [concurrence(r) for r in rhos], atol=1e-15)


def test_correlation_tensor_examples():
    ct = correlation_tensor(I4 / 4)
    assert not ct.r.any() and not ct.s.any() and not ct.t.any()
    assert_allclose(t_vector(projector(bell_state("phi+"))), [1, -1, 1], atol=1e-15)
    assert_allclose(t_vector(projector(bell_state("psi-"))), [-1, -1, -1], atol=1e-15)
    assert_allclose(t_vector(projector(bell_state("psi+"))), [1, 1, -1], atol=1e-15)
    assert_allclose(t_vector(projector(bell_state("phi-"))), [-1, 1, 1], atol=1e-15)


@given(lams)
def test_werner_line(lam):
    assert_allclose(t_vector(werner_state(lam)), lam * np.array([1, -1, 1]), atol=1e-12)


def test_density_round_trip(rng):
    rho = random_state(rng)
    ct = correlation_tensor(rho)
    assert_allclose(ct.to_density(), rho, atol=1e-14)
    assert not ct.is_bell_diagonal()
    assert CorrelationTensor(np.zeros(3), np.zeros(3), np.diag([0.2, 0.1, -0.3])).is_bell_diagonal()


def test_bell_weights_vertices():
    assert_allclose(bell_weights([1, -1, 1]), [1, 0, 0, 0])
    assert_allclose(bell_weights([-1, -1, -1]), [0, 0, 0, 1])
    assert_allclose(bell_diagonal_state([1, 1, -1]), projector(bell_state("psi+")), atol=1e-15)


def test_octahedron():
    assert in_octahedron([0, 0, 0])
    assert not in_octahedron([1, -1, 1])
    assert in_octahedron(np.array([1, -1, 1]) / 3)
    assert not in_octahedron(np.array([1, -1, 1]) * (1 / 3 + 1e-9))
    assert in_tetrahedron([0.5, -0.5, 0.5]) and not in_tetrahedron([1, 1, 1])


@settings(max_examples=300)
@given(st.tuples(lams, lams, lams, lams))
def test_octahedron_iff_separable(w):
    w = np.array(w) + 1e-3
    w /= w.sum()
    # invert bell_weights: t from Bell weights
    t = np.array([w[0] - w[1] + w[2] - w[3], -w[0] + w[1] + w[2] - w[3], w[0] + w[1] - w[2] - w[3]])
    C = concurrence(bell_diagonal_state(t))
    if abs(np.abs(t).sum() - 1) > 1e-9:
        assert (C <= 1e-12) == in_octahedron(t)


def test_bell_violation():
    line = np.array([1, -1, 1])
    assert bell_violation_possible(line)
    assert not bell_violation_possible(line / np.sqrt(2))
    assert not bell_violation_possible(0.5 * line)
    assert bell_violation_possible((1 / np.sqrt(2) + 1e-9) * line)


def _bisect(pred, lo, hi, tol=1e-12):
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        lo, hi = (lo, mid) if pred(mid) else (mid, hi)
    return hi


def test_thresholds_by_bisection():
    sep = _bisect(lambda lam: concurrence(werner_state(lam)) > 0, 0.0, 1.0)
    assert sep == pytest.approx(1 / 3, abs=1e-9)
    oct_edge = _bisect(lambda lam: not in_octahedron(t_vector(werner_state(lam)), tol=0.0), 0.0, 1.0)
    assert oct_edge == pytest.approx(1 / 3, abs=1e-9)
    bell = _bisect(lambda lam: bell_violation_possible(t_vector(werner_state(lam)), tol=0.0), 0.0, 1.0)
    assert bell == pytest.approx(1 / np.sqrt(2), abs=1e-9)


def test_orbit_sigma_single_endpoints():
    orb = geometry.orbit(ScenarioConfig("sigma", single("x"), 1.0))
    assert len(orb) == 361
    assert_allclose(orb.t_vectors[0], [1, -1, 1], atol=1e-12)
    assert_allclose(orb.t_vectors[-1], [1, 1, -1], atol=1e-12)
    assert orb.bell_diagonal
    assert orb.concurrence[180] <= 1e-10


def test_orbit_sigma_same():
    w = np.linspace(0, np.pi, 37)
    orb = geometry.orbit(ScenarioConfig("sigma", same("x"), 1.0), w)
    c2 = np.cos(w) ** 2
    assert_allclose(orb.t_vectors, np.stack([np.ones_like(w), -c2, c2], axis=1), atol=1e-12)


def test_orbit_cross_mixed_end():
    orb = geometry.orbit(ScenarioConfig("cross", mixed("x", "y"), 1.0), [0.0, np.pi])
    assert_allclose(orb.t_vectors[-1], [0, 0, 1], atol=1e-12)


def test_orbit_not_bell_diagonal():
    orb = geometry.orbit(ScenarioConfig("phi+", mixed("x", "z"), 1.0), [0.5, 1.0])
    assert not orb.bell_diagonal


@pytest.mark.parametrize("grid", [[], [0.5, 0.2], [-0.1, 1.0], [0.0, 4.0], [[0.1]]])
def test_orbit_grid_validation(grid):
    with pytest.raises(ValueError):
        geometry.orbit(ScenarioConfig("sigma", single("x")), np.array(grid))
