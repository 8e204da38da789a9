"""Concurrence, correlation tensors, Bell-diagonal geometry and orbits."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import boost_map
from .boost_map import ScenarioConfig
from .spin_algebra import I2, PAULI_VEC, SIGMA_YY, check_spin_state, werner_state

# eigenvalues of rho below this are treated as exact zeros when factoring rho = W W^dagger
RANK_TOL = 1e-13
BELL_DIAGONAL_TOL = 1e-10
DEFAULT_GRID = 361

# sigma_i x sigma_j, shape (3, 3, 4, 4)
_SS = np.einsum("iab,jcd->ijacbd", PAULI_VEC, PAULI_VEC).reshape(3, 3, 4, 4)
_S1 = np.einsum("iab,cd->iacbd", PAULI_VEC, I2).reshape(3, 4, 4)
_S2 = np.einsum("ab,icd->iacbd", I2, PAULI_VEC).reshape(3, 4, 4)


def _spin_flip_roots(rhos: np.ndarray) -> np.ndarray:
    """Descending lambda_i for a batch of states, shape (N, 4).

    The lambda_i (square roots of the eigenvalues of rho rho~) are computed as
    singular values of W^T (sy x sy) W with rho = W W^dagger. This avoids taking
    square roots of eigenvalues that should vanish but carry rounding noise.
    """
    herm = 0.5 * (rhos + rhos.conj().transpose(0, 2, 1))
    mu, V = np.linalg.eigh(herm)
    cutoff = RANK_TOL * np.maximum(mu[:, -1:], 1.0)
    amp = np.sqrt(np.where(mu > cutoff, mu, 0.0))
    W = V * amp[:, None, :]
    tau = W.transpose(0, 2, 1) @ SIGMA_YY @ W
    return np.linalg.svd(tau, compute_uv=False)


def concurrence_raw(rho) -> float:
    """lambda_1 - lambda_2 - lambda_3 - lambda_4 without clipping at zero."""
    lam = _spin_flip_roots(np.asarray(rho, dtype=complex)[None])[0]
    return float(lam[0] - lam[1:].sum())


def concurrence(rho) -> float:
    """Two-qubit concurrence max{0, l1 - l2 - l3 - l4}."""
    rho = check_spin_state(rho)
    return max(0.0, concurrence_raw(rho))


def concurrences(rhos, raw: bool = False) -> np.ndarray:
    """Vectorized concurrence for an (N, 4, 4) stack (inputs are not validated)."""
    lam = _spin_flip_roots(np.asarray(rhos, dtype=complex))
    c = lam[:, 0] - lam[:, 1:].sum(axis=1)
    return c if raw else np.maximum(c, 0.0)


def concurrence_eig(rho) -> float:
    """Textbook route: square roots of the eigenvalues of rho (sy x sy) rho* (sy x sy).

    Kept as an independent check; it loses about half the digits when rho is
    rank deficient.
    """
    rho = check_spin_state(rho)
    rho_tilde = SIGMA_YY @ rho.conj() @ SIGMA_YY
    ev = np.linalg.eigvals(rho @ rho_tilde)
    ev = np.where(np.abs(ev.imag) < 1e-10, ev.real, np.abs(ev))
    lam = np.sort(np.sqrt(np.clip(ev, 0.0, None)))[::-1]
    return max(0.0, float(lam[0] - lam[1:].sum()))


@dataclass(frozen=True, eq=False)
class CorrelationTensor:
    """rho = (1/4)(I + r.sigma x I + I x s.sigma + sum t_ij sigma_i x sigma_j)."""

    r: np.ndarray
    s: np.ndarray
    t: np.ndarray

    def to_density(self) -> np.ndarray:
        return 0.25 * (np.eye(4) + np.einsum("i,iab->ab", self.r, _S1)
                       + np.einsum("i,iab->ab", self.s, _S2)
                       + np.einsum("ij,ijab->ab", self.t, _SS))

    @property
    def t_vector(self) -> np.ndarray:
        return np.diag(self.t).copy()

    def is_bell_diagonal(self, tol: float = BELL_DIAGONAL_TOL) -> bool:
        off = self.t - np.diag(np.diag(self.t))
        return max(np.abs(self.r).max(), np.abs(self.s).max(), np.abs(off).max()) <= tol


def correlation_tensor(rho) -> CorrelationTensor:
    rho = check_spin_state(rho)
    r = np.einsum("iab,ba->i", _S1, rho).real
    s = np.einsum("iab,ba->i", _S2, rho).real
    t = np.einsum("ijab,ba->ij", _SS, rho).real
    return CorrelationTensor(r, s, t)


def correlation_arrays(rhos):
    """(r, s, t) for an (N, 4, 4) stack: shapes (N, 3), (N, 3), (N, 3, 3)."""
    rhos = np.asarray(rhos, dtype=complex)
    r = np.einsum("iab,nba->ni", _S1, rhos).real
    s = np.einsum("iab,nba->ni", _S2, rhos).real
    t = np.einsum("ijab,nba->nij", _SS, rhos).real
    return r, s, t


def t_vector(rho) -> np.ndarray:
    """Diagonal correlations (t_xx, t_yy, t_zz)."""
    return correlation_tensor(rho).t_vector


def bell_diagonal_state(t) -> np.ndarray:
    """Bell-diagonal density matrix with correlation diagonal t."""
    return CorrelationTensor(np.zeros(3), np.zeros(3), np.diag(np.asarray(t, dtype=float))).to_density()


def bell_weights(t) -> np.ndarray:
    """Weights of Phi+, Phi-, Psi+, Psi- in the Bell-diagonal state with diagonal t."""
    tx, ty, tz = np.asarray(t, dtype=float)
    return 0.25 * np.array([1 + tx - ty + tz, 1 - tx + ty + tz, 1 + tx + ty - tz, 1 - tx - ty - tz])


def in_octahedron(t, tol: float = 1e-12) -> bool:
    """Separable Bell-diagonal region: |t_xx| + |t_yy| + |t_zz| <= 1."""
    return float(np.abs(np.asarray(t, dtype=float)).sum()) <= 1.0 + tol


def in_tetrahedron(t, tol: float = 1e-12) -> bool:
    return bool(np.all(bell_weights(t) >= -tol))


def bell_violation_possible(t, tol: float = 1e-12) -> bool:
    """True iff |t| > sqrt(3/2), i.e. a Werner state with lam > 1/sqrt(2)."""
    return float(np.linalg.norm(np.asarray(t, dtype=float))) > np.sqrt(1.5) + tol


def default_grid(n: int = DEFAULT_GRID) -> np.ndarray:
    return np.linspace(0.0, np.pi, n)


@dataclass(frozen=True, eq=False)
class Orbit:
    """Channel outputs of one scenario sampled on an increasing omega grid."""

    config: ScenarioConfig
    omegas: np.ndarray
    r: np.ndarray
    s: np.ndarray
    t: np.ndarray
    concurrence: np.ndarray
    states: np.ndarray = field(repr=False)

    @property
    def t_vectors(self) -> np.ndarray:
        return np.diagonal(self.t, axis1=1, axis2=2).copy()

    @property
    def bell_diagonal(self) -> bool:
        off = self.t - np.einsum("nii->ni", self.t)[:, :, None] * np.eye(3)
        return max(np.abs(self.r).max(), np.abs(self.s).max(), np.abs(off).max()) <= BELL_DIAGONAL_TOL

    def __len__(self):
        return len(self.omegas)


def orbit(config: ScenarioConfig, omegas: Optional[np.ndarray] = None, rho=None) -> Orbit:
    """Boosted Werner state (or `rho`) along an omega grid in [0, pi]."""
    omegas = default_grid() if omegas is None else np.asarray(omegas, dtype=float)
    if omegas.ndim != 1 or len(omegas) == 0:
        raise ValueError("omega grid must be a non-empty 1-D array")
    if np.any(np.diff(omegas) <= 0):
        raise ValueError("omega grid must be strictly increasing")
    if omegas[0] < 0.0 or omegas[-1] > np.pi:
        raise ValueError("omega grid must lie in [0, pi]")
    rho = werner_state(config.lam) if rho is None else check_spin_state(rho)
    states = boost_map.channel_outputs(rho, config.family, config.rotation, omegas, config.chi)
    r, s, t = correlation_arrays(states)
    return Orbit(config, omegas, r, s, t, concurrences(states), states)
