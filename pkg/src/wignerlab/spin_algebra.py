"""Dense 2x2 / 4x4 complex linear algebra for two spin-1/2 particles.

Basis ordering is |00>, |01>, |10>, |11> with |0> = spin up along z; the first
tensor factor is particle 1.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError

I2 = np.eye(2, dtype=complex)
I4 = np.eye(4, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULI = {"x": SIGMA_X, "y": SIGMA_Y, "z": SIGMA_Z}
PAULI_VEC = np.stack([SIGMA_X, SIGMA_Y, SIGMA_Z])
SIGMA_YY = np.kron(SIGMA_Y, SIGMA_Y)

AXES = ("x", "y", "z")
AXIS_VECTORS = {"x": np.array([1.0, 0.0, 0.0]), "y": np.array([0.0, 1.0, 0.0]), "z": np.array([0.0, 0.0, 1.0])}

STATE_TOL = 1e-10


def axis_vector(axis) -> np.ndarray:
    """Accept 'x'/'y'/'z' or a 3-vector and return a float array."""
    if isinstance(axis, str):
        try:
            return AXIS_VECTORS[axis.lower()].copy()
        except KeyError:
            raise DomainError(f"unknown axis {axis!r}") from None
    return np.asarray(axis, dtype=float)


def su2_matrix(n, omega) -> np.ndarray:
    """exp(-i omega n.sigma / 2); `omega` may be an array, giving shape (..., 2, 2)."""
    n = axis_vector(n)
    if n.shape != (3,) or abs(np.linalg.norm(n) - 1.0) > 1e-9:
        raise DomainError("rotation axis must be a unit 3-vector")
    half = 0.5 * np.asarray(omega, dtype=float)
    ns = np.einsum("i,ijk->jk", n, PAULI_VEC)
    return np.cos(half)[..., None, None] * I2 - 1j * np.sin(half)[..., None, None] * ns


@dataclass(frozen=True, eq=False)
class SU2Rotation:
    """Axis-angle SU(2) element acting on one spin."""

    axis: tuple
    angle: float
    matrix: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        n = axis_vector(self.axis)
        object.__setattr__(self, "axis", tuple(float(x) for x in n))
        object.__setattr__(self, "matrix", su2_matrix(n, float(self.angle)))

    @classmethod
    def identity(cls) -> "SU2Rotation":
        return cls((0.0, 0.0, 1.0), 0.0)

    def inverse(self) -> "SU2Rotation":
        return SU2Rotation(self.axis, -self.angle)

    def __matmul__(self, other):
        if isinstance(other, SU2Rotation):
            return self.matrix @ other.matrix
        return self.matrix @ other


def su2_rotation(n, omega: float) -> SU2Rotation:
    return SU2Rotation(n, omega)


def su2_from_so3(R) -> np.ndarray:
    """One of the two SU(2) preimages of a 3x3 rotation (sign is irrelevant under conjugation)."""
    R = np.asarray(R, dtype=float)
    w = np.sqrt(max(0.0, 1.0 + np.trace(R))) / 2.0
    if w > 1e-6:
        x = (R[2, 1] - R[1, 2]) / (4 * w)
        y = (R[0, 2] - R[2, 0]) / (4 * w)
        z = (R[1, 0] - R[0, 1]) / (4 * w)
    else:
        # angle near pi: read the axis off the symmetric part
        i = int(np.argmax(np.diag(R)))
        j, k = (i + 1) % 3, (i + 2) % 3
        q = np.empty(3)
        q[i] = np.sqrt(max(0.0, 1.0 + R[i, i] - R[j, j] - R[k, k])) / 2.0
        q[j] = (R[j, i] + R[i, j]) / (4 * q[i])
        q[k] = (R[k, i] + R[i, k]) / (4 * q[i])
        w = (R[k, j] - R[j, k]) / (4 * q[i])
        x, y, z = q
    # q = (w, x, y, z) is the unit quaternion; SU(2) element is w I - i (x sx + y sy + z sz)
    return w * I2 - 1j * (x * SIGMA_X + y * SIGMA_Y + z * SIGMA_Z)


def so3_from_su2(U) -> np.ndarray:
    """Rotation O with U sigma_j U^dagger = sum_i O_ij sigma_i."""
    U = np.asarray(U, dtype=complex)
    return np.array([[0.5 * np.trace(PAULI_VEC[i] @ U @ PAULI_VEC[j] @ U.conj().T).real
                      for j in range(3)] for i in range(3)])


_BELL = {
    "phi+": np.array([1, 0, 0, 1], dtype=complex) / np.sqrt(2),
    "phi-": np.array([1, 0, 0, -1], dtype=complex) / np.sqrt(2),
    "psi+": np.array([0, 1, 1, 0], dtype=complex) / np.sqrt(2),
    "psi-": np.array([0, 1, -1, 0], dtype=complex) / np.sqrt(2),
}
BELL_KINDS = tuple(_BELL)


def bell_state(kind: str = "phi+") -> np.ndarray:
    """Bell vector in the computational basis: 'phi+', 'phi-', 'psi+' or 'psi-'."""
    try:
        return _BELL[kind.lower()].copy()
    except KeyError:
        raise DomainError(f"unknown Bell state {kind!r}; expected one of {BELL_KINDS}") from None


def projector(psi) -> np.ndarray:
    psi = np.asarray(psi, dtype=complex)
    return np.outer(psi, psi.conj())


def bell_projector(kind: str = "phi+") -> np.ndarray:
    """|B><B| built from integer vectors, so every entry is exactly 0 or +-1/2."""
    v = np.rint(bell_state(kind) * np.sqrt(2)).real
    return 0.5 * np.outer(v, v).astype(complex)


def werner_state(lam: float, bell: str = "phi+") -> np.ndarray:
    """lam |B><B| + (1 - lam) I/4 with B the chosen Bell state (default Phi+)."""
    lam = float(lam)
    if not (0.0 <= lam <= 1.0):
        raise DomainError(f"Werner parameter must lie in [0, 1], got {lam!r}")
    return lam * bell_projector(bell) + (1.0 - lam) * I4 / 4.0


def tensor2(A, B) -> np.ndarray:
    return np.kron(A, B)


def is_unitary(U, tol: float = STATE_TOL) -> bool:
    U = np.asarray(U)
    return U.shape[-1] == U.shape[-2] and np.abs(U.conj().T @ U - np.eye(U.shape[-1])).max() <= tol


def conjugate_by(rho, U) -> np.ndarray:
    """U rho U^dagger for a unitary U."""
    if not is_unitary(U):
        raise DomainError("conjugating matrix is not unitary")
    U = np.asarray(U, dtype=complex)
    return U @ np.asarray(rho, dtype=complex) @ U.conj().T


def check_spin_state(rho, tol: float = STATE_TOL) -> np.ndarray:
    """Raise DomainError unless rho is a 4x4 Hermitian, unit-trace, PSD matrix."""
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (4, 4):
        raise DomainError(f"spin state must be 4x4, got {rho.shape}")
    if np.abs(rho - rho.conj().T).max() > tol:
        raise DomainError("spin state is not Hermitian")
    if abs(np.trace(rho) - 1.0) > tol:
        raise DomainError("spin state does not have unit trace")
    if np.linalg.eigvalsh(0.5 * (rho + rho.conj().T)).min() < -tol:
        raise DomainError("spin state is not positive semidefinite")
    return rho


def is_spin_state(rho, tol: float = STATE_TOL) -> bool:
    try:
        check_spin_state(rho, tol)
    except DomainError:
        return False
    return True
