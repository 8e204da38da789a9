"""Special-relativistic kinematics: Lorentz factors, the Thomas-Wigner rotation
angle and axis from the half-angle formula, and an independent construction of
the Wigner rotation by composing 4x4 Lorentz matrices.

Conventions: natural units (c = 1), metric signature (+,-,-,-), canonical boosts
are the symmetric pure boosts. Masses default to 1.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateAxisError, DomainError, InvariantError

ETA = np.diag([1.0, -1.0, -1.0, -1.0])

LORENTZ_TOL = 1e-10


def _check_speed(v: float, name: str = "v") -> float:
    v = float(v)
    if not math.isfinite(v) or v < 0.0 or v >= 1.0:
        raise DomainError(f"{name} must satisfy 0 <= {name} < 1, got {v!r}")
    return v


def as_velocity(v) -> np.ndarray:
    """Validate a 3-velocity (finite components, |v| < 1) and return it as an array."""
    arr = np.asarray(v, dtype=float)
    if arr.shape != (3,):
        raise DomainError(f"velocity must have 3 components, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise DomainError("velocity components must be finite")
    if np.linalg.norm(arr) >= 1.0:
        raise DomainError(f"|v| must be < 1, got {np.linalg.norm(arr)!r}")
    return arr


def gamma(v: float) -> float:
    """Lorentz factor (1 - v^2)^(-1/2) for a speed 0 <= v < 1."""
    v = _check_speed(v)
    return 1.0 / math.sqrt((1.0 - v) * (1.0 + v))


def rapidity(v: float) -> float:
    return math.atanh(_check_speed(v))


def d_factor(gamma1: float, gamma2: float) -> float:
    """D = sqrt(((g1 + 1)/(g1 - 1)) * ((g2 + 1)/(g2 - 1))).

    Both Lorentz factors must exceed 1; D diverges for a boost at rest.
    """
    g1, g2 = float(gamma1), float(gamma2)
    for g in (g1, g2):
        if not math.isfinite(g) or g <= 1.0:
            raise DomainError(f"Lorentz factors must be finite and > 1, got {g!r}")
    return math.sqrt(((g1 + 1.0) / (g1 - 1.0)) * ((g2 + 1.0) / (g2 - 1.0)))


def _half_d(v: float) -> float:
    # sqrt((g+1)/(g-1)) rewritten as (1 + sqrt(1 - v^2)) / v, stable for small v
    return (1.0 + math.sqrt((1.0 - v) * (1.0 + v))) / v


@dataclass(frozen=True)
class BoostConfig:
    """Two boost speeds and the angle between the boost directions."""

    v1: float
    v2: float
    theta: float

    def __post_init__(self):
        _check_speed(self.v1, "v1")
        _check_speed(self.v2, "v2")
        if not (0.0 <= self.theta <= math.pi):
            raise DomainError(f"theta must lie in [0, pi], got {self.theta!r}")

    @property
    def gamma1(self) -> float:
        return gamma(self.v1)

    @property
    def gamma2(self) -> float:
        return gamma(self.v2)

    @property
    def d(self) -> float:
        if self.v1 == 0.0 or self.v2 == 0.0:
            raise DomainError("D is undefined when either speed is zero")
        return _half_d(self.v1) * _half_d(self.v2)


def twr_angle(config: BoostConfig) -> float:
    """Thomas-Wigner rotation angle in [0, pi) for two composed boosts.

    Uses tan(w/2) = sin(theta) / (cos(theta) + D). Since D > 1 the denominator
    is positive and the result is continuous in theta.
    """
    if config.v1 == 0.0 or config.v2 == 0.0:
        return 0.0
    return 2.0 * math.atan2(math.sin(config.theta), math.cos(config.theta) + config.d)


def twr_axis(v1, v2) -> np.ndarray:
    """Unit rotation axis v2 x v1 / |v2 x v1|."""
    a, b = as_velocity(v1), as_velocity(v2)
    n = np.cross(b, a)
    norm = np.linalg.norm(n)
    scale = np.linalg.norm(a) * np.linalg.norm(b)
    if scale == 0.0 or norm <= 1e-14 * scale:
        raise DegenerateAxisError("velocities are parallel or zero; rotation axis undefined")
    return n / norm


@dataclass(frozen=True)
class BoostParam:
    """Boost given by rapidity and a unit direction."""

    rapidity: float
    direction: tuple

    def __post_init__(self):
        e = np.asarray(self.direction, dtype=float)
        if e.shape != (3,) or abs(np.linalg.norm(e) - 1.0) > 1e-12:
            raise DomainError("boost direction must be a unit 3-vector")
        if not math.isfinite(self.rapidity) or self.rapidity < 0.0:
            raise DomainError("rapidity must be finite and nonnegative")
        object.__setattr__(self, "direction", tuple(float(x) for x in e))

    @classmethod
    def from_velocity(cls, v) -> "BoostParam":
        v = as_velocity(v)
        speed = float(np.linalg.norm(v))
        if speed == 0.0:
            return cls(0.0, (0.0, 0.0, 1.0))
        # rescale first so tiny speeds still give a unit direction
        u = v / np.abs(v).max()
        return cls(math.atanh(speed), tuple(u / np.linalg.norm(u)))

    @property
    def speed(self) -> float:
        return math.tanh(self.rapidity)

    def matrix(self) -> np.ndarray:
        return pure_boost(math.sinh(self.rapidity) * np.asarray(self.direction))


def pure_boost(u) -> np.ndarray:
    """Symmetric boost taking the rest frame to 4-velocity (gamma, u), u = gamma*v."""
    u = np.asarray(u, dtype=float)
    g = math.sqrt(1.0 + float(u @ u))
    L = np.empty((4, 4))
    L[0, 0] = g
    L[0, 1:] = u
    L[1:, 0] = u
    L[1:, 1:] = np.eye(3) + np.outer(u, u) / (g + 1.0)
    return L


def standard_boost(p, m: float = 1.0) -> np.ndarray:
    """Canonical boost L(p) mapping (m, 0, 0, 0) to (E(p), p)."""
    if not m > 0.0:
        raise DomainError(f"mass must be positive, got {m!r}")
    return pure_boost(np.asarray(p, dtype=float) / m)


def rotation_4(R) -> np.ndarray:
    L = np.eye(4)
    L[1:, 1:] = R
    return L


def four_momentum(p, m: float = 1.0) -> np.ndarray:
    p = np.asarray(p, dtype=float)
    return np.concatenate([[math.sqrt(m * m + float(p @ p))], p])


def check_lorentz(L, tol: float = LORENTZ_TOL) -> np.ndarray:
    """Raise InvariantError unless L is a proper orthochronous Lorentz matrix."""
    L = np.asarray(L, dtype=float)
    if L.shape != (4, 4):
        raise InvariantError(f"Lorentz matrix must be 4x4, got {L.shape}")
    scale = max(1.0, float(np.abs(L).max()) ** 2)
    if np.abs(L.T @ ETA @ L - ETA).max() > tol * scale:
        raise InvariantError("matrix does not preserve the Minkowski metric")
    if L[0, 0] < 1.0 - tol:
        raise InvariantError("Lorentz matrix is not orthochronous")
    if np.linalg.det(L) < 0.0:
        raise InvariantError("Lorentz matrix is not proper")
    return L


def wigner_rotation_exact(Lam, p, m: float = 1.0) -> np.ndarray:
    """Spatial block of W = L(Lam p)^-1 Lam L(p), a 3x3 rotation matrix."""
    Lam = check_lorentz(Lam)
    k = Lam @ four_momentum(p, m)
    # inverse of a pure boost is the boost with reversed momentum
    W = standard_boost(-k[1:], m) @ Lam @ standard_boost(p, m)
    scale = max(1.0, float(np.abs(Lam).max()) * k[0] / m)
    if abs(W[0, 0] - 1.0) > LORENTZ_TOL * scale or np.abs(W[0, 1:]).max() > LORENTZ_TOL * scale:
        raise InvariantError("composed transformation is not a pure rotation")
    return W[1:, 1:]


def rotation_angle(R) -> float:
    """Rotation angle in [0, pi] of a 3x3 rotation matrix.

    cos w comes from the trace and sin w from the antisymmetric part; atan2 of
    the two keeps full precision near w = 0 and w = pi.
    """
    R = np.asarray(R, dtype=float)
    cos_w = min(1.0, max(-1.0, (np.trace(R) - 1.0) / 2.0))
    axial = 0.5 * np.array([R[2, 1] - R[1, 2], R[0, 2] - R[2, 0], R[1, 0] - R[0, 1]])
    return math.atan2(float(np.linalg.norm(axial)), cos_w)


def rotation_axis(R) -> np.ndarray:
    """Unit axis of a rotation with angle strictly between 0 and pi."""
    R = np.asarray(R, dtype=float)
    axial = 0.5 * np.array([R[2, 1] - R[1, 2], R[0, 2] - R[2, 0], R[1, 0] - R[0, 1]])
    norm = np.linalg.norm(axial)
    if norm < 1e-14:
        raise DegenerateAxisError("rotation angle is 0 or pi; axis not recoverable from antisymmetric part")
    return axial / norm


def rotation_matrix(axis, angle: float) -> np.ndarray:
    """Right-handed rotation by `angle` about a unit axis (Rodrigues)."""
    n = np.asarray(axis, dtype=float)
    K = np.array([[0.0, -n[2], n[1]], [n[2], 0.0, -n[0]], [-n[1], n[0], 0.0]])
    return np.eye(3) + math.sin(angle) * K + (1.0 - math.cos(angle)) * (K @ K)


def wigner_rotation_for(config: BoostConfig, m: float = 1.0) -> np.ndarray:
    """Wigner rotation for a particle with speed v1 seen from a boost with speed v2.

    The boost is along +z and the particle momentum lies in the x-z plane at
    angle theta from the boost direction.
    """
    v1, v2, th = config.v1, config.v2, config.theta
    p = m * v1 / math.sqrt((1.0 - v1) * (1.0 + v1)) * np.array([math.sin(th), 0.0, math.cos(th)])
    Lam = BoostParam(math.atanh(v2), (0.0, 0.0, 1.0)).matrix()
    return wigner_rotation_exact(Lam, p, m)
