"""Momentum-conditioned spin channels.

Each momentum outcome (p, q) induces a local rotation R(p) x R(q) on the two
spins; tracing out momenta leaves the mixed-unitary map

    rho -> sum_k w_k U_k rho U_k^dagger,   U_k = R1_k x R2_k.

Rotations are parameterized abstractly by the Wigner angle (omega for particle
1, chi for particle 2) or derived from physical boosts via lorentz.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Optional

import numpy as np

from . import lorentz, momentum
from .errors import ConfigError
from .momentum import Family, MomentumDistribution
from .spin_algebra import AXES, I2, SU2Rotation, check_spin_state, su2_from_so3, su2_matrix


class RotationKind(str, Enum):
    SINGLE = "single"
    SAME = "same"
    MIXED = "mixed"


@dataclass(frozen=True)
class RotationType:
    """R_i x 1 (SINGLE), R_i x R_i (SAME) or R_i x R_j with i != j (MIXED).

    For the cross family axis1/axis2 name the two axes each particle is rotated
    about (the two axes orthogonal to the boost), so they must differ for every
    kind.
    """

    kind: RotationKind
    axis1: str = "x"
    axis2: Optional[str] = None

    def __post_init__(self):
        try:
            kind = RotationKind(str(getattr(self.kind, "value", self.kind)).lower())
        except ValueError:
            raise ConfigError(f"unknown rotation type {self.kind!r}") from None
        object.__setattr__(self, "kind", kind)
        a1 = str(self.axis1).lower()
        a2 = None if self.axis2 is None else str(self.axis2).lower()
        if a1 not in AXES or (a2 is not None and a2 not in AXES):
            raise ConfigError(f"axes must be one of {AXES}, got {self.axis1!r}, {self.axis2!r}")
        if kind is RotationKind.MIXED and (a2 is None or a2 == a1):
            raise ConfigError("MIXED rotations need two different axes")
        if kind is RotationKind.SAME and a2 is not None and a2 != a1:
            raise ConfigError("SAME rotations use a single axis")
        object.__setattr__(self, "axis1", a1)
        object.__setattr__(self, "axis2", a2)

    @property
    def label(self) -> str:
        if self.axis2 is None or self.kind is RotationKind.SAME:
            return f"{self.kind.value}({self.axis1})"
        return f"{self.kind.value}({self.axis1},{self.axis2})"


def single(axis="x", axis2=None) -> RotationType:
    return RotationType(RotationKind.SINGLE, axis, axis2)


def same(axis="x") -> RotationType:
    return RotationType(RotationKind.SAME, axis)


def mixed(axis1="x", axis2="y") -> RotationType:
    return RotationType(RotationKind.MIXED, axis1, axis2)


@dataclass(frozen=True, eq=False)
class RotationTerm:
    weight: float
    rotation1: SU2Rotation
    rotation2: SU2Rotation

    @property
    def unitary(self) -> np.ndarray:
        return np.kron(self.rotation1.matrix, self.rotation2.matrix)


@dataclass(frozen=True, eq=False)
class RotationAssignment:
    terms: tuple
    omega: float
    chi: float

    def __len__(self):
        return len(self.terms)

    @property
    def weights(self) -> np.ndarray:
        return np.array([t.weight for t in self.terms])


@dataclass(frozen=True)
class ScenarioConfig:
    """Family x rotation type, Werner parameter and chi policy (None means chi = omega)."""

    family: Family
    rotation: RotationType
    lam: float = 1.0
    chi: Optional[float] = None

    def __post_init__(self):
        object.__setattr__(self, "family", Family.parse(self.family))
        if not (0.0 <= float(self.lam) <= 1.0):
            raise ConfigError(f"Werner parameter must lie in [0, 1], got {self.lam!r}")
        object.__setattr__(self, "lam", float(self.lam))
        label_maps(self.family, self.rotation)

    @property
    def name(self) -> str:
        return f"{self.family.value}/{self.rotation.label}"


def scenario_distribution(family, rtype: RotationType, **vectors) -> MomentumDistribution:
    """Momentum distribution realizing (family, rotation type).

    SINGLE puts the second particle at the origin; entangled families with
    SINGLE reduce to the sigma distribution.
    """
    family = Family.parse(family)
    label_maps(family, rtype)
    if rtype.kind is RotationKind.SINGLE:
        if family is Family.EPRB:
            return momentum.eprb(origin_second=True, **vectors)
        if family is Family.CROSS:
            return momentum.cross(origin_second=True, **vectors)
        return momentum.sigma(origin_second=True, **vectors)
    return momentum.for_family(family, **vectors)


def label_maps(family, rtype: RotationType):
    """Per-particle maps from label kind ('par'/'perp') to rotation axis.

    Raises ConfigError for inadmissible combinations.
    """
    family = Family.parse(family)
    a1, a2, kind = rtype.axis1, rtype.axis2, rtype.kind
    if family is Family.CROSS:
        if a2 is None or a2 == a1:
            raise ConfigError("cross momenta need two distinct axes (axis1, axis2)")
        if kind is RotationKind.SAME:
            raise ConfigError("cross momenta mix same- and different-axis terms; use type 'mixed'")
        pair = {"par": a1, "perp": a2}
        return pair, ({} if kind is RotationKind.SINGLE else dict(pair))
    if kind is RotationKind.SAME and family in (Family.PHI_PLUS_PERP, Family.PSI_PLUS_PERP):
        raise ConfigError(f"{family.value} momenta realize rotations about different axes; SAME is not admissible")
    first = {"par": a1}
    if kind is RotationKind.SINGLE:
        return first, {}
    if kind is RotationKind.SAME:
        return first, {"par": a1}
    return first, {"par": a2, "perp": a2}


def _rotation(label, axes: dict, angle: float) -> SU2Rotation:
    if label.kind == "origin":
        return SU2Rotation.identity()
    return SU2Rotation(axes[label.kind], label.sign * angle)


def assignment_for(family, rtype: RotationType, omega: float, chi: Optional[float] = None) -> RotationAssignment:
    """Per-outcome rotations R(+-omega) x R(+-chi) for a scenario."""
    chi = omega if chi is None else chi
    for name, val in (("omega", omega), ("chi", chi)):
        if not (0.0 <= val <= np.pi):
            raise ConfigError(f"{name} must lie in [0, pi], got {val!r}")
    map1, map2 = label_maps(family, rtype)
    dist = scenario_distribution(family, rtype)
    terms = tuple(RotationTerm(w, _rotation(a, map1, omega), _rotation(b, map2, chi))
                  for a, b, w in dist.outcomes)
    return RotationAssignment(terms, float(omega), float(chi))


def boosted_spin_state(rho, assignment: RotationAssignment) -> np.ndarray:
    """sum_k w_k U_k rho U_k^dagger."""
    rho = np.asarray(rho, dtype=complex)
    out = np.zeros((4, 4), dtype=complex)
    for term in assignment.terms:
        U = term.unitary
        out += term.weight * (U @ rho @ U.conj().T)
    return out


def _batched(label, axes: dict, angles: np.ndarray) -> np.ndarray:
    if label.kind == "origin":
        return np.broadcast_to(I2, angles.shape + (2, 2))
    return su2_matrix(axes[label.kind], label.sign * angles)


def channel_outputs(rho, family, rtype: RotationType, omegas, chi=None) -> np.ndarray:
    """Channel output for every omega in `omegas`, shape (N, 4, 4).

    `chi` may be None (chi = omega), a scalar or an array matching omegas.
    """
    omegas = np.atleast_1d(np.asarray(omegas, dtype=float))
    chis = omegas if chi is None else np.broadcast_to(np.asarray(chi, dtype=float), omegas.shape)
    rho = np.asarray(rho, dtype=complex)
    map1, map2 = label_maps(family, rtype)
    dist = scenario_distribution(family, rtype)
    out = np.zeros((len(omegas), 4, 4), dtype=complex)
    for a, b, w in dist.outcomes:
        A = _batched(a, map1, omegas)
        B = _batched(b, map2, chis)
        U = np.einsum("nab,ncd->nacbd", A, B).reshape(-1, 4, 4)
        out += w * (U @ rho @ U.conj().transpose(0, 2, 1))
    return out


def boosted_spin_state_from_amplitudes(rho, amplitudes, rotation_of) -> np.ndarray:
    """Spin state from a pure momentum state, by building the full boosted state.

    `amplitudes` is [(label1, label2, psi)], `rotation_of(label1, label2)` returns
    the 4x4 unitary for that outcome. Boosted momentum kets are orthonormal, so
    the partial trace over momenta keeps only the diagonal blocks; this routine
    forms the whole n*4 x n*4 composite operator and traces it explicitly.
    """
    rho = np.asarray(rho, dtype=complex)
    n = len(amplitudes)
    psi = np.array([a for _, _, a in amplitudes], dtype=complex)
    Us = [rotation_of(a, b) for a, b, _ in amplitudes]
    total = np.zeros((n, 4, n, 4), dtype=complex)
    for i in range(n):
        for j in range(n):
            total[i, :, j, :] = psi[i] * np.conj(psi[j]) * (Us[i] @ rho @ Us[j].conj().T)
    return np.einsum("iaib->ab", total)


def rotation_of_labels(family, rtype: RotationType, omega: float, chi: Optional[float] = None):
    """Callable mapping a label pair to its 4x4 unitary for the given scenario."""
    chi = omega if chi is None else chi
    map1, map2 = label_maps(family, rtype)

    def rotation_of(a, b):
        return np.kron(_rotation(a, map1, omega).matrix, _rotation(b, map2, chi).matrix)

    return rotation_of


def spin_rotation_from_boost(p, boost: lorentz.BoostParam, mass: float = 1.0) -> np.ndarray:
    """SU(2) matrix of the Wigner rotation W(Lambda, p)."""
    R = lorentz.wigner_rotation_exact(boost.matrix(), p, mass)
    return su2_from_so3(R)


def boosted_spin_state_exact(rho, dist: MomentumDistribution, boost: lorentz.BoostParam,
                             mass: float = 1.0) -> np.ndarray:
    """Channel output with each rotation computed from the physical boost."""
    if not dist.has_vectors:
        raise ConfigError("every momentum label needs a concrete vector for the exact channel")
    rho = check_spin_state(rho)
    out = np.zeros((4, 4), dtype=complex)
    for a, b, w in dist.outcomes:
        U = np.kron(spin_rotation_from_boost(a.vector, boost, mass),
                    spin_rotation_from_boost(b.vector, boost, mass))
        out += w * (U @ rho @ U.conj().T)
    return out


def supported_scenarios():
    """Every admissible (family, rotation type) combination, in a fixed order."""
    singles = [single(a) for a in AXES]
    sames = [same(a) for a in AXES]
    mixes = [mixed(a, b) for a in AXES for b in AXES if a != b]
    pairs = [("x", "y"), ("x", "z"), ("y", "z")]
    out = []
    for fam in (Family.EPRB, Family.SIGMA):
        out += [(fam, r) for r in singles + sames + mixes]
    out += [(Family.CROSS, single(a, b)) for a, b in pairs]
    out += [(Family.CROSS, mixed(a, b)) for a, b in pairs]
    for fam in (Family.PHI_PLUS, Family.PSI_PLUS):
        out += [(fam, r) for r in singles + sames + mixes]
    for fam in (Family.PHI_PLUS_PERP, Family.PSI_PLUS_PERP):
        out += [(fam, r) for r in singles + mixes]
    return out
