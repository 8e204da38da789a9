"""Discrete two-particle momentum distributions.

Labels are symbolic ('+p', '-p_perp', 'p0', ...). A label may carry a concrete
3-vector, which is only needed when rotations are derived from physical boosts.
Only the weights |psi(p, q)|^2 reach the spin state, so distributions store
weights; amplitude lists exist to exercise the pure/diagonal equivalence and
gauge-phase invariance.
"""
from __future__ import annotations

import cmath
from collections import defaultdict
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Optional, Sequence

import numpy as np

from .errors import ConfigError, DomainError

WEIGHT_TOL = 1e-12


class Family(str, Enum):
    EPRB = "eprb"
    SIGMA = "sigma"
    CROSS = "cross"
    PHI_PLUS = "phi+"
    PSI_PLUS = "psi+"
    PHI_PLUS_PERP = "phi+perp"
    PSI_PLUS_PERP = "psi+perp"

    @property
    def entangled(self) -> bool:
        return self in ENTANGLED_FAMILIES

    @classmethod
    def parse(cls, value) -> "Family":
        if isinstance(value, cls):
            return value
        aliases = {"[phi+]": "phi+perp", "[psi+]": "psi+perp", "x": "cross", "×": "cross", "Σ": "sigma"}
        key = str(value).strip().lower()
        try:
            return cls(aliases.get(key, key))
        except ValueError:
            raise ConfigError(f"unknown momentum family {value!r}") from None


ENTANGLED_FAMILIES = frozenset(
    {Family.PHI_PLUS, Family.PSI_PLUS, Family.PHI_PLUS_PERP, Family.PSI_PLUS_PERP})

_BASES = ("p", "q", "p_perp", "q_perp")


@dataclass(frozen=True)
class MomentumLabel:
    """Symbolic momentum ket such as '+p', '-q_perp' or 'p0' (origin)."""

    tag: str
    vector: Optional[tuple] = None

    def __post_init__(self):
        if self.tag != "p0":
            if self.tag[:1] not in "+-" or self.tag[1:] not in _BASES:
                raise DomainError(f"malformed momentum label {self.tag!r}")
        if self.vector is not None:
            v = np.asarray(self.vector, dtype=float)
            if v.shape != (3,) or not np.all(np.isfinite(v)):
                raise DomainError("label vector must be a finite 3-vector")
            if self.tag == "p0" and np.any(v != 0.0):
                raise DomainError("origin label p0 must carry the zero vector")
            object.__setattr__(self, "vector", tuple(float(x) for x in v))

    @property
    def sign(self) -> int:
        return 0 if self.tag == "p0" else (1 if self.tag[0] == "+" else -1)

    @property
    def kind(self) -> str:
        """'origin', 'par' (along p or q) or 'perp' (along p_perp or q_perp)."""
        if self.tag == "p0":
            return "origin"
        return "perp" if self.tag.endswith("_perp") else "par"


ORIGIN = MomentumLabel("p0", (0.0, 0.0, 0.0))


def _label(sign: int, base: str, vec) -> MomentumLabel:
    tag = ("+" if sign > 0 else "-") + base
    if vec is None:
        return MomentumLabel(tag)
    return MomentumLabel(tag, tuple(sign * np.asarray(vec, dtype=float)))


@dataclass(frozen=True)
class MomentumDistribution:
    """Weighted list of (label1, label2) outcomes."""

    outcomes: tuple
    family: Family

    def __post_init__(self):
        outs = tuple((a, b, float(w)) for a, b, w in self.outcomes)
        if not outs:
            raise DomainError("distribution needs at least one outcome")
        ws = np.array([w for _, _, w in outs])
        if np.any(ws < 0.0):
            raise DomainError("weights must be nonnegative")
        if abs(ws.sum() - 1.0) > WEIGHT_TOL:
            raise DomainError(f"weights must sum to 1, got {ws.sum()!r}")
        pairs = [(a.tag, b.tag) for a, b, _ in outs]
        if len(set(pairs)) != len(pairs):
            raise DomainError("outcome labels must be distinct")
        object.__setattr__(self, "outcomes", outs)
        object.__setattr__(self, "family", Family.parse(self.family))

    def __len__(self):
        return len(self.outcomes)

    @property
    def weights(self) -> np.ndarray:
        return np.array([w for _, _, w in self.outcomes])

    def marginal(self, particle: int) -> dict:
        """Tag -> weight for particle 1 or 2."""
        if particle not in (1, 2):
            raise DomainError("particle must be 1 or 2")
        acc = defaultdict(float)
        for a, b, w in self.outcomes:
            acc[(a if particle == 1 else b).tag] += w
        return dict(acc)

    @property
    def has_vectors(self) -> bool:
        return all(a.vector is not None and b.vector is not None for a, b, _ in self.outcomes)


def _product(family, labels1, labels2) -> MomentumDistribution:
    w = 1.0 / (len(labels1) * len(labels2))
    return MomentumDistribution(tuple((a, b, w) for a in labels1 for b in labels2), family)


def eprb(p=None, q=None, origin_second: bool = False) -> MomentumDistribution:
    """Single sharp momentum pair |p, q>."""
    second = ORIGIN if origin_second else _label(1, "q", q)
    return MomentumDistribution(((_label(1, "p", p), second, 1.0),), Family.EPRB)


def sigma(p=None, q=None, origin_second: bool = False) -> MomentumDistribution:
    """(|p> + |-p>)(|q> + |-q>)/2 reduced to its diagonal: four outcomes of weight 1/4."""
    first = [_label(s, "p", p) for s in (1, -1)]
    second = [ORIGIN] if origin_second else [_label(s, "q", q) for s in (1, -1)]
    return _product(Family.SIGMA, first, second)


def cross(p=None, p_perp=None, q=None, q_perp=None, origin_second: bool = False) -> MomentumDistribution:
    """Each particle uniform over {+-p, +-p_perp}: sixteen outcomes of weight 1/16."""
    first = [_label(s, "p", p) for s in (1, -1)] + [_label(s, "p_perp", p_perp) for s in (1, -1)]
    if origin_second:
        second = [ORIGIN]
    else:
        second = [_label(s, "q", q) for s in (1, -1)] + [_label(s, "q_perp", q_perp) for s in (1, -1)]
    return _product(Family.CROSS, first, second)


def _entangled_pairs(kind: Family, p, p_perp):
    if kind is Family.PHI_PLUS:
        return [(_label(1, "p", p), _label(1, "p", p)), (_label(-1, "p", p), _label(-1, "p", p))]
    if kind is Family.PSI_PLUS:
        return [(_label(1, "p", p), _label(-1, "p", p)), (_label(-1, "p", p), _label(1, "p", p))]
    if kind is Family.PHI_PLUS_PERP:
        return [(_label(1, "p", p), _label(1, "p_perp", p_perp)),
                (_label(-1, "p", p), _label(-1, "p_perp", p_perp))]
    if kind is Family.PSI_PLUS_PERP:
        return [(_label(1, "p", p), _label(-1, "p_perp", p_perp)),
                (_label(-1, "p", p), _label(1, "p_perp", p_perp))]
    raise ConfigError(f"{kind.value} is not an entangled momentum family")


def entangled_amplitudes(kind, p=None, p_perp=None, relative_sign: int = 1) -> list:
    """Amplitude list [(label1, label2, amplitude)] of a Bell-type momentum state.

    relative_sign=-1 gives the minus-phase partner (Phi-, Psi-, ...).
    """
    kind = Family.parse(kind)
    (a1, b1), (a2, b2) = _entangled_pairs(kind, p, p_perp)
    amp = 1.0 / np.sqrt(2.0)
    return [(a1, b1, complex(amp)), (a2, b2, complex(relative_sign * amp))]


def product_amplitudes(dist: MomentumDistribution) -> list:
    """Real nonnegative amplitudes sqrt(w) for a product-family distribution."""
    return [(a, b, complex(np.sqrt(w))) for a, b, w in dist.outcomes]


def diagonal_mixture(amplitudes: Sequence, family=Family.EPRB) -> MomentumDistribution:
    """Keep only the diagonal of |M><M|: weights |psi(p, q)|^2."""
    amps = np.array([a for _, _, a in amplitudes], dtype=complex)
    norm = float(np.sum(np.abs(amps) ** 2))
    if abs(norm - 1.0) > WEIGHT_TOL:
        raise DomainError(f"amplitudes are not normalized (sum |psi|^2 = {norm!r})")
    return MomentumDistribution(
        tuple((a, b, abs(amp) ** 2) for (a, b, _), amp in zip(amplitudes, amps)), family)


def apply_gauge_phase(amplitudes: Sequence, phase: Callable) -> list:
    """Multiply each amplitude by exp(i phase(label1, label2))."""
    return [(a, b, amp * cmath.exp(1j * float(phase(a, b)))) for a, b, amp in amplitudes]


def entangled(kind, p=None, p_perp=None) -> MomentumDistribution:
    """Diagonal part of a Bell-type momentum state: two outcomes of weight 1/2."""
    kind = Family.parse(kind)
    return diagonal_mixture(entangled_amplitudes(kind, p, p_perp), kind)


def for_family(family, **vectors) -> MomentumDistribution:
    family = Family.parse(family)
    if family is Family.EPRB:
        return eprb(**vectors)
    if family is Family.SIGMA:
        return sigma(**vectors)
    if family is Family.CROSS:
        return cross(**vectors)
    return entangled(family, **vectors)
