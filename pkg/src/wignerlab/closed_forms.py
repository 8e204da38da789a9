"""Analytic orbits, concurrences and separability windows for boosted Werner states.

All functions take the Wigner angle omega (scalar or array) with chi = omega and
the Werner parameter lam. Bell-diagonal scenarios return t-vectors of shape
(..., 3); scenarios whose outputs carry off-diagonal correlations (EPRB and
entangled momenta with mixed axes) return full matrices of shape (..., 3, 3).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize_scalar

from . import boost_map, geometry
from .boost_map import RotationKind, RotationType
from .errors import ConfigError, UnsupportedScenarioError
from .momentum import Family
from .spin_algebra import AXIS_VECTORS, werner_state
from .lorentz import rotation_matrix

LAMBDA_SEP = 1.0 / 3.0
LAMBDA_BELL = 1.0 / np.sqrt(2.0)
WERNER_SIGNS = np.array([1.0, -1.0, 1.0])
_IDX = {"x": 0, "y": 1, "z": 2}


def _stack(a, b, c):
    a, b, c = np.broadcast_arrays(a, b, c)
    return np.stack([a, b, c], axis=-1)


def _one(c):
    return np.ones_like(c)


# t-vectors at lam = 1, keyed by axis or sorted axis pair; c = cos w, c2 = cos^2 w,
# h = cos^2(w/2), d = cos 2w
_SIGMA_SINGLE = {
    "x": lambda c, h, d: _stack(_one(c), -c, c),
    "y": lambda c, h, d: _stack(c, -_one(c), c),
    "z": lambda c, h, d: _stack(c, -c, _one(c)),
}
_SIGMA_SAME = {
    "x": lambda c, h, d: _stack(_one(c), -c**2, c**2),
    "y": lambda c, h, d: _stack(c**2, -_one(c), c**2),
    "z": lambda c, h, d: _stack(c**2, -c**2, _one(c)),
}
_SIGMA_MIXED = {
    "xy": lambda c, h, d: _stack(c, -c, c**2),
    "xz": lambda c, h, d: _stack(c, -c**2, c),
    "yz": lambda c, h, d: _stack(c**2, -c, c),
}
_CROSS_SINGLE = {
    "xy": lambda c, h, d: _stack(h, -h, c),
    "xz": lambda c, h, d: _stack(h, -c, h),
    "yz": lambda c, h, d: _stack(c, -h, h),
}
_CROSS_MIXED = {
    "xy": lambda c, h, d: _stack(h**2, -h**2, c**2),
    "xz": lambda c, h, d: _stack(h**2, -c**2, h**2),
    "yz": lambda c, h, d: _stack(c**2, -h**2, h**2),
}
_PHI_SAME = {
    "x": lambda c, h, d: _stack(_one(c), -d, d),
    "y": lambda c, h, d: _stack(_one(c), -_one(c), _one(c)),
    "z": lambda c, h, d: _stack(d, -d, _one(c)),
}
_PSI_SAME = {
    "x": lambda c, h, d: _stack(_one(c), -_one(c), _one(c)),
    "y": lambda c, h, d: _stack(d, -_one(c), d),
    "z": lambda c, h, d: _stack(_one(c), -_one(c), _one(c)),
}
# position and sign of the single sin^2 w entry for entangled momenta with
# correlated signs (Phi+ type); anticorrelated signs flip it, reversed axis
# order transposes it
_ENTANGLED_OFFDIAG = {"xy": ((1, 0), -1.0), "xz": ((2, 0), 1.0), "yz": ((2, 1), -1.0)}

_TRIVIAL = {(Family.PHI_PLUS, "y"), (Family.PSI_PLUS, "x"), (Family.PSI_PLUS, "z")}


def _pair(rtype: RotationType) -> str:
    return "".join(sorted((rtype.axis1, rtype.axis2)))


def _validate(family, rtype: RotationType):
    family = Family.parse(family)
    try:
        boost_map.label_maps(family, rtype)
    except ConfigError as exc:
        raise UnsupportedScenarioError(str(exc)) from None
    return family


def _check_lam(lam):
    lam = float(lam)
    if not 0.0 <= lam <= 1.0:
        raise ConfigError(f"Werner parameter must lie in [0, 1], got {lam!r}")
    return lam


def is_bell_diagonal_scenario(family, rtype: RotationType) -> bool:
    family = _validate(family, rtype)
    if family is Family.EPRB:
        return False
    return not (family.entangled and rtype.kind is RotationKind.MIXED)


def _so3(axis: str, angle) -> np.ndarray:
    angle = np.asarray(angle, dtype=float)
    return np.stack([rotation_matrix(AXIS_VECTORS[axis], a) for a in angle.ravel()]).reshape(angle.shape + (3, 3))


def closed_form_t(family, rtype: RotationType, omega, lam):
    """Analytic correlation diagonal (or full matrix) of the boosted Werner state."""
    family = _validate(family, rtype)
    lam = _check_lam(lam)
    w = np.asarray(omega, dtype=float)
    c, h, d = np.cos(w), np.cos(w / 2) ** 2, np.cos(2 * w)
    kind = rtype.kind

    if family is Family.EPRB:
        # one local unitary: t = lam * O1 diag(1,-1,1) O2^T
        O1 = _so3(rtype.axis1, w)
        if kind is RotationKind.SINGLE:
            O2 = np.broadcast_to(np.eye(3), O1.shape)
        else:
            O2 = _so3(rtype.axis1 if kind is RotationKind.SAME else rtype.axis2, w)
        return lam * np.einsum("...ik,k,...jk->...ij", O1, WERNER_SIGNS, O2)

    if kind is RotationKind.SINGLE:
        table = _CROSS_SINGLE if family is Family.CROSS else _SIGMA_SINGLE
        key = _pair(rtype) if family is Family.CROSS else rtype.axis1
        return lam * table[key](c, h, d)

    if family is Family.SIGMA:
        if kind is RotationKind.SAME:
            return lam * _SIGMA_SAME[rtype.axis1](c, h, d)
        return lam * _SIGMA_MIXED[_pair(rtype)](c, h, d)

    if family is Family.CROSS:
        return lam * _CROSS_MIXED[_pair(rtype)](c, h, d)

    if kind is RotationKind.SAME:
        table = _PHI_SAME if family is Family.PHI_PLUS else _PSI_SAME
        return lam * table[rtype.axis1](c, h, d)

    # entangled momenta, mixed axes: not Bell diagonal
    pair = _pair(rtype)
    diag = _SIGMA_MIXED[pair](c, h, d)
    t = np.einsum("...i,ij->...ij", diag, np.eye(3))
    (i, j), sign = _ENTANGLED_OFFDIAG[pair]
    if family in (Family.PSI_PLUS, Family.PSI_PLUS_PERP):
        sign = -sign
    if rtype.axis1 > rtype.axis2:
        i, j = j, i
    t[..., i, j] = sign * np.sin(w) ** 2
    return lam * t


def closed_form_tensor(family, rtype: RotationType, omega, lam) -> np.ndarray:
    """closed_form_t always as a (..., 3, 3) matrix."""
    t = closed_form_t(family, rtype, omega, lam)
    if t.shape[-2:] == (3, 3) and not is_bell_diagonal_scenario(family, rtype):
        return t
    return np.einsum("...i,ij->...ij", t, np.eye(3))


def _sigma_mixed_concurrence(c, d, lam):
    # ||A| - |B|| + 2(-2 + lam + lam cos 2w), all over 8
    A = 2 + lam + 4 * lam * c + lam * d
    B = 2 + lam - 4 * lam * c + lam * d
    return (np.abs(np.abs(A) - np.abs(B)) + 2 * (-2 + lam + lam * d)) / 8


def _cross_mixed_concurrence(c, d, lam):
    return (-np.abs(4 * lam * c - lam * d + lam - 4) + 4 * lam * c + 7 * lam * d + 9 * lam - 4) / 16


def closed_form_concurrence(family, rtype: RotationType, omega, lam):
    """Analytic concurrence of the boosted Werner state."""
    family = _validate(family, rtype)
    lam = _check_lam(lam)
    w = np.asarray(omega, dtype=float)
    c, d = np.cos(w), np.cos(2 * w)
    kind = rtype.kind
    werner = np.full_like(w, (3 * lam - 1) / 2)

    if family is Family.EPRB:
        val = werner
    elif family is Family.CROSS:
        if kind is RotationKind.SINGLE:
            val = 0.5 * (-1 + lam + 2 * lam * c)
        else:
            val = _cross_mixed_concurrence(c, d, lam)
    elif kind is RotationKind.SINGLE:
        val = 0.5 * (-1 + lam + 2 * lam * np.abs(c))
    elif family is Family.SIGMA:
        if kind is RotationKind.SAME:
            val = -0.5 + lam + 0.5 * lam * d
        else:
            val = _sigma_mixed_concurrence(c, d, lam)
    elif kind is RotationKind.MIXED:
        val = -0.5 + lam + 0.5 * lam * d
    elif (family, rtype.axis1) in _TRIVIAL:
        val = werner
    else:
        val = 0.5 * (-1 + lam + 2 * lam * np.abs(d))
    val = np.maximum(val, 0.0)
    return float(val) if val.ndim == 0 else val


@dataclass(frozen=True)
class SeparabilityWindow:
    """Closed omega intervals on which the boosted state has zero concurrence."""

    intervals: tuple

    def __post_init__(self):
        ivs = tuple((float(a), float(b)) for a, b in self.intervals)
        for a, b in ivs:
            if not (0.0 <= a <= b <= np.pi + 1e-12):
                raise ValueError(f"invalid separability interval ({a}, {b})")
        object.__setattr__(self, "intervals", ivs)

    @property
    def empty(self) -> bool:
        return not self.intervals

    @property
    def lo(self) -> float:
        return self._single()[0]

    @property
    def hi(self) -> float:
        return self._single()[1]

    def _single(self):
        if len(self.intervals) != 1:
            raise ValueError(f"window has {len(self.intervals)} intervals, not exactly one")
        return self.intervals[0]

    def contains(self, omega: float, tol: float = 0.0) -> bool:
        return any(a - tol <= omega <= b + tol for a, b in self.intervals)

    def distance(self, other: "SeparabilityWindow") -> float:
        """Largest endpoint difference; inf if the interval counts differ."""
        if len(self.intervals) != len(other.intervals):
            return float("inf")
        if not self.intervals:
            return 0.0
        return float(np.abs(np.array(self.intervals) - np.array(other.intervals)).max())


def _analytic_window(family, rtype: RotationType, lam: float) -> SeparabilityWindow:
    pi = np.pi
    kind = rtype.kind
    if lam <= LAMBDA_SEP:
        return SeparabilityWindow(((0.0, pi),))
    trivial = family is Family.EPRB or (kind is RotationKind.SAME and (family, rtype.axis1) in _TRIVIAL)
    if trivial:
        return SeparabilityWindow(())
    k = (1 - lam) / (2 * lam)
    if family is Family.CROSS:
        if kind is RotationKind.SINGLE:
            return SeparabilityWindow(((np.arccos(k), pi),))
        c_star = (-lam + np.sqrt(6 * lam - 2 * lam**2)) / (3 * lam)
        return SeparabilityWindow(((np.arccos(c_star), pi),))
    if kind is RotationKind.SINGLE:
        a = np.arccos(k)
        return SeparabilityWindow(((a, pi - a),))
    if family is Family.SIGMA and kind is RotationKind.MIXED:
        a = np.arccos((-lam + np.sqrt(lam + lam**2)) / lam)
        return SeparabilityWindow(((a, pi - a),))
    if family is Family.SIGMA or kind is RotationKind.MIXED:
        # roots of -1/2 + lam + (lam/2) cos 2w: w_{0,+} and w_{1,-}
        b = 0.5 * np.arccos((1 - 2 * lam) / lam)
        return SeparabilityWindow(((b, pi - b),))
    # entangled momenta, same axis, nontrivial: |cos 2w| <= k gives two intervals
    a = np.arccos(k)
    return SeparabilityWindow(((a / 2, (pi - a) / 2), ((pi + a) / 2, pi - a / 2)))


def _raw_concurrence_fn(family, rtype, lam):
    rho = werner_state(lam)

    def f(w):
        out = boost_map.channel_outputs(rho, family, rtype, np.atleast_1d(w))
        return geometry.concurrences(out, raw=True)

    return f


def numeric_separability_window(family, rtype: RotationType, lam: float, n: int = 2049,
                                tol: float = 1e-9, touch_tol: float = 1e-12) -> SeparabilityWindow:
    """Window located from the channel's own concurrence by grid scan and bisection.

    Independent of the closed forms: scans the unclipped concurrence on an
    n-point grid, refines each sign change by bisection to `tol`, and polishes
    positive local minima that may touch zero between grid points. Quadratic
    touching is only resolved to sqrt(touch_tol), so runs use a strict <= 0.
    """
    family = _validate(family, rtype)
    lam = _check_lam(lam)
    f = _raw_concurrence_fn(family, rtype, lam)
    grid = np.linspace(0.0, np.pi, n)
    vals = f(grid)
    sep = vals <= 0.0

    def boundary(a, b):
        # a separable, b entangled
        while abs(b - a) > tol:
            m = 0.5 * (a + b)
            if f(m)[0] <= 0.0:
                a = m
            else:
                b = m
        return 0.5 * (a + b)

    intervals = []
    i = 0
    while i < n:
        if not sep[i]:
            i += 1
            continue
        j = i
        while j + 1 < n and sep[j + 1]:
            j += 1
        lo = grid[0] if i == 0 else boundary(grid[i], grid[i - 1])
        hi = grid[-1] if j == n - 1 else boundary(grid[j], grid[j + 1])
        intervals.append((lo, hi))
        i = j + 1

    for k in range(1, n - 1):
        if sep[k - 1] or sep[k] or sep[k + 1]:
            continue
        if vals[k] <= vals[k - 1] and vals[k] <= vals[k + 1] and vals[k] < 1e-3:
            res = minimize_scalar(lambda x: f(x)[0], bounds=(grid[k - 1], grid[k + 1]),
                                  method="bounded", options={"xatol": tol})
            if res.fun <= touch_tol:
                intervals.append((res.x, res.x))
    intervals.sort()
    return SeparabilityWindow(tuple(intervals))


def separability_window(family, rtype: RotationType, lam: float, method: str = "analytic") -> SeparabilityWindow:
    """Omega intervals with vanishing concurrence.

    method='analytic' uses the arccos roots, 'numeric' the bisection route.
    """
    family = _validate(family, rtype)
    lam = _check_lam(lam)
    if method == "analytic":
        return _analytic_window(family, rtype, lam)
    if method == "numeric":
        return numeric_separability_window(family, rtype, lam)
    raise ValueError(f"unknown method {method!r}")


def werner_concurrence(lam):
    return np.maximum(0.0, (3 * np.asarray(lam, dtype=float) - 1) / 2)


def three_rotation(n: int = 1) -> np.ndarray:
    """Rotation by 2 pi n / 3 about the Werner axis (1, -1, 1)/sqrt(3)."""
    return rotation_matrix(WERNER_SIGNS / np.sqrt(3.0), 2 * np.pi * n / 3)
