"""Full oracle and invariant sweep behind `wignerlab validate`.

Closed forms are looked up through the `closed_forms` module at call time so a
test can perturb them and watch the sweep fail.
"""
from __future__ import annotations

import math

import numpy as np

from . import boost_map, closed_forms, geometry, lorentz
from .boost_map import RotationKind
from .momentum import Family
from .spin_algebra import werner_state

LAMBDA_GRID = (1 / 3, 2 / 5, 3 / 5, 4 / 5, 1.0)
ORACLE_TOL = 1e-10
TWR_TOL = 1e-9
STATE_TOL = 1e-10
WINDOW_TOL = 1e-6


def _check(name, value, tol, **extra):
    value = float(value)
    return {"name": name, "value": value, "tol": tol, "ok": bool(value <= tol), **extra}


def twr_oracle(n: int = 1000, seed: int = 0) -> dict:
    """Largest |twr_angle - angle of the exact Wigner rotation| over random triples."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    for v1, v2, th in zip(rng.uniform(0.05, 0.999, n), rng.uniform(0.05, 0.999, n), rng.uniform(0.0, math.pi, n)):
        cfg = lorentz.BoostConfig(float(v1), float(v2), float(th))
        exact = lorentz.rotation_angle(lorentz.wigner_rotation_for(cfg))
        worst = max(worst, abs(lorentz.twr_angle(cfg) - exact))
    spot = lorentz.twr_angle(lorentz.BoostConfig(0.8, 0.8, math.pi / 2))
    return _check("twr_oracle", max(worst, abs(spot - 2 * math.atan(0.25))), TWR_TOL, samples=n)


def scenario_sweep(grid: int = geometry.DEFAULT_GRID, lambdas=LAMBDA_GRID) -> list:
    """Per-scenario closed-form agreement, state validity, no-increase and octahedron checks."""
    omegas = geometry.default_grid(grid)
    rows = []
    for family, rtype in boost_map.supported_scenarios():
        dC = dt = bad_state = excess = 0.0
        octa_mismatch = 0
        for lam in lambdas:
            states = boost_map.channel_outputs(werner_state(lam), family, rtype, omegas)
            r, s, t = geometry.correlation_arrays(states)
            C = geometry.concurrences(states)
            Cc = closed_forms.closed_form_concurrence(family, rtype, omegas, lam)
            tc = closed_forms.closed_form_tensor(family, rtype, omegas, lam)
            dC = max(dC, float(np.abs(C - Cc).max()))
            dt = max(dt, float(np.abs(t - tc).max()))
            herm = np.abs(states - states.conj().transpose(0, 2, 1)).max()
            trace = np.abs(np.trace(states, axis1=1, axis2=2) - 1).max()
            neg = max(0.0, -np.linalg.eigvalsh(states).min())
            bad_state = max(bad_state, herm, trace, neg)
            excess = max(excess, float(C.max() - closed_forms.werner_concurrence(lam)))
            if closed_forms.is_bell_diagonal_scenario(family, rtype):
                inside = np.abs(np.einsum("nii->ni", t)).sum(axis=1) <= 1 + 1e-12
                octa_mismatch += int(np.sum(inside != (C <= ORACLE_TOL)))
        rows.append({
            "scenario": f"{family.value}/{rtype.label}",
            "max_abs_dC": dC,
            "max_abs_dt": dt,
            "max_state_violation": float(bad_state),
            "max_concurrence_increase": excess,
            "octahedron_mismatches": octa_mismatch,
            "ok": bool(dC <= ORACLE_TOL and dt <= ORACLE_TOL and bad_state <= STATE_TOL
                       and excess <= ORACLE_TOL and octa_mismatch == 0),
        })
    return rows


def _window_scenarios():
    # one representative per distinct closed-form window
    out = []
    for family, rtype in boost_map.supported_scenarios():
        if rtype.kind is RotationKind.MIXED and family is not Family.CROSS and (rtype.axis1, rtype.axis2) != ("x", "z"):
            continue
        if rtype.kind is not RotationKind.MIXED and family is not Family.CROSS and rtype.axis1 == "z":
            continue
        out.append((family, rtype))
    return out


def window_checks(lambdas=(0.5, 3 / 5, 1.0)) -> list:
    rows = []
    for family, rtype in _window_scenarios():
        for lam in lambdas:
            a = closed_forms.separability_window(family, rtype, lam)
            n = closed_forms.separability_window(family, rtype, lam, method="numeric")
            rows.append(_check(f"window {family.value}/{rtype.label} lambda={lam:.6g}", a.distance(n), WINDOW_TOL))
    return rows


def run_checks(grid: int = geometry.DEFAULT_GRID, windows: bool = True) -> dict:
    """Run everything; returns a JSON-ready report with a top-level 'ok'."""
    scen = scenario_sweep(grid)
    checks = [twr_oracle()]
    if windows:
        checks += window_checks()
    failures = [r["scenario"] for r in scen if not r["ok"]] + [c["name"] for c in checks if not c["ok"]]
    return {
        "ok": not failures,
        "failures": failures,
        "scenarios": scen,
        "checks": checks,
        "max_abs_dC": max(r["max_abs_dC"] for r in scen),
        "max_abs_dt": max(r["max_abs_dt"] for r in scen),
    }
