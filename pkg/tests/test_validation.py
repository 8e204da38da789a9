import pytest

from wignerlab import validation


def test_twr_oracle_passes():
    check = validation.twr_oracle(n=200, seed=3)
    assert check["ok"] and check["value"] < 1e-12


def test_scenario_sweep_rows():
    rows = validation.scenario_sweep(grid=41, lambdas=(0.5, 1.0))
    assert len(rows) == 72
    assert all(r["ok"] for r in rows)
    assert max(r["max_abs_dC"] for r in rows) < 1e-12


def test_window_checks_cover_families():
    names = {c["name"].split()[1].split("/")[0] for c in validation.window_checks(lambdas=(0.7,))}
    assert names == {"eprb", "sigma", "cross", "phi+", "psi+", "phi+perp", "psi+perp"}
