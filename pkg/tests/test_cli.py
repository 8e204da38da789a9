import csv
import json
import math
import subprocess
import sys
from importlib import resources

import jsonschema
import numpy as np
import pytest

from wignerlab import cli, closed_forms, validation


def schema(name):
    return json.loads(resources.files("wignerlab").joinpath("schemas", name).read_text())


def run(tmp_path, *argv, name="out.csv"):
    out = tmp_path / name
    code = cli.main([*argv, "--out", str(out)])
    return code, (out.read_text() if out.exists() else None)


def rows(text):
    return list(csv.DictReader(text.splitlines()))


def test_twr(tmp_path):
    code, text = run(tmp_path, "twr", "--v1", "0.8", "--v2", "0.8", "--grid", "5")
    assert code == 0
    r = rows(text)
    assert len(r) == 5
    assert float(r[0]["omega"]) == 0.0
    assert float(r[2]["omega"]) == pytest.approx(2 * math.atan(0.25), abs=1e-15)
    thetas = [float(x["theta"]) for x in r]
    assert thetas == sorted(thetas)


@pytest.mark.parametrize("argv", [
    ["twr", "--v1", "1.2", "--v2", "0.5"],
    ["twr", "--v1", "0.5"],
    ["orbit", "--lambda", "1.5"],
    ["orbit", "--lambda", "0.5,0.6"],
    ["orbit", "--family", "cross", "--type", "single"],
    ["orbit", "--family", "phi+perp", "--type", "same"],
    ["orbit", "--grid", "1"],
    ["window", "--lambda", "a,b"],
])
def test_config_errors_exit_2(tmp_path, argv):
    code, text = run(tmp_path, *argv)
    assert code == 2 and text is None


def test_argparse_errors_exit_2():
    with pytest.raises(SystemExit) as exc:
        cli.main(["orbit", "--family", "gauss"])
    assert exc.value.code == 2


def test_orbit_sigma_single(tmp_path):
    code, text = run(tmp_path, "orbit", "--family", "sigma", "--type", "single", "--lambda", "1")
    assert code == 0
    r = rows(text)
    assert len(r) == 361
    assert float(r[180]["omega"]) == pytest.approx(np.pi / 2)
    assert float(r[180]["C_numeric"]) <= 1e-10
    assert list(r[0]) == ["omega", "t_xx", "t_yy", "t_zz", "C_numeric", "C_closed_form", "abs_dC"]


def test_orbit_invariant_case(tmp_path):
    code, text = run(tmp_path, "orbit", "--family", "phi+", "--type", "same", "--axis1", "y", "--lambda", "0.6")
    assert code == 0
    for r in rows(text):
        assert [float(r[k]) for k in ("t_xx", "t_yy", "t_zz")] == pytest.approx([0.6, -0.6, 0.6], abs=1e-12)


def test_orbit_rest_row(tmp_path):
    _, text = run(tmp_path, "orbit", "--family", "cross", "--type", "mixed", "--axis1", "x", "--axis2", "z",
                  "--lambda", "0.8", "--grid", "11")
    first = rows(text)[0]
    assert float(first["t_xx"]) == pytest.approx(0.8, abs=1e-14)
    assert float(first["C_numeric"]) == pytest.approx(0.7, abs=1e-14)


def test_orbit_full_tensor_columns(tmp_path):
    _, text = run(tmp_path, "orbit", "--family", "psi+", "--type", "mixed", "--axis1", "y", "--axis2", "z",
                  "--grid", "9")
    r = rows(text)
    assert "t_zy" in r[0]
    assert float(r[4]["t_zy"]) == pytest.approx(1.0, abs=1e-12)


def test_orbit_json_schema(tmp_path):
    code, text = run(tmp_path, "orbit", "--family", "phi+perp", "--type", "mixed", "--axis1", "x", "--axis2", "y",
                     "--grid", "13", "--format", "json", "--lambda", "0.7", name="o.json")
    assert code == 0
    doc = json.loads(text)
    jsonschema.validate(doc, schema("table.schema.json"))
    assert len(doc["rows"]) == 13 and len(doc["columns"]) == 13


def test_window_json_schema_and_nulls(tmp_path):
    code, text = run(tmp_path, "window", "--family", "eprb", "--type", "same", "--lambda", "0.2,0.9",
                     "--format", "json", name="w.json")
    assert code == 0
    doc = json.loads(text)
    jsonschema.validate(doc, schema("table.schema.json"))
    assert doc["rows"][0][2:4] == [0.0, math.pi]
    assert doc["rows"][1][2:] == [None, None, None, None]


def test_window_rows(tmp_path):
    code, text = run(tmp_path, "window", "--family", "sigma", "--type", "single", "--lambda", "0.6,0.3333333333333333")
    assert code == 0
    r = rows(text)
    assert round(float(r[0]["omega_lo"]), 2) == 1.23 and round(float(r[0]["omega_hi"]), 2) == 1.91
    assert (float(r[1]["omega_lo"]), float(r[1]["omega_hi"])) == (0.0, math.pi)
    assert abs(float(r[0]["omega_lo_numeric"]) - float(r[0]["omega_lo"])) <= 1e-6


def test_window_split_rows(tmp_path):
    _, text = run(tmp_path, "window", "--family", "phi+", "--type", "same", "--axis1", "z", "--lambda", "0.8")
    assert [int(float(r["interval"])) for r in rows(text)] == [0, 1]


def test_window_same_sigma(tmp_path):
    _, text = run(tmp_path, "window", "--family", "sigma", "--type", "same", "--lambda", "0.6")
    r = rows(text)[0]
    assert (round(float(r["omega_lo"]), 2), round(float(r["omega_hi"]), 2)) == (0.96, 2.19)


def test_window_disagreement_exit_3(tmp_path, monkeypatch):
    orig = closed_forms._analytic_window

    def shifted(family, rtype, lam):
        win = orig(family, rtype, lam)
        return closed_forms.SeparabilityWindow(tuple((a, min(b + 1e-3, np.pi)) for a, b in win.intervals))

    monkeypatch.setattr(closed_forms, "_analytic_window", shifted)
    code, _ = run(tmp_path, "window", "--family", "sigma", "--type", "same", "--lambda", "0.6")
    assert code == 3


def test_orbit_mismatch_exit_3(tmp_path, monkeypatch):
    orig = closed_forms.closed_form_concurrence
    monkeypatch.setattr(closed_forms, "closed_form_concurrence", lambda *a: np.asarray(orig(*a)) + 1e-3)
    code, text = run(tmp_path, "orbit", "--grid", "5")
    assert code == 3 and text is not None


def test_config_manifest_and_override(tmp_path):
    cfg = tmp_path / "m.json"
    cfg.write_text(json.dumps({"family": "sigma", "type": "mixed", "axis1": "x", "axis2": "y",
                               "lambda": 0.6, "grid": 7}))
    code, text = run(tmp_path, "orbit", "--config", str(cfg), "--grid", "9")
    assert code == 0
    r = rows(text)
    assert len(r) == 9
    assert float(r[0]["t_xx"]) == pytest.approx(0.6)


@pytest.mark.parametrize("content", ['{"family": "sigma", "colour": 1}', "[1, 2]", "{not json",
                                     '{"command": "twr"}', '{"grid": "many"}'])
def test_bad_manifest(tmp_path, content):
    cfg = tmp_path / "m.json"
    cfg.write_text(content)
    code, _ = run(tmp_path, "orbit", "--config", str(cfg))
    assert code == 2


def test_missing_config_file(tmp_path):
    code, _ = run(tmp_path, "orbit", "--config", str(tmp_path / "nope.json"))
    assert code == 2


def test_orbit_deterministic(tmp_path):
    cfg = tmp_path / "m.json"
    cfg.write_text(json.dumps({"family": "cross", "type": "mixed", "axis1": "y", "axis2": "z", "lambda": 0.8}))
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert cli.main(["orbit", "--config", str(cfg), "--out", str(a)]) == 0
    assert cli.main(["orbit", "--config", str(cfg), "--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    assert b"\r" not in a.read_bytes()


def test_number_format():
    assert cli.fmt(0.1) == "0.10000000000000001"
    assert cli.fmt(float("nan")) == "nan"
    assert float(cli.fmt(np.pi)) == np.pi


def test_degrees_only_touch_stderr(tmp_path, capsys):
    _, plain = run(tmp_path, "twr", "--v1", "0.9", "--v2", "0.6", "--grid", "4")
    plain_err = capsys.readouterr().err
    _, deg = run(tmp_path, "twr", "--v1", "0.9", "--v2", "0.6", "--grid", "4", "--degrees", name="d.csv")
    assert plain == deg
    assert "deg" in capsys.readouterr().err and "rad" in plain_err


def test_stdout_output(capsys):
    assert cli.main(["twr", "--v1", "0.5", "--v2", "0.5", "--grid", "3"]) == 0
    assert capsys.readouterr().out.startswith("theta,omega\n")


def test_validate_ok(tmp_path):
    code, text = run(tmp_path, "validate", name="v.json")
    assert code == 0
    report = json.loads(text)
    jsonschema.validate(report, schema("validate.schema.json"))
    assert report["ok"] and not report["failures"]
    assert len(report["scenarios"]) == 72
    assert all("max_abs_dC" in s for s in report["scenarios"])


@pytest.fixture
def perturbed_closed_form(monkeypatch):
    # shift one tabulated constant by 1e-3
    monkeypatch.setitem(closed_forms._SIGMA_SINGLE, "x",
                        lambda c, h, d: closed_forms._stack(np.ones_like(c) + 1e-3, -c, c))


def test_validate_detects_perturbation(tmp_path, perturbed_closed_form):
    code, text = run(tmp_path, "validate", "--grid", "61", name="v.json")
    assert code == 3
    report = json.loads(text)
    assert not report["ok"]
    assert "sigma/single(x)" in report["failures"]
    bad = next(s for s in report["scenarios"] if s["scenario"] == "sigma/single(x)")
    assert bad["max_abs_dt"] == pytest.approx(1e-3, rel=1e-6)


def test_console_script_entry():
    proc = subprocess.run([sys.executable, "-m", "wignerlab.cli", "twr", "--v1", "0.8", "--v2", "0.8", "--grid", "2"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[0] == "theta,omega"
