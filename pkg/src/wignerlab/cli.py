"""wignerlab command line: twr, orbit, window and validate.

Machine output (CSV or JSON) is deterministic: floats are written with 17
significant digits, lines end in '\\n', and nothing time- or host-dependent is
emitted. Angles are always radians there; --degrees only changes the summary
printed to stderr.
"""
from __future__ import annotations

import argparse
import io
import json
import math
import sys
from dataclasses import asdict, dataclass, field
from typing import Optional

import numpy as np

from . import boost_map, closed_forms, geometry, lorentz, validation
from .boost_map import RotationType, ScenarioConfig
from .errors import WignerLabError
from .momentum import Family

EXIT_OK, EXIT_CONFIG, EXIT_VALIDATION = 0, 2, 3
ORBIT_TOL = 1e-10
FORMATS = ("csv", "json")
COMMANDS = ("twr", "orbit", "window", "validate")
_KEYS = ("family", "type", "axis1", "axis2", "lambda", "grid", "format", "out", "v1", "v2", "degrees")


class UsageError(WignerLabError):
    pass


@dataclass
class RunManifest:
    """Everything a run depends on; built from --config plus flag overrides."""

    command: str
    family: str = "sigma"
    type: str = "single"
    axis1: str = "x"
    axis2: Optional[str] = None
    lambdas: list = field(default_factory=lambda: [1.0])
    grid: int = geometry.DEFAULT_GRID
    format: str = "csv"
    out: Optional[str] = None
    v1: Optional[float] = None
    v2: Optional[float] = None
    degrees: bool = False

    def validate(self) -> "RunManifest":
        if self.command not in COMMANDS:
            raise UsageError(f"unknown command {self.command!r}")
        if self.format not in FORMATS:
            raise UsageError(f"format must be one of {FORMATS}, got {self.format!r}")
        if isinstance(self.grid, bool) or not isinstance(self.grid, int) or self.grid < 2:
            raise UsageError(f"grid must be an integer >= 2, got {self.grid!r}")
        if not self.lambdas:
            raise UsageError("at least one lambda value is required")
        for lam in self.lambdas:
            if not (isinstance(lam, (int, float)) and 0.0 <= lam <= 1.0):
                raise UsageError(f"lambda must lie in [0, 1], got {lam!r}")
        if self.command == "orbit" and len(self.lambdas) != 1:
            raise UsageError("orbit takes a single lambda")
        if self.command in ("orbit", "window"):
            self.scenario()
        if self.command == "twr":
            if self.v1 is None or self.v2 is None:
                raise UsageError("twr needs --v1 and --v2")
            lorentz.BoostConfig(self.v1, self.v2, 0.0)
        return self

    def rotation(self) -> RotationType:
        return RotationType(self.type, self.axis1, self.axis2)

    def scenario(self, lam: Optional[float] = None) -> ScenarioConfig:
        return ScenarioConfig(Family.parse(self.family), self.rotation(), self.lambdas[0] if lam is None else lam)


def fmt(x) -> str:
    x = float(x)
    if math.isnan(x):
        return "nan"
    return format(x, ".17g")


def _json_num(x):
    x = float(x)
    return None if math.isnan(x) else float(fmt(x))


class Table:
    def __init__(self, command: str, columns, manifest: RunManifest):
        self.command = command
        self.columns = list(columns)
        self.rows = []
        self.manifest = manifest

    def add(self, *values):
        self.rows.append(values)

    def render(self, fmt_name: str) -> str:
        if fmt_name == "csv":
            buf = io.StringIO()
            buf.write(",".join(self.columns) + "\n")
            for row in self.rows:
                buf.write(",".join(fmt(v) for v in row) + "\n")
            return buf.getvalue()
        doc = {
            "command": self.command,
            "manifest": _manifest_json(self.manifest),
            "columns": self.columns,
            "rows": [[_json_num(v) for v in row] for row in self.rows],
        }
        return json.dumps(doc, indent=1, sort_keys=False) + "\n"


def _manifest_json(m: RunManifest) -> dict:
    d = asdict(m)
    d.pop("out")
    d["lambdas"] = [float(fmt(x)) for x in d["lambdas"]]
    return d


def _emit(text: str, out: Optional[str]):
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _angle(x, degrees: bool) -> str:
    return f"{math.degrees(x):.4f} deg" if degrees else f"{x:.6f} rad"


def cmd_twr(m: RunManifest) -> int:
    thetas = np.linspace(0.0, math.pi, m.grid)
    table = Table("twr", ["theta", "omega"], m)
    for th in thetas:
        table.add(th, lorentz.twr_angle(lorentz.BoostConfig(m.v1, m.v2, float(min(th, math.pi)))))
    _emit(table.render(m.format), m.out)
    peak = max(r[1] for r in table.rows)
    print(f"twr: {len(table.rows)} rows, max omega {_angle(peak, m.degrees)}", file=sys.stderr)
    return EXIT_OK


def orbit_table(m: RunManifest):
    cfg = m.scenario()
    omegas = geometry.default_grid(m.grid)
    orb = geometry.orbit(cfg, omegas)
    Cc = closed_forms.closed_form_concurrence(cfg.family, cfg.rotation, omegas, cfg.lam)
    dC = np.abs(orb.concurrence - Cc)
    full = not closed_forms.is_bell_diagonal_scenario(cfg.family, cfg.rotation)
    cols = ["omega", "t_xx", "t_yy", "t_zz"]
    if full:
        cols += ["t_xy", "t_xz", "t_yx", "t_yz", "t_zx", "t_zy"]
    table = Table("orbit", cols + ["C_numeric", "C_closed_form", "abs_dC"], m)
    for k, w in enumerate(omegas):
        t = orb.t[k]
        vals = [w, t[0, 0], t[1, 1], t[2, 2]]
        if full:
            vals += [t[0, 1], t[0, 2], t[1, 0], t[1, 2], t[2, 0], t[2, 1]]
        table.add(*vals, orb.concurrence[k], Cc[k], dC[k])
    return table, float(dC.max())


def cmd_orbit(m: RunManifest) -> int:
    table, worst = orbit_table(m)
    _emit(table.render(m.format), m.out)
    if worst > ORBIT_TOL:
        print(f"orbit: closed-form mismatch {worst:.3e} exceeds {ORBIT_TOL:g}", file=sys.stderr)
        return EXIT_VALIDATION
    return EXIT_OK


def cmd_window(m: RunManifest) -> int:
    family, rtype = Family.parse(m.family), m.rotation()
    table = Table("window", ["lambda", "interval", "omega_lo", "omega_hi", "omega_lo_numeric", "omega_hi_numeric"], m)
    bad = []
    for lam in m.lambdas:
        a = closed_forms.separability_window(family, rtype, lam)
        n = closed_forms.separability_window(family, rtype, lam, method="numeric")
        if a.distance(n) > validation.WINDOW_TOL:
            bad.append(lam)
        ivs_a = a.intervals or ((math.nan, math.nan),)
        ivs_n = n.intervals if len(n.intervals) == len(a.intervals) else ()
        for k, (lo, hi) in enumerate(ivs_a):
            nlo, nhi = ivs_n[k] if k < len(ivs_n) else (math.nan, math.nan)
            table.add(lam, k, lo, hi, nlo, nhi)
        for lo, hi in a.intervals:
            print(f"window lambda={lam:g}: [{_angle(lo, m.degrees)}, {_angle(hi, m.degrees)}]", file=sys.stderr)
    _emit(table.render(m.format), m.out)
    if bad:
        print(f"window: analytic and numeric roots disagree at lambda {bad}", file=sys.stderr)
        return EXIT_VALIDATION
    return EXIT_OK


def cmd_validate(m: RunManifest) -> int:
    report = validation.run_checks(grid=m.grid)
    _emit(json.dumps(report, indent=1) + "\n", m.out)
    if not report["ok"]:
        print("validate: failing checks: " + ", ".join(report["failures"]), file=sys.stderr)
        return EXIT_VALIDATION
    return EXIT_OK


def _parse_lambdas(text) -> list:
    if isinstance(text, (int, float)):
        return [float(text)]
    if isinstance(text, list):
        return [float(x) for x in text]
    try:
        return [float(x) for x in str(text).split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"cannot parse lambda list {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="wignerlab", description="Wigner-rotation spin channels acting on Werner states.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_ in (("twr", "rotation angle against the boost angle"),
                        ("orbit", "boosted state along an omega grid"),
                        ("window", "separability windows over lambda"),
                        ("validate", "run every oracle and invariant check")):
        p = sub.add_parser(name, help=help_)
        p.add_argument("--config", help="JSON manifest; explicit flags override it")
        p.add_argument("--grid", type=int)
        p.add_argument("--format", choices=FORMATS)
        p.add_argument("--out")
        p.add_argument("--degrees", action="store_true", default=None)
        if name in ("orbit", "window"):
            p.add_argument("--family", choices=[f.value for f in Family])
            p.add_argument("--type", choices=["single", "same", "mixed"])
            p.add_argument("--axis1", choices=["x", "y", "z"])
            p.add_argument("--axis2", choices=["x", "y", "z"])
            p.add_argument("--lambda", dest="lambda_",
                           help="Werner parameter (window: comma-separated list)")
        if name == "twr":
            p.add_argument("--v1", type=float)
            p.add_argument("--v2", type=float)
    return parser


def manifest_from_args(args) -> RunManifest:
    data = {}
    if args.config:
        try:
            with open(args.config, encoding="utf-8") as fh:
                data = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read config {args.config!r}: {exc}") from None
        if not isinstance(data, dict):
            raise UsageError("config file must hold a JSON object")
        unknown = set(data) - set(_KEYS) - {"command"}
        if unknown:
            raise UsageError(f"unknown config keys: {sorted(unknown)}")
        if data.get("command", args.command) != args.command:
            raise UsageError(f"config is for {data['command']!r}, not {args.command!r}")
    flags = {k: getattr(args, "lambda_" if k == "lambda" else k, None) for k in _KEYS}
    merged = {**data, **{k: v for k, v in flags.items() if v is not None}}
    kwargs = {k: merged[k] for k in ("family", "type", "axis1", "axis2", "grid", "format", "out", "v1", "v2", "degrees")
              if k in merged}
    if "lambda" in merged:
        kwargs["lambdas"] = _parse_lambdas(merged["lambda"])
    elif args.command == "window":
        kwargs["lambdas"] = list(validation.LAMBDA_GRID)
    return RunManifest(args.command, **kwargs).validate()


_COMMANDS = {"twr": cmd_twr, "orbit": cmd_orbit, "window": cmd_window, "validate": cmd_validate}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        manifest = manifest_from_args(args)
    except (WignerLabError, ValueError, TypeError) as exc:
        print(f"wignerlab {args.command}: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        return _COMMANDS[manifest.command](manifest)
    except WignerLabError as exc:
        print(f"wignerlab {args.command}: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
