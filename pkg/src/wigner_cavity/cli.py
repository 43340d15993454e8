"""Command-line front end: ``wigner``, ``cavity``, ``trace`` and ``verify``.

Exit codes: 0 success, 1 usage error, 2 verification failure, 3 domain error
(an unstable cavity where a stable one is required).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass, field
from typing import Any, Sequence

import numpy as np

from . import __version__, cavity, lorentz, sp2, verify

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VERIFY = 2
EXIT_DOMAIN = 3

CSV_HEADER = ("trip", "y", "slope", "wigner_angle")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@dataclass
class RunReport:
    command: str
    inputs: dict[str, Any]
    outputs: dict[str, Any] = field(default_factory=dict)
    checks: list[dict[str, Any]] = field(default_factory=list)

    def add_check(self, name: str, residual: float, tolerance: float, **extra) -> None:
        self.checks.append({"name": name, "residual": float(residual), "tolerance": float(tolerance),
                            "passed": bool(residual <= tolerance), **extra})

    def to_json(self) -> str:
        payload = {
            "command": self.command,
            "inputs": self.inputs,
            "outputs": self.outputs,
            "checks": self.checks,
            "meta": {"program": "wigner-cavity", "version": __version__},
        }
        return json.dumps(_jsonable(payload), indent=2, allow_nan=False)

    def to_text(self) -> str:
        lines = [f"{self.command}: " + ", ".join(f"{k}={_fmt(v)}" for k, v in self.inputs.items())]
        for key, value in self.outputs.items():
            if isinstance(value, (list, np.ndarray)) and np.ndim(value) == 2:
                lines.append(f"  {key}:")
                lines.extend("    [" + "  ".join(f"{x: .12g}" for x in row) + "]" for row in np.asarray(value))
            else:
                lines.append(f"  {key}: {_fmt(value)}")
        for c in self.checks:
            status = "PASS" if c["passed"] else "FAIL"
            lines.append(f"  [{status}] {c['name']}: residual {c['residual']:.3e} (tol {c['tolerance']:.1e})")
        return "\n".join(lines)


def _fmt(v) -> str:
    if isinstance(v, float):
        return f"{v:.15g}"
    return str(v)


def _jsonable(obj):
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _jsonable(obj.tolist())
    if isinstance(obj, np.generic):
        return obj.item()
    return obj


def _finite_float(text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not math.isfinite(v):
        raise argparse.ArgumentTypeError(f"must be finite: {text!r}")
    return v


def _positive_float(text: str) -> float:
    v = _finite_float(text)
    if v <= 0:
        raise argparse.ArgumentTypeError(f"must be positive: {text!r}")
    return v


def _nonneg_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError(f"must be nonnegative: {text!r}")
    return v


def _positive_int(text: str) -> int:
    v = _nonneg_int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be at least 1: {text!r}")
    return v


def _grid_density(text: str) -> int:
    v = _nonneg_int(text)
    if v < 2:
        raise argparse.ArgumentTypeError(f"grid density must be at least 2: {text!r}")
    return v


def cmd_wigner(eta: float, theta: float, degrees: bool = False) -> RunReport:
    to_rad = math.radians if degrees else float
    from_rad = math.degrees if degrees else float
    th = to_rad(theta)
    report = RunReport("wigner", {"eta": eta, "theta": theta, "angle_unit": "deg" if degrees else "rad"})
    tri = lorentz.BoostTriangle(eta, th)
    oracle = tri.oracle_omega()
    b1, b2, b3 = tri.boosts()
    report.outputs = {
        "lambda": tri.lam,
        "omega_formula": from_rad(tri.omega),
        "omega_oracle": from_rad(oracle),
        "omega_difference": from_rad(abs(tri.omega - oracle)),
        "big_theta": from_rad(tri.big_theta),
        "B1": b1,
        "B2": b2,
        "B3": b3,
        "S1": sp2.squeeze_z(eta),
        "S2": sp2.s2(eta, th),
        "S3": sp2.s3(eta, th),
    }
    report.add_check("omega formula vs B3 B2 B1", abs(tri.omega - oracle), verify.COMPOSED)
    return report


def cmd_cavity(d: float, radius: float, trips: int = 1) -> RunReport:
    cfg = cavity.CavityConfig(d, radius)
    verdict = cavity.stability(cfg)
    report = RunReport("cavity", {"d": d, "radius": radius, "trips": trips})
    out: dict[str, Any] = {"verdict": verdict, "round_trip": cavity.round_trip(cfg)}
    iterated = cavity.iterated_round_trips(cfg, trips)
    if verdict == cavity.STABLE:
        dec = cavity.escort_core(cfg)
        closed = cavity.n_round_trips(cfg, trips)
        out.update({
            "phi": dec.phi,
            "phi_deg": math.degrees(dec.phi),
            "xi": dec.xi,
            "exp_2xi": dec.exp_2xi,
            "escort": dec.escort,
            "core": dec.core,
            "wigner_angle": 2 * trips * dec.phi,
            "n_trip_closed_form": closed,
            "n_trip_iterated": iterated,
            "n_trip_residual": float(np.abs(closed - iterated).max()),
        })
        report.add_check("N-trip closed form vs iteration", out["n_trip_residual"], verify.POWER)
        e = dec.escort
        report.add_check("E C^2 E^-1 = round trip",
                         float(np.abs(e @ dec.core @ dec.core @ cavity.inverse2(e) - out["round_trip"]).max()),
                         verify.SINGLE)
    else:
        try:
            cavity.core_canonical(cfg)
        except cavity.CavityStabilityError as exc:
            phi = exc.phi
        out.update({
            "phi": phi,
            "phi_deg": None if phi is None else math.degrees(phi),
            "xi": None,
            "exp_2xi": max(0.0, 1 / (2 * cfg.ratio) - 0.25) if verdict == cavity.MARGINAL else None,
            "core": cavity.core_matrix(cfg),
            "escort": cavity.escort_matrix(cfg),
            "n_trip_iterated": iterated,
        })
    out["trace_round_trip"] = float(np.trace(out["round_trip"]))
    report.outputs = out
    return report


def trace_rows(d: float, radius: float, y0: float, slope0: float, trips: int, allow_unstable: bool = False):
    """Rows ``(trip, y, slope, wigner_angle)`` for trips ``0..trips``.

    Raises :class:`cavity.CavityStabilityError` for a cavity that is not
    stable unless ``allow_unstable``; the Wigner angle column is then ``None``.
    """
    cfg = cavity.CavityConfig(d, radius)
    phi = None
    try:
        phi, _ = cavity.core_canonical(cfg)
    except cavity.CavityStabilityError:
        if not allow_unstable:
            raise
    orbit = cavity.trace_orbit(cfg, cavity.RayState(y0, slope0), trips)
    return [(n, ray.y, ray.slope, None if phi is None else 2 * n * phi + 0.0) for n, ray in enumerate(orbit)]


def write_csv(rows, stream) -> None:
    w = csv.writer(stream, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for n, y, slope, angle in rows:
        w.writerow([n, f"{y:.17g}", f"{slope:.17g}", "" if angle is None else f"{angle:.17g}"])


def cmd_trace(d: float, radius: float, y0: float, slope0: float, trips: int,
              allow_unstable: bool = False) -> tuple[RunReport, list]:
    rows = trace_rows(d, radius, y0, slope0, trips, allow_unstable)
    report = RunReport("trace", {"d": d, "radius": radius, "y0": y0, "slope0": slope0, "trips": trips})
    cfg = cavity.CavityConfig(d, radius)
    final = rows[-1]
    report.outputs = {"verdict": cavity.stability(cfg), "rows": len(rows),
                      "final_y": final[1], "final_slope": final[2]}
    if cavity.stability(cfg) == cavity.STABLE:
        expected = cavity.propagate_ray(cavity.n_round_trips(cfg, trips), cavity.RayState(y0, slope0))
        report.add_check("final ray vs closed-form N trips",
                         max(abs(expected.y - final[1]), abs(expected.slope - final[2])), verify.POWER)
    return report, rows


def cmd_verify(grid: int = 12, tol: float | None = None) -> RunReport:
    suites = verify.run_all(grid, tol)
    report = RunReport("verify", {"grid": grid, "tol": tol})
    report.outputs = {
        "suites": {s.name: {"max_residual": s.max_residual, "passed": s.passed} for s in suites},
        "passed": all(s.passed for s in suites),
    }
    for suite, check in verify.iter_checks(suites):
        report.add_check(f"{suite.name}: {check.name}", check.residual, check.tolerance,
                         kind=check.kind, where=check.where)
    return report


def _verify_text(report: RunReport) -> str:
    lines = [f"verify: grid={report.inputs['grid']} tol={report.inputs['tol'] or 'default'}"]
    for c in report.checks:
        status = "PASS" if c["passed"] else "FAIL"
        line = f"  [{status}] {c['name']}: {c['residual']:.3e} <= {c['tolerance']:.1e}"
        if not c["passed"] and c["where"]:
            line += "  at " + ", ".join(f"{k}={v:.6g}" for k, v in c["where"].items())
        lines.append(line)
    for name, s in report.outputs["suites"].items():
        lines.append(f"{name}: max residual {s['max_residual']:.3e} {'ok' if s['passed'] else 'FAILED'}")
    lines.append("all checks passed" if report.outputs["passed"] else "verification FAILED")
    return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="wigner-cavity", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    w = sub.add_parser("wigner", help="Wigner angle of the three-boost triangle")
    w.add_argument("--eta", type=_finite_float, required=True, help="rapidity of the first boost")
    w.add_argument("--theta", type=_finite_float, required=True, help="angle between P_b and P_c")
    w.add_argument("--degrees", action="store_true", help="angles in and out in degrees")
    w.add_argument("--json", action="store_true")

    c = sub.add_parser("cavity", help="analyse a cavity with two identical mirrors")
    c.add_argument("--d", type=_positive_float, required=True, help="mirror separation")
    c.add_argument("--radius", type=_positive_float, required=True, help="mirror radius of curvature")
    c.add_argument("--trips", type=_nonneg_int, default=1)
    c.add_argument("--json", action="store_true")

    t = sub.add_parser("trace", help="trace a ray over repeated round trips (CSV)")
    t.add_argument("--d", type=_positive_float, required=True)
    t.add_argument("--radius", type=_positive_float, required=True)
    t.add_argument("--y0", type=_finite_float, required=True, help="initial height (length unit of d)")
    t.add_argument("--slope0", type=_finite_float, required=True, help="initial slope (dimensionless)")
    t.add_argument("--trips", type=_positive_int, required=True)
    t.add_argument("--csv", metavar="PATH", help="write CSV here instead of standard output")
    t.add_argument("--allow-unstable", action="store_true", help="trace even if the orbit diverges")
    t.add_argument("--json", action="store_true", help="report summary as JSON")

    v = sub.add_parser("verify", help="run every invariant suite over a parameter grid")
    v.add_argument("--grid", type=_grid_density, default=12)
    v.add_argument("--tol", type=_positive_float, default=None, help="override every absolute tolerance")
    v.add_argument("--json", action="store_true")
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    out = sys.stdout
    if args.command == "wigner":
        report = cmd_wigner(args.eta, args.theta, args.degrees)
    elif args.command == "cavity":
        report = cmd_cavity(args.d, args.radius, args.trips)
    elif args.command == "trace":
        try:
            report, rows = cmd_trace(args.d, args.radius, args.y0, args.slope0, args.trips, args.allow_unstable)
        except cavity.CavityStabilityError as exc:
            print(f"trace: refusing to trace, {exc}; the orbit is not bounded "
                  "(pass --allow-unstable to trace anyway)", file=sys.stderr)
            return EXIT_DOMAIN
        if args.csv:
            with open(args.csv, "w", newline="") as fh:
                write_csv(rows, fh)
        else:
            buf = io.StringIO()
            write_csv(rows, buf)
            out.write(buf.getvalue())
            out = sys.stderr
    else:
        report = cmd_verify(args.grid, args.tol)
        print(report.to_json() if args.json else _verify_text(report), file=out)
        return EXIT_OK if report.outputs["passed"] else EXIT_VERIFY

    print(report.to_json() if args.json else report.to_text(), file=out)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
