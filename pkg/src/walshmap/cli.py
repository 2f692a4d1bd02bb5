"""Command-line interface: parameter reports, map evaluation, grid and
boundary export, and the verification battery.

Exit codes: 0 success, 2 input error, 3 solver nonconvergence, 4 internal
consistency failure (the verify command exits 1 when a check fails).
"""

import argparse
import json
import sys

import numpy as np

from . import errors
from .api import solve
from .mapping import trace_boundary
from .quadrature import QuadConfig
from .verify import CHECK_NAMES, run_checks

GRID_HEADER = "z_re,z_im,w_re,w_im,status,residual"

_INPUT_ERRORS = (errors.OverlapError, errors.DegenerateError, errors.InsideE,
                 errors.NotOnCut, errors.OutsideSupport, errors.PathOnCut,
                 ValueError)
_SOLVER_ERRORS = (errors.NoConvergence, errors.MaxIterExceeded,
                  errors.RootNotBracketed, errors.BracketFailure,
                  errors.RayBracketFailure)
_CONSISTENCY_ERRORS = (errors.CapacityMismatch, errors.SingularSystem,
                       errors.OrderViolation, errors.NormalizationDefect)


def _parse_intervals_arg(text: str) -> list[list[float]]:
    pairs = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        parts = chunk.split(",")
        if len(parts) != 2:
            raise ValueError(f"expected 'lo,hi' pairs separated by ';', got {chunk!r}")
        pairs.append([float(parts[0]), float(parts[1])])
    if not pairs:
        raise ValueError("no intervals given")
    return pairs


def _read_input_file(path: str) -> list[list[float]]:
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    stripped = text.lstrip()
    if stripped.startswith("{"):
        doc = json.loads(text)
        if "intervals" not in doc:
            raise ValueError(f"{path}: missing 'intervals' key")
        return [[float(lo), float(hi)] for lo, hi in doc["intervals"]]
    pairs = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.replace(",", " ").split()
        if len(parts) != 2:
            raise ValueError(f"{path}: expected one 'lo hi' pair per line, got {line!r}")
        pairs.append([float(parts[0]), float(parts[1])])
    if not pairs:
        raise ValueError(f"{path}: no intervals found")
    return pairs


def _intervals_from(args) -> list[list[float]]:
    if args.intervals:
        return _parse_intervals_arg(args.intervals)
    if args.input:
        return _read_input_file(args.input)
    raise ValueError("provide --intervals or --input")


def _parse_z(text: str) -> complex:
    parts = text.split(",")
    if len(parts) == 1:
        return complex(float(parts[0]), 0.0)
    if len(parts) == 2:
        return complex(float(parts[0]), float(parts[1]))
    raise ValueError(f"expected 're' or 're,im' for --z, got {text!r}")


def _emit(text: str, path: str | None):
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")


def _params_report(wm) -> dict:
    E, data, m, dom = wm.domain, wm.green, wm.exponents, wm.lemniscatic
    inside = [lo <= aj <= hi for aj, (lo, hi) in zip(dom.centers, E.components)]
    warnings = [
        f"center a_{j + 1} = {aj!r} lies outside component {j + 1}"
        for j, (aj, ok) in enumerate(zip(dom.centers, inside)) if not ok
    ]
    return {
        "endpoints": list(E.endpoints),
        "component_count": E.ell,
        "numerator_coeffs": list(data.coeffs),
        "critical_points": list(data.roots),
        "green_at_critical": list(data.green_at_roots),
        "capacity": {"value": data.capacity,
                     "discrepancy": data.capacity_mismatch},
        "exponents": list(m.m),
        "normalization_defect": m.defect,
        "alpha": data.alpha,
        "centers": list(dom.centers),
        "critical_points_image": list(dom.crit_w),
        "boundary_abscissae": list(dom.boundary_c),
        "outer_iterations": dom.outer_iterations,
        "inner_residual": dom.inner_residual,
        "centers_in_components": inside,
        "warnings": warnings,
    }


def _pretty_params(report: dict) -> str:
    lines = []

    def row(label, value):
        if isinstance(value, list):
            value = "  ".join(f"{v!r}" for v in value)
        lines.append(f"{label:<24} {value}")

    row("endpoints", report["endpoints"])
    row("components", report["component_count"])
    row("numerator coeffs", report["numerator_coeffs"])
    row("critical points (E)", report["critical_points"])
    row("green at critical", report["green_at_critical"])
    row("capacity", repr(report["capacity"]["value"]))
    row("  formula discrepancy", repr(report["capacity"]["discrepancy"]))
    row("exponents", report["exponents"])
    row("alpha", repr(report["alpha"]))
    row("centers", report["centers"])
    row("critical points (L)", report["critical_points_image"])
    row("boundary abscissae", report["boundary_abscissae"])
    row("outer iterations", report["outer_iterations"])
    row("inner residual", repr(report["inner_residual"]))
    row("centers in components", report["centers_in_components"])
    for w in report["warnings"]:
        lines.append(f"warning: {w}")
    return "\n".join(lines) + "\n"


def _cmd_params(args) -> int:
    wm = solve(_intervals_from(args), _quad_config(args), args.abstol, args.reltol)
    report = _params_report(wm)
    text = _pretty_params(report) if args.pretty else json.dumps(report, indent=2) + "\n"
    _emit(text, args.output)
    return 0


def _cmd_phi(args) -> int:
    wm = solve(_intervals_from(args), _quad_config(args), args.abstol, args.reltol)
    res = wm.map_point(_parse_z(args.z), tol=args.tol)
    report = {
        "z": [_parse_z(args.z).real, _parse_z(args.z).imag],
        "w": [res.w.real, res.w.imag],
        "residual": res.residual,
        "iterations": res.iterations,
        "branch": res.branch,
        "index": res.index,
        "near_boundary": res.near_boundary,
    }
    _emit(json.dumps(report, indent=2) + "\n", args.output)
    return 0


def _range(text: str) -> tuple[float, float]:
    lo, hi = (float(v) for v in text.split(","))
    if not hi > lo:
        raise ValueError(f"empty range {text!r}")
    return lo, hi


def _cmd_grid(args) -> int:
    if args.nx < 1 or args.ny < 1:
        raise ValueError("grid counts must be >= 1")
    wm = solve(_intervals_from(args), _quad_config(args), args.abstol, args.reltol)
    xs = np.linspace(*_range(args.x_range), args.nx)
    ys = np.linspace(*_range(args.y_range), args.ny)
    zs = [complex(x, y) for y in ys for x in xs]  # row-major in y
    points = wm.map_grid(zs, tol=args.tol)
    if args.format == "csv":
        rows = [GRID_HEADER]
        for p in points:
            if p.result is None:
                rows.append(f"{p.z.real!r},{p.z.imag!r},,,{p.status},")
            else:
                rows.append(f"{p.z.real!r},{p.z.imag!r},{p.result.w.real!r},"
                            f"{p.result.w.imag!r},{p.status},{p.result.residual!r}")
        _emit("\n".join(rows) + "\n", args.output)
    else:
        doc = [{"z": [p.z.real, p.z.imag], "status": p.status,
                "w": None if p.result is None else [p.result.w.real, p.result.w.imag],
                "residual": None if p.result is None else p.result.residual}
               for p in points]
        _emit(json.dumps(doc, indent=2) + "\n", args.output)
    return 0 if any(p.status == "converged" for p in points) else 3


def _cmd_boundary(args) -> int:
    wm = solve(_intervals_from(args), _quad_config(args), args.abstol, args.reltol)
    traces = trace_boundary(wm.lemniscatic, args.points)
    if args.format == "csv":
        rows = ["component,w_re,w_im"]
        for j, tr in enumerate(traces):
            if tr.sampled:
                rows += [f"{j + 1},{float(w.real)!r},{float(w.imag)!r}"
                         for w in tr.points]
        _emit("\n".join(rows) + "\n", args.output)
    else:
        doc = [{"center": float(tr.center), "sampled": tr.sampled,
                "points": None if tr.points is None else
                [[float(w.real), float(w.imag)] for w in tr.points]}
               for tr in traces]
        _emit(json.dumps(doc, indent=2) + "\n", args.output)
    return 0


def _cmd_verify(args) -> int:
    names = args.only.split(",") if args.only else None
    results = run_checks(names, quad_tol=args.quad_tol, abstol=args.abstol,
                         reltol=args.reltol, seed=args.seed)
    for r in results:
        print(f"{'PASS' if r.passed else 'FAIL'} {r.name:<18} "
              f"[{r.seconds:6.2f}s] {r.detail}")
    failed = [r.name for r in results if not r.passed]
    if failed:
        print(f"{len(failed)} of {len(results)} checks failed: {', '.join(failed)}")
        return 1
    print(f"all {len(results)} checks passed")
    return 0


def _quad_config(args) -> QuadConfig:
    return QuadConfig(abs_tol=args.quad_tol, rel_tol=args.quad_tol)


def _add_common(parser):
    parser.add_argument("--intervals",
                        help="inline interval list 'b1,b2;b3,b4;...'")
    parser.add_argument("--input",
                        help="file with {'intervals': [[lo,hi],...]} or 'lo hi' lines")
    parser.add_argument("--quad-tol", type=float, default=1e-12,
                        help="quadrature tolerance (default 1e-12)")
    parser.add_argument("--abstol", type=float, default=1e-13,
                        help="centers iteration absolute tolerance")
    parser.add_argument("--reltol", type=float, default=1e-13,
                        help="centers iteration relative tolerance")
    parser.add_argument("--output", help="write the report to this file")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="walshmap",
        description="Lemniscatic canonical domains and the normalized "
                    "conformal map for unions of real intervals.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("params", help="compute and report all domain parameters")
    _add_common(p)
    p.add_argument("--pretty", action="store_true", help="human-readable layout")
    p.set_defaults(func=_cmd_params)

    p = sub.add_parser("phi", help="evaluate the conformal map at one point")
    _add_common(p)
    p.add_argument("--z", required=True, help="evaluation point 're' or 're,im'")
    p.add_argument("--tol", type=float, default=1e-12, help="map solver tolerance")
    p.set_defaults(func=_cmd_phi)

    p = sub.add_parser("grid", help="map a rectangular grid and export the rows")
    _add_common(p)
    p.add_argument("--x-range", required=True, help="'lo,hi' real range")
    p.add_argument("--y-range", required=True, help="'lo,hi' imaginary range")
    p.add_argument("--nx", type=int, required=True)
    p.add_argument("--ny", type=int, required=True)
    p.add_argument("--tol", type=float, default=1e-12)
    p.add_argument("--format", choices=("csv", "doc"), default="csv")
    p.set_defaults(func=_cmd_grid)

    p = sub.add_parser("boundary", help="sample the boundary curves of L")
    _add_common(p)
    p.add_argument("--points", type=int, default=64, help="rays per component")
    p.add_argument("--format", choices=("csv", "doc"), default="doc")
    p.set_defaults(func=_cmd_boundary)

    p = sub.add_parser("verify", help="run the regression battery")
    p.add_argument("--only", help=f"comma-separated check names "
                                  f"({', '.join(CHECK_NAMES)})")
    p.add_argument("--quad-tol", type=float, default=1e-12)
    p.add_argument("--abstol", type=float, default=1e-13)
    p.add_argument("--reltol", type=float, default=1e-13)
    p.add_argument("--seed", type=int, default=2025,
                   help="seed for the random stress checks")
    p.set_defaults(func=_cmd_verify)
    return parser


def _error_record(exc: Exception, code: int) -> str:
    return json.dumps({"error": {"type": type(exc).__name__,
                                 "message": str(exc), "exit_code": code}})


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except _INPUT_ERRORS as exc:
        print(_error_record(exc, 2), file=sys.stderr)
        return 2
    except _SOLVER_ERRORS as exc:
        print(_error_record(exc, 3), file=sys.stderr)
        return 3
    except _CONSISTENCY_ERRORS as exc:
        print(_error_record(exc, 4), file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
