"""
Command-line front end.

    bgtransform eval hardy-basis --two-sigma 2 --n 3 --grid -5:5:101
    bgtransform transform --two-sigma 1 --coeffs f.txt --z-grid 3:10:16
    bgtransform verify all --two-sigma 1 --out report.json

Exit status: 0 on success, 1 if any verification suite fails, 2 on usage
or input errors, 3 on numerical failure.
"""
from __future__ import annotations

import argparse
import io
import json
import math
import sys
from dataclasses import dataclass

import numpy as np

from . import __version__
from .bargir import bg_basis, omega
from .coherent import cs_wavefunction, isometry_report, transform, transform_kernel
from .errors import AccuracyError, DomainError, RangeError
from .hardy import CoeffVector, HardyFunction, hardy_basis
from .quadrature import IntegrandError, planar_rule, real_line_rule
from .report import dumps_reports
from .specfun import MAX_DEGREE, Sigma
from .suites import ALIASES, SUITES, SuiteConfig, passed_all, run_suites

EXIT_OK, EXIT_FAILED, EXIT_USAGE, EXIT_NUMERIC = 0, 1, 2, 3

TARGETS = ("hardy-basis", "bg-basis", "omega", "cs-wavefunction", "transform-kernel")
X_TARGETS = ("hardy-basis", "cs-wavefunction", "transform-kernel")
Z_TARGETS = ("bg-basis", "omega", "cs-wavefunction", "transform-kernel")


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    command: str
    sigma: Sigma
    n: int
    n_max: int
    grid: tuple[float, float, int]
    z_grid: tuple[float, int, int]
    line_points: int
    n_radial: int
    n_angular: int
    tol: float | None
    fmt: str
    out: str | None


def _parse_grid(text: str) -> tuple[float, float, int]:
    try:
        lo, hi, count = text.split(":")
        spec = (float(lo), float(hi), int(count))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected min:max:count, got {text!r}") from None
    if spec[2] < 1 or not (math.isfinite(spec[0]) and math.isfinite(spec[1])):
        raise argparse.ArgumentTypeError("grid count must be >= 1 and bounds finite")
    return spec


def _parse_z_grid(text: str) -> tuple[float, int, int]:
    try:
        rmax, nr, nt = text.split(":")
        spec = (float(rmax), int(nr), int(nt))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected rmax:nr:ntheta, got {text!r}") from None
    if spec[1] < 1 or spec[2] < 1 or not (math.isfinite(spec[0]) and spec[0] >= 0):
        raise argparse.ArgumentTypeError("z-grid counts must be >= 1 and rmax >= 0")
    return spec


def _positive_float(text: str) -> float:
    v = float(text)
    if not (v > 0 and math.isfinite(v)):
        raise argparse.ArgumentTypeError("tolerance must be positive")
    return v


def _positive_int(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("expected an integer >= 1")
    return v


def _nonneg_int(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("expected an integer >= 0")
    return v


def x_points(grid) -> np.ndarray:
    lo, hi, count = grid
    return np.linspace(lo, hi, count)


def z_points(z_grid) -> np.ndarray:
    """Polar grid r_k e^{i theta_j}; the origin appears once when included."""
    rmax, nr, nt = z_grid
    radii = np.linspace(0.0, rmax, nr) if nr > 1 else np.array([rmax])
    theta = 2 * np.pi * np.arange(nt) / nt
    pts = []
    for r in radii:
        if r == 0:
            pts.append(0j)
        else:
            pts.extend(r * np.exp(1j * theta))
    return np.array(pts, dtype=complex)


def read_coeffs(path: str, sigma: Sigma) -> CoeffVector:
    """One complex coefficient per line as ``re im``; blank and # lines skipped."""
    entries = []
    try:
        with open(path) as fh:
            for lineno, line in enumerate(fh, 1):
                line = line.strip()
                if not line or line.startswith("#"):
                    continue
                parts = line.split()
                if len(parts) != 2:
                    raise UsageError(f"{path}:{lineno}: expected 're im'")
                try:
                    entries.append(complex(float(parts[0]), float(parts[1])))
                except ValueError:
                    raise UsageError(f"{path}:{lineno}: cannot parse {line!r}") from None
    except OSError as exc:
        raise UsageError(str(exc)) from None
    try:
        return CoeffVector("hardy_phi", sigma, tuple(entries))
    except DomainError as exc:
        raise UsageError(f"{path}: {exc}") from None


def _fmt(v: float) -> str:
    return format(float(v), ".17g")


def _header(cfg: RunConfig, extra: list[str]) -> list[str]:
    lines = [f"bgtransform {__version__}", f"command {cfg.command}",
             f"two_sigma {cfg.sigma.two_sigma}"]
    return lines + extra


def _render(cfg: RunConfig, header: list[str], columns: list[str], rows, trailer: dict | None = None) -> str:
    """CSV with # header lines, or a JSON object; complex values are already split."""
    if cfg.fmt == "csv":
        buf = io.StringIO()
        for h in header:
            buf.write(f"# {h}\n")
        buf.write(",".join(columns) + "\n")
        for row in rows:
            buf.write(",".join(_fmt(v) for v in row) + "\n")
        for k, v in (trailer or {}).items():
            buf.write(f"# {k} {_fmt(v)}\n")
        return buf.getvalue()
    doc = {"header": header, "columns": columns, "rows": [[float(v) for v in row] for row in rows]}
    if trailer:
        doc["trailer"] = {k: float(v) for k, v in trailer.items()}
    return json.dumps(doc, indent=1) + "\n"


def _emit(cfg: RunConfig, text: str) -> None:
    if cfg.out:
        with open(cfg.out, "w", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_eval(cfg: RunConfig, target: str) -> int:
    s, n = cfg.sigma, cfg.n
    if target in ("hardy-basis", "bg-basis") and n > MAX_DEGREE:
        raise UsageError(f"--n must be <= {MAX_DEGREE}")
    header = [f"target {target}"]
    xs = x_points(cfg.grid) if target in X_TARGETS else None
    zs = z_points(cfg.z_grid) if target in Z_TARGETS else None
    if target in ("hardy-basis", "bg-basis"):
        header.append(f"n {n}")
    if xs is not None:
        header.append("grid {}:{}:{}".format(_fmt(cfg.grid[0]), _fmt(cfg.grid[1]), cfg.grid[2]))
    if zs is not None:
        header.append("z_grid {}:{}:{}".format(_fmt(cfg.z_grid[0]), cfg.z_grid[1], cfg.z_grid[2]))

    rows = []
    if target == "hardy-basis":
        vals = hardy_basis(n, s, xs)
        columns = ["x", "re", "im"]
        rows = [(x, v.real, v.imag) for x, v in zip(xs, np.atleast_1d(vals))]
    elif target in ("bg-basis", "omega"):
        vals = bg_basis(n, s, zs) if target == "bg-basis" else omega(s, zs)
        vals = np.asarray(vals, dtype=complex)
        columns = ["z_re", "z_im", "re", "im"]
        rows = [(z.real, z.imag, v.real, v.imag) for z, v in zip(zs, vals)]
    else:
        fn = cs_wavefunction if target == "cs-wavefunction" else transform_kernel
        table = np.asarray(fn(s, zs, xs), dtype=complex).reshape(zs.size, xs.size)
        columns = ["z_re", "z_im", "x", "re", "im"]
        rows = [(z.real, z.imag, x, table[i, j].real, table[i, j].imag)
                for i, z in enumerate(zs) for j, x in enumerate(xs)]
    _check_finite(rows)
    _emit(cfg, _render(cfg, _header(cfg, header), columns, rows))
    return EXIT_OK


def _check_finite(rows) -> None:
    for row in rows:
        if not all(math.isfinite(v) for v in row):
            raise RangeError(f"non-finite value in output row {row}")


def cmd_transform(cfg: RunConfig, coeffs: CoeffVector) -> int:
    s = cfg.sigma
    zs = z_points(cfg.z_grid)
    line = real_line_rule(cfg.line_points)
    header = ["z_grid {}:{}:{}".format(_fmt(cfg.z_grid[0]), cfg.z_grid[1], cfg.z_grid[2]),
              f"degree {len(coeffs) - 1}", f"line_points {cfg.line_points}"]
    if len(coeffs) == 0:
        vals = np.zeros(zs.size, dtype=complex)
        trailer = {"norm_f": 0.0, "norm_Tf": 0.0}
    else:
        vals = transform(HardyFunction(coeffs=coeffs), s, zs, line)
        deg = len(coeffs) - 1
        planar = planar_rule(s, cfg.n_radial, max(cfg.n_angular, 2 * deg + 2), max_degree=deg)
        rep = isometry_report(s, coeffs, line, planar)
        trailer = {"norm_f": rep.table[0][1], "norm_Tf": rep.table[1][1]}
    rows = [(z.real, z.imag, v.real, v.imag) for z, v in zip(zs, vals)]
    _check_finite(rows)
    _emit(cfg, _render(cfg, _header(cfg, header), ["z_re", "z_im", "re", "im"], rows, trailer))
    return EXIT_OK


def cmd_verify(cfg: RunConfig, suite: str) -> int:
    names = SUITES if suite == "all" else (ALIASES.get(suite, suite),)
    scfg = SuiteConfig(cfg.sigma, cfg.n_max, cfg.line_points, cfg.n_radial, cfg.n_angular, cfg.tol)
    reports = run_suites(names, scfg)
    if cfg.fmt == "json":
        text = dumps_reports(reports)
    else:
        buf = io.StringIO()
        for h in _header(cfg, [f"suite {suite}"]):
            buf.write(f"# {h}\n")
        buf.write("name,index,re,im,ref_re,ref_im\n")
        for r in reports:
            buf.write(f"# {r.summary()}\n")
            for idx, val, ref in r.table:
                val, ref = complex(val), complex(ref)
                key = ";".join(str(i) for i in np.atleast_1d(np.asarray(idx, dtype=object)))
                buf.write(",".join([r.name, key, _fmt(val.real), _fmt(val.imag),
                                    _fmt(ref.real), _fmt(ref.imag)]) + "\n")
        text = buf.getvalue()
    _emit(cfg, text)
    for r in reports:
        print(r.summary(), file=sys.stderr)
    return EXIT_OK if passed_all(reports) else EXIT_FAILED


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--two-sigma", type=_positive_int, required=True,
                        help="the integer 2*sigma (>= 1)")
    common.add_argument("--n", type=_nonneg_int, default=0, help="basis index")
    common.add_argument("--n-max", type=_nonneg_int, default=8)
    common.add_argument("--grid", type=_parse_grid, default=(-5.0, 5.0, 11),
                        help="real-line grid min:max:count")
    common.add_argument("--z-grid", type=_parse_z_grid, default=(3.0, 4, 8),
                        help="polar grid rmax:nr:ntheta")
    common.add_argument("--line-points", type=_positive_int, default=400)
    common.add_argument("--n-radial", type=_positive_int, default=200)
    common.add_argument("--n-angular", type=_positive_int, default=64)
    common.add_argument("--tol", type=_positive_float, default=None,
                        help="override every suite tolerance")
    common.add_argument("--format", choices=("csv", "json"), default=None)
    common.add_argument("--out", default=None, help="output path (default stdout)")

    p = argparse.ArgumentParser(prog="bgtransform", description=__doc__.split("\n\n")[0].strip())
    p.add_argument("--version", action="version", version=f"bgtransform {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    pe = sub.add_parser("eval", parents=[common], help="evaluate a basis or kernel on a grid")
    pe.add_argument("target", nargs="?", choices=TARGETS)
    pe.add_argument("--target", dest="target_opt", choices=TARGETS)

    pt = sub.add_parser("transform", parents=[common], help="apply T_sigma to a function")
    pt.add_argument("--coeffs", help="coefficient file, one 're im' per line")
    pt.add_argument("--function", help="built-in function id, e.g. phi3")

    pv = sub.add_parser("verify", parents=[common], help="run verification suites")
    pv.add_argument("suite", nargs="?", choices=SUITES + tuple(ALIASES) + ("all",))
    pv.add_argument("--suite", dest="suite_opt", choices=SUITES + tuple(ALIASES) + ("all",))
    return p


def _builtin_function(name: str, sigma: Sigma) -> CoeffVector:
    if name.startswith("phi") and name[3:].isdigit():
        n = int(name[3:])
        if n <= MAX_DEGREE:
            return CoeffVector("hardy_phi", sigma, (0,) * n + (1,))
    raise UsageError(f"unknown built-in function {name!r} (expected phi<n>)")


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    default_fmt = "json" if args.command == "verify" else "csv"
    cfg = RunConfig(args.command, Sigma(args.two_sigma), args.n, args.n_max, args.grid,
                    args.z_grid, args.line_points, args.n_radial, args.n_angular, args.tol,
                    args.format or default_fmt, args.out)
    try:
        if args.command == "eval":
            target = args.target_opt or args.target
            if target is None:
                raise UsageError("eval needs a target")
            return cmd_eval(cfg, target)
        if args.command == "transform":
            if (args.coeffs is None) == (args.function is None):
                raise UsageError("give exactly one of --coeffs or --function")
            coeffs = (read_coeffs(args.coeffs, cfg.sigma) if args.coeffs
                      else _builtin_function(args.function, cfg.sigma))
            return cmd_transform(cfg, coeffs)
        suite = args.suite_opt or args.suite or "all"
        return cmd_verify(cfg, suite)
    except (UsageError, DomainError) as exc:
        print(f"bgtransform: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (AccuracyError, RangeError, IntegrandError, FloatingPointError, ZeroDivisionError) as exc:
        print(f"bgtransform: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
