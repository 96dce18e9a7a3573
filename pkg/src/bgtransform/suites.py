"""
Named verification suites shared by the command line and the acceptance
tests. Every suite is a pure function of its arguments; random samples
come from fixed seeds so reports are reproducible byte for byte.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bargir import bg_gram_report, omega
from .coherent import (
    basis_mapping_error,
    generating_identity_residual,
    isometry_report,
    overlap,
    resolution_report,
)
from .hardy import CoeffVector, gram_report, negative_frequency_energy
from .quadrature import planar_rule, real_line_rule
from .report import VerificationReport
from .specfun import Sigma, hyp0f1

SUITES = ("hardy-gram", "bg-gram", "kernel-identity", "eq57", "paley-wiener",
          "isometry", "resolution")
# descriptive aliases accepted by the command line
ALIASES = {"generating-identity": "eq57"}

# per-suite default tolerances; a user tolerance overrides all of them
DEFAULT_TOL = {
    "hardy-gram": 1e-8,
    "bg-gram": 1e-8,
    "kernel-identity": 1e-10,
    "eq57": 1e-10,
    "paley-wiener": 1e-6,
    "isometry": 1e-6,
    "resolution": 1e-6,
}

SEED = 20240917


@dataclass(frozen=True)
class SuiteConfig:
    sigma: Sigma
    n_max: int = 8
    line_points: int = 400
    n_radial: int = 200
    n_angular: int = 64
    tol: float | None = None


def _tol(cfg: SuiteConfig, name: str) -> float:
    return cfg.tol if cfg.tol is not None else DEFAULT_TOL[name]


def sample_disk(rng: np.random.Generator, count: int, radius: float) -> np.ndarray:
    """Points uniformly distributed in the disk |z| <= radius."""
    r = radius * np.sqrt(rng.uniform(0.0, 1.0, count))
    return r * np.exp(2j * np.pi * rng.uniform(0.0, 1.0, count))


def kernel_identity_report(sigma: Sigma, r_max: float = 5.0, count: int = 50,
                           tolerance: float = 1e-10) -> VerificationReport:
    """0F1(; 2 sigma; r^2) against the Bessel form of omega, relative to omega."""
    rows, dev = [], 0.0
    for r in np.linspace(0.0, r_max, count):
        series = hyp0f1(sigma.two_sigma, complex(r * r)).real
        closed = omega(sigma, complex(r))
        dev = max(dev, abs(series - closed) / closed)
        rows.append(((float(r),), series, closed))
    return VerificationReport(f"kernel-identity[2s={sigma.two_sigma}]", dev, tolerance, rows,
                              {"r_max": r_max, "count": count})


def generating_identity_report(sigma: Sigma, n_max: int = 40, count: int = 20, z_max: float = 2.0,
                x_max: float = 10.0, tolerance: float = 1e-10, seed: int = SEED) -> VerificationReport:
    """Generating-identity residuals at random (z, x) with |z| <= z_max."""
    rng = np.random.default_rng(seed)
    zs = sample_disk(rng, count, z_max)
    xs = rng.uniform(-x_max, x_max, count)
    rows, dev = [], 0.0
    for z, x in zip(zs, xs):
        res = generating_identity_residual(sigma, complex(z), float(x), n_max)
        dev = max(dev, res)
        rows.append(((complex(z), float(x)), res, 0.0))
    return VerificationReport(f"eq57[2s={sigma.two_sigma}]", dev, tolerance, rows,
                              {"n_max": n_max})


def paley_wiener_report(sigma: Sigma, n_max: int = 8, tolerance: float = 1e-6) -> VerificationReport:
    """Negative-frequency energy fraction of phi_0 ... phi_{n_max}."""
    rows = [((n,), negative_frequency_energy(n, sigma), 0.0) for n in range(n_max + 1)]
    dev = max(v for _, v, _ in rows)
    return VerificationReport(f"paley-wiener[2s={sigma.two_sigma}]", dev, tolerance, rows,
                              {"n_max": n_max})


def basis_mapping_report(sigma: Sigma, n_max: int = 8, count: int = 20, z_max: float = 3.0,
                         line_points: int = 400, tolerance: float = 1e-6,
                         seed: int = SEED) -> VerificationReport:
    """max |T[phi_n](z) - Phi_n(z)| over random z in the disk |z| <= z_max."""
    zs = sample_disk(np.random.default_rng(seed), count, z_max)
    line = real_line_rule(line_points)
    rows = [((n,), basis_mapping_error(sigma, n, zs, line), 0.0) for n in range(n_max + 1)]
    dev = max(v for _, v, _ in rows)
    return VerificationReport(f"basis-mapping[2s={sigma.two_sigma}]", dev, tolerance, rows,
                              {"n_max": n_max, "count": count, "z_max": z_max})


def normalization_report(sigma: Sigma, count: int = 10, z_max: float = 3.0, line_points: int = 400,
                         tolerance: float = 1e-6, seed: int = SEED) -> VerificationReport:
    """int |<x|z, sigma>|^2 dx against 1 at random z."""
    zs = sample_disk(np.random.default_rng(seed + 1), count, z_max)
    line = real_line_rule(line_points)
    rows = []
    for z in zs:
        rows.append(((complex(z),), overlap(sigma, complex(z), complex(z), line).real, 1.0))
    dev = max(abs(v - 1.0) for _, v, _ in rows)
    return VerificationReport(f"cs-normalization[2s={sigma.two_sigma}]", dev, tolerance, rows,
                              {"count": count, "z_max": z_max})


def random_coeffs(sigma: Sigma, degree: int, count: int, seed: int = SEED) -> list[CoeffVector]:
    rng = np.random.default_rng(seed + 2)
    out = []
    for _ in range(count):
        c = rng.normal(size=degree + 1) + 1j * rng.normal(size=degree + 1)
        out.append(CoeffVector("hardy_phi", sigma, tuple(c / np.linalg.norm(c))))
    return out


def run_suite(name: str, cfg: SuiteConfig) -> list[VerificationReport]:
    """Reports of one named suite."""
    s = cfg.sigma
    tol = _tol(cfg, name)
    if name == "hardy-gram":
        return [gram_report(s, min(cfg.n_max, 16), real_line_rule(cfg.line_points), tol)]
    if name == "bg-gram":
        n = min(cfg.n_max, 12)
        angular = max(cfg.n_angular, 2 * n + 2)
        return [bg_gram_report(s, n, planar_rule(s, cfg.n_radial, angular, max_degree=n), tol)]
    if name == "kernel-identity":
        return [kernel_identity_report(s, tolerance=tol)]
    if name == "eq57":
        return [generating_identity_report(s, tolerance=tol)]
    if name == "paley-wiener":
        return [paley_wiener_report(s, min(cfg.n_max, 8), tol)]
    if name == "isometry":
        n = min(cfg.n_max, 8)
        line = real_line_rule(cfg.line_points)
        planar = planar_rule(s, cfg.n_radial, max(cfg.n_angular, 2 * n + 2), max_degree=n)
        reports = [basis_mapping_report(s, n, line_points=cfg.line_points, tolerance=tol),
                   normalization_report(s, line_points=cfg.line_points, tolerance=tol)]
        for k, c in enumerate(random_coeffs(s, n, 5)):
            rep = isometry_report(s, c, line, planar, tol)
            rep.name = f"{rep.name}#{k}"
            reports.append(rep)
        return reports
    if name == "resolution":
        n = min(cfg.n_max, 6)
        planar = planar_rule(s, cfg.n_radial, max(cfg.n_angular, 2 * n + 2), max_degree=n)
        return [resolution_report(s, n, planar, real_line_rule(cfg.line_points), tol)]
    raise ValueError(f"unknown suite {name!r}")


def run_suites(names, cfg: SuiteConfig) -> list[VerificationReport]:
    out = []
    for name in names:
        out.extend(run_suite(name, cfg))
    return out


def passed_all(reports) -> bool:
    return all(r.passed for r in reports)


def describe(reports) -> str:
    return "\n".join(r.summary() for r in reports)


__all__ = [
    "SUITES", "ALIASES", "DEFAULT_TOL", "SuiteConfig", "run_suite", "run_suites", "passed_all",
    "kernel_identity_report", "generating_identity_report", "paley_wiener_report", "basis_mapping_report",
    "normalization_report", "random_coeffs", "sample_disk", "describe",
]
