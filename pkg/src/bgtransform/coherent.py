"""
Coherent states |z, sigma> in H^2_+(R), the transform T_sigma with its
closed-form kernel, and the identity-resolution machinery.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .bargir import bg_basis, log_omega, omega
from .errors import DomainError
from .hardy import CoeffVector, HardyFunction, evaluate
from .quadrature import PlanarRule, QuadratureRule, fsum_complex, planar_rule, real_line_rule
from .report import VerificationReport
from .specfun import MAX_DEGREE, Sigma, hyp1f1, hyp2f1_terminating, pochhammer

__all__ = [
    "CoherentState",
    "VerificationReport",
    "cs_wavefunction",
    "cs_wavefunction_series",
    "generating_identity_residual",
    "transform_kernel",
    "transform",
    "overlap",
    "isometry_report",
    "resolution_report",
]


@dataclass(frozen=True)
class CoherentState:
    sigma: Sigma
    z: complex

    def wavefunction(self, x):
        return cs_wavefunction(self.sigma, self.z, x)


def _grid(sigma, z, x, normalized):
    z_arr = np.asarray(z, dtype=complex)
    x_arr = np.asarray(x, dtype=float)
    shift = 0.5 * log_omega(sigma, z_arr.ravel()) if normalized else None
    out = kernels.kummer_grid(sigma, z_arr.ravel(), x_arr.ravel(), shift)
    return out.reshape(z_arr.shape + x_arr.shape)


def cs_wavefunction(sigma: Sigma, z, x):
    """<x | z, sigma>, closed form through e^z 1F1(sigma + 1/2; 2 sigma; -z/(1/2 - ix)).

    ``z`` and ``x`` may be arrays; the result has shape z.shape + x.shape.
    The normalization omega^(-1/2) is folded into the exponent, so large
    |z| neither overflows nor underflows.
    """
    out = _grid(sigma, z, x, normalized=True)
    return complex(out) if out.ndim == 0 else out


def transform_kernel(sigma: Sigma, z, x):
    """K_sigma(z, x) = omega_sigma(z)^(1/2) <x | z, sigma>; shape z.shape + x.shape."""
    out = _grid(sigma, z, x, normalized=False)
    return complex(out) if out.ndim == 0 else out


def cs_wavefunction_series(sigma: Sigma, z: complex, x, n_max: int):
    """Partial sum omega^(-1/2) sum_{n <= n_max} z^n / sqrt((2 sigma)_n n!) phi_n^sigma(x)."""
    if n_max > MAX_DEGREE:
        raise DomainError(f"n_max must be <= {MAX_DEGREE}")
    z = complex(z)
    x_arr = np.asarray(x, dtype=float)
    table = kernels.hardy_table(sigma, n_max, x_arr.ravel())
    coef = np.array([z ** n / math.sqrt(pochhammer(sigma.two_sigma, n) * math.factorial(n))
                     for n in range(n_max + 1)])
    out = (coef @ table) * math.exp(-0.5 * log_omega(sigma, z))
    out = out.reshape(x_arr.shape)
    return complex(out) if out.ndim == 0 else out


def generating_identity_residual(sigma: Sigma, z: complex, x: float, n_max: int) -> float:
    """|sum_{n<=n_max} z^n/n! 2F1(-n, s+1/2; 2s; y) - e^z 1F1(s+1/2; 2s; -z y)|, y = 1/(1/2 - ix)."""
    z = complex(z)
    y = 1.0 / (0.5 - 1j * float(x))
    a, b = sigma.value + 0.5, float(sigma.two_sigma)
    terms = [z ** n / math.factorial(n) * hyp2f1_terminating(n, a, b, y) for n in range(n_max + 1)]
    lhs = fsum_complex(terms)
    rhs = complex(np.exp(z)) * hyp1f1(a, b, -z * y)
    return abs(lhs - rhs)


def _conj_values(f, rule):
    if isinstance(f, HardyFunction):
        vals = evaluate(f, rule.nodes)
    else:
        vals = f(rule.nodes)
    return np.conj(np.broadcast_to(np.asarray(vals, dtype=complex), rule.nodes.shape))


def _row_sums(mat: np.ndarray, vec: np.ndarray) -> np.ndarray:
    # fixed-order compensated reduction per row for bit-reproducible output
    prod = mat * vec[None, :]
    return np.array([fsum_complex(row) for row in prod])


def transform(f, sigma: Sigma, points, rule: QuadratureRule | None = None) -> np.ndarray:
    """T_sigma[f](z) = int K_sigma(z, x) conj(f(x)) dx at each point.

    The conjugate of f is taken exactly as in the defining integral, so
    T_sigma is antilinear: T[c f] = conj(c) T[f].
    """
    rule = rule or real_line_rule(400)
    pts = np.atleast_1d(np.asarray(points, dtype=complex))
    fx = _conj_values(f, rule) * rule.weights
    out = np.empty(pts.size, dtype=complex)
    chunk = 256
    flat = pts.ravel()
    for i in range(0, flat.size, chunk):
        k = kernels.kummer_grid(sigma, flat[i:i + chunk], rule.nodes)
        out[i:i + chunk] = _row_sums(k, fx)
    return out.reshape(pts.shape)


def overlap(sigma: Sigma, z: complex, w: complex, rule: QuadratureRule | None = None) -> complex:
    """<z, sigma | w, sigma> by line quadrature."""
    rule = rule or real_line_rule(400)
    a = cs_wavefunction(sigma, z, rule.nodes)
    b = cs_wavefunction(sigma, w, rule.nodes)
    return fsum_complex(rule.weights * np.conj(a) * b)


def _hardy_norm_sq(f, rule):
    v = np.conj(_conj_values(f, rule))
    return math.fsum(rule.weights * np.abs(v) ** 2)


def isometry_report(sigma: Sigma, coeffs: CoeffVector, line: QuadratureRule | None = None,
                    planar: PlanarRule | None = None, tolerance: float = 1e-6) -> VerificationReport:
    """Compare ||f||_{L^2(R)} with ||T_sigma f||_sigma for f given in the phi^sigma basis."""
    if coeffs.basis_id != "hardy_phi":
        raise DomainError("isometry_report needs hardy_phi coefficients")
    if len(coeffs) - 1 > 12:
        raise DomainError("isometry_report supports degree <= 12")
    deg = max(len(coeffs) - 1, 0)
    line = line or real_line_rule(400)
    planar = planar or planar_rule(sigma, 160, 2 * deg + 4, max_degree=deg)
    f = HardyFunction(coeffs=coeffs)
    norm_f = math.sqrt(_hardy_norm_sq(f, line))
    tf = transform(f, sigma, planar.points.ravel(), line)
    norm_tf = math.sqrt(math.fsum(planar.weights.ravel() * np.abs(tf) ** 2))
    coef_norm = math.sqrt(math.fsum(abs(c) ** 2 for c in coeffs.entries))
    if norm_f == 0:
        dev = abs(norm_tf)
    else:
        dev = abs(norm_tf - norm_f) / norm_f
    table = [(("L2(R)",), norm_f, coef_norm), (("F_sigma",), norm_tf, coef_norm)]
    return VerificationReport(f"isometry[2s={sigma.two_sigma}]", dev, tolerance, table,
                              {"degree": deg, "radius": planar.radius})


def resolution_report(sigma: Sigma, n_max: int, planar: PlanarRule | None = None,
                      line: QuadratureRule | None = None,
                      tolerance: float = 1e-6) -> VerificationReport:
    """M_mn = int d mu_sigma(z) omega(z) <phi_m | z><z | phi_n> against the identity.

    The overlaps <z | phi_n> are line integrals of conj(<x|z>) phi_n(x),
    computed once per planar node; omega is applied through the scaled
    products omega^(1/2) <z|phi_n>.
    """
    if n_max > 6:
        raise DomainError("resolution_report supports n_max <= 6")
    planar = planar or planar_rule(sigma, 160, 16, max_degree=n_max)
    if planar.angular.nodes.size <= 2 * n_max:
        raise DomainError("need n_angular > 2 n_max")
    line = line or real_line_rule(400)
    pts = planar.points.ravel()
    w = planar.weights.ravel()
    phi_w = kernels.hardy_table(sigma, n_max, line.nodes) * line.weights
    sqrt_om = np.exp(0.5 * log_omega(sigma, pts))
    # A[i, n] = omega^(1/2) <z_i | phi_n>
    amp = np.empty((pts.size, n_max + 1), dtype=complex)
    chunk = 256
    for i in range(0, pts.size, chunk):
        cs = cs_wavefunction(sigma, pts[i:i + chunk], line.nodes)
        cs = np.conj(np.atleast_2d(cs))
        for n in range(n_max + 1):
            amp[i:i + chunk, n] = _row_sums(cs, phi_w[n]) * sqrt_om[i:i + chunk]
    rows, dev = [], 0.0
    for m in range(n_max + 1):
        for n in range(n_max + 1):
            val = fsum_complex(w * np.conj(amp[:, m]) * amp[:, n])
            ref = 1.0 if m == n else 0.0
            dev = max(dev, abs(val - ref))
            rows.append(((m, n), val, complex(ref)))
    return VerificationReport(f"resolution[2s={sigma.two_sigma}]", dev, tolerance, rows,
                              {"n_max": n_max, "radius": planar.radius,
                               "n_radial": planar.radial.nodes.size,
                               "n_angular": planar.angular.nodes.size,
                               "line_points": len(line)})


def basis_mapping_error(sigma: Sigma, n: int, points, rule: QuadratureRule | None = None) -> float:
    """max_z |T_sigma[phi_n](z) - Phi_{n,sigma}(z)|."""
    tf = transform(HardyFunction.basis(n, sigma), sigma, points, rule)
    return float(np.max(np.abs(tf - bg_basis(n, sigma, np.asarray(points, dtype=complex)))))
