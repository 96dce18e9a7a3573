"""
The Barut-Girardello space F_sigma(C): measure density, monomial basis,
coefficient norm, reproducing kernel and its diagonal omega_sigma.
"""
from __future__ import annotations

import math

import numpy as np

from .errors import DomainError
from .hardy import CoeffVector
from .quadrature import PlanarRule, bg_density_radial, fsum_complex, planar_rule
from .report import VerificationReport
from .specfun import (
    MAX_DEGREE,
    Sigma,
    bessel_I,
    bessel_I_scaled,
    gamma_half,
    hyp0f1,
    pochhammer,
)

__all__ = [
    "BGFunction",
    "bg_weight",
    "bg_basis",
    "bg_basis_norm",
    "bg_norm",
    "bg_kernel",
    "omega",
    "log_omega",
    "bg_gram_report",
]

# below this modulus omega is 1 + |z|^2/(2 sigma) to double precision
_OMEGA_SMALL = 1e-9


class BGFunction:
    """Entire function sum_n c_n z^n with finitely many coefficients."""

    def __init__(self, sigma: Sigma, coeffs):
        if isinstance(coeffs, CoeffVector):
            if coeffs.basis_id != "bg_monomial":
                raise DomainError("BGFunction needs bg_monomial coefficients")
            self.coeffs = coeffs
        else:
            self.coeffs = CoeffVector("bg_monomial", sigma, tuple(coeffs))

    @property
    def sigma(self) -> Sigma:
        return self.coeffs.sigma

    @classmethod
    def from_basis(cls, sigma: Sigma, entries) -> "BGFunction":
        """Build from coefficients in the orthonormal Phi_{n,sigma} basis."""
        c = [complex(e) * bg_basis_norm(n, sigma) for n, e in enumerate(entries)]
        return cls(sigma, c)

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        out = np.zeros(z.shape, dtype=complex)
        for c in reversed(self.coeffs.entries):
            out = out * z + c
        return complex(out) if out.ndim == 0 else out


def bg_weight(sigma: Sigma, z, literal_weight: bool = False):
    """Density of d mu_sigma against planar Lebesgue measure at z != 0."""
    r = np.abs(np.asarray(z, dtype=complex))
    if np.any(r == 0):
        raise DomainError("bg_weight is singular at z = 0")
    w = bg_density_radial(sigma, r, literal_weight)
    return float(w) if np.ndim(w) == 0 else w


def bg_basis_norm(n: int, sigma: Sigma) -> float:
    """(Gamma(2 sigma) / (n! Gamma(2 sigma + n)))^(1/2) = 1/sqrt(n! (2 sigma)_n)."""
    return 1.0 / math.sqrt(math.factorial(n) * pochhammer(sigma.two_sigma, n))


def bg_basis(n: int, sigma: Sigma, z):
    """Phi_{n,sigma}(z) = Gamma(2 sigma)^(1/2) z^n / (n! Gamma(2 sigma + n))^(1/2)."""
    if n < 0 or n > MAX_DEGREE:
        raise DomainError(f"basis index must be in [0, {MAX_DEGREE}]")
    z = np.asarray(z, dtype=complex)
    out = bg_basis_norm(n, sigma) * z ** n
    return complex(out) if out.ndim == 0 else out


def bg_norm(f: BGFunction) -> float:
    """Coefficient norm (Gamma(2s)^-1 sum |c_n|^2 n! Gamma(2s + n))^(1/2)."""
    ts = f.sigma.two_sigma
    terms = [abs(c) ** 2 * math.factorial(n) * pochhammer(ts, n)
             for n, c in enumerate(f.coeffs.entries)]
    return math.sqrt(math.fsum(terms))


def bg_kernel(sigma: Sigma, z, w):
    """Reproducing kernel 0F1(; 2 sigma; z conj(w))."""
    u = np.asarray(z, dtype=complex) * np.conj(np.asarray(w, dtype=complex))
    if u.ndim == 0:
        return hyp0f1(sigma.two_sigma, complex(u))
    return np.array([hyp0f1(sigma.two_sigma, complex(v)) for v in u.ravel()]).reshape(u.shape)


def _log_omega_scalar(sigma: Sigma, r: float) -> float:
    ts = sigma.two_sigma
    if r < _OMEGA_SMALL:
        return math.log1p(r * r / ts)
    # Gamma(2s) r^(1-2s) I_{2s-1}(2r), with I carried as e^{2r} * scaled
    return (math.log(gamma_half(2 * ts)) + (1 - ts) * math.log(r)
            + math.log(bessel_I_scaled(ts - 1, 2 * r)) + 2 * r)


def log_omega(sigma: Sigma, z):
    """log omega_sigma(z); finite for any |z|."""
    r = np.abs(np.asarray(z, dtype=complex))
    if r.ndim == 0:
        return _log_omega_scalar(sigma, float(r))
    return np.array([_log_omega_scalar(sigma, float(v)) for v in r.ravel()]).reshape(r.shape)


def _omega_scalar(sigma: Sigma, r: float) -> float:
    ts = sigma.two_sigma
    if r < _OMEGA_SMALL:
        return 1.0 + r * r / ts
    if 2 * r > 600:
        return math.exp(_log_omega_scalar(sigma, r))
    return gamma_half(2 * ts) * r ** (1 - ts) * bessel_I(ts - 1, 2 * r)


def omega(sigma: Sigma, z):
    """omega_sigma(z) = Gamma(2 sigma) |z|^(1 - 2 sigma) I_{2 sigma - 1}(2|z|), = 1 at z = 0."""
    r = np.abs(np.asarray(z, dtype=complex))
    if r.ndim == 0:
        return _omega_scalar(sigma, float(r))
    return np.array([_omega_scalar(sigma, float(v)) for v in r.ravel()]).reshape(r.shape)


def bg_gram_report(sigma: Sigma, n_max: int, rule: PlanarRule | None = None,
                   tolerance: float = 1e-8) -> VerificationReport:
    """Gram matrix of Phi_0..Phi_{n_max} under the planar rule for d mu_sigma."""
    if n_max > 12:
        raise DomainError("bg_gram_report supports n_max <= 12")
    rule = rule or planar_rule(sigma, 200, 32, max_degree=n_max)
    if rule.angular.nodes.size <= 2 * n_max:
        raise DomainError("need n_angular > 2 n_max")
    pts = rule.points.ravel()
    w = rule.weights.ravel()
    phi = np.array([bg_basis(n, sigma, pts) for n in range(n_max + 1)])
    rows, dev = [], 0.0
    for m in range(n_max + 1):
        for n in range(n_max + 1):
            g = fsum_complex(w * phi[m] * np.conj(phi[n]))
            ref = 1.0 if m == n else 0.0
            dev = max(dev, abs(g - ref))
            rows.append(((m, n), g, complex(ref)))
    return VerificationReport(f"bg-gram[2s={sigma.two_sigma}]", dev, tolerance, rows,
                              {"n_max": n_max, "radius": rule.radius,
                               "n_radial": rule.radial.nodes.size,
                               "n_angular": rule.angular.nodes.size})
