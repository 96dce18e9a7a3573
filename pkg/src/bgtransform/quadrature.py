"""
Quadrature rules for the real line (Lebesgue measure) and for the complex
plane carrying the Barut-Girardello measure.

All rules are cached by their construction parameters and sums are formed
with ``math.fsum`` in node order, so integrals are bit-reproducible.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable

import numpy as np

from .errors import DomainError
from .specfun import Sigma, gamma_half, macdonald_K

__all__ = [
    "QuadratureRule",
    "PlanarRule",
    "IntegrandError",
    "real_line_rule",
    "integrate_real_line",
    "planar_rule",
    "integrate_planar",
    "fourier_rule",
    "integrate_fourier",
    "radial_cutoff",
    "fsum_complex",
]

DOMAINS = ("real_line_mapped", "radial_positive", "angular_periodic", "fourier_de")

# Radial nodes start where r^(2 sigma) K(2r) r^(2k) is far below double precision.
_R_MIN = 1e-20
_TAIL = 1e-18


class IntegrandError(RuntimeError):
    """The integrand failed or returned a non-finite value at a node."""

    def __init__(self, index, node, cause=None):
        self.index = index
        self.node = node
        super().__init__(f"integrand failed at node {index} ({node!r})"
                         + (f": {cause}" if cause else ""))


@dataclass(frozen=True, eq=False)
class QuadratureRule:
    domain: str
    nodes: np.ndarray
    weights: np.ndarray
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.domain not in DOMAINS:
            raise DomainError(f"unknown quadrature domain {self.domain!r}")
        nodes = np.ascontiguousarray(self.nodes, dtype=float)
        weights = np.ascontiguousarray(self.weights, dtype=float)
        if nodes.ndim != 1 or nodes.shape != weights.shape or nodes.size < 1:
            raise DomainError("nodes and weights must be 1-d arrays of equal length >= 1")
        if not np.all(np.isfinite(weights)):
            raise DomainError("weights must be finite")
        if self.domain == "radial_positive" and np.any(nodes <= 0):
            raise DomainError("radial nodes must be positive")
        if self.domain == "angular_periodic" and (np.any(nodes < 0) or np.any(nodes >= 2 * np.pi)):
            raise DomainError("angular nodes must lie in [0, 2 pi)")
        nodes.setflags(write=False)
        weights.setflags(write=False)
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "weights", weights)

    def __len__(self):
        return self.nodes.size


@dataclass(frozen=True, eq=False)
class PlanarRule:
    """Tensor rule r_i e^{i theta_j}; radial weights carry the d mu_sigma density."""

    radial: QuadratureRule
    angular: QuadratureRule
    sigma: Sigma

    @property
    def points(self) -> np.ndarray:
        """Complex nodes of shape (n_radial, n_angular)."""
        return self.radial.nodes[:, None] * np.exp(1j * self.angular.nodes)[None, :]

    @property
    def weights(self) -> np.ndarray:
        return self.radial.weights[:, None] * self.angular.weights[None, :]

    @property
    def radius(self) -> float:
        return self.radial.meta["radius"]


def fsum_complex(values) -> complex:
    v = np.asarray(values, dtype=complex).ravel()
    return complex(math.fsum(v.real), math.fsum(v.imag))


def _evaluate(f: Callable, nodes: np.ndarray) -> np.ndarray:
    try:
        vals = np.asarray(f(nodes), dtype=complex)
        if vals.shape != nodes.shape:
            vals = np.broadcast_to(vals, nodes.shape)
    except Exception:
        # locate the offending node
        flat = nodes.ravel()
        for i, x in enumerate(flat):
            try:
                complex(np.asarray(f(np.asarray([x]))).ravel()[0])
            except Exception as exc:
                raise IntegrandError(i, x, exc) from exc
        raise
    bad = ~np.isfinite(vals)
    if np.any(bad):
        i = int(np.flatnonzero(bad.ravel())[0])
        raise IntegrandError(i, nodes.ravel()[i], "non-finite value")
    return vals


@lru_cache(maxsize=32)
def real_line_rule(n_points: int, scale: float = 0.5) -> QuadratureRule:
    """Gauss-Legendre rule in u on (-pi/2, pi/2) under x = scale * tan(u).

    With ``scale = 1/2`` the Hardy basis becomes a trigonometric polynomial
    in u times cos(u)^(2 sigma + 1), so Gram integrals converge spectrally.
    """
    if n_points < 8:
        raise DomainError("real_line_rule needs n_points >= 8")
    u, wu = np.polynomial.legendre.leggauss(n_points)
    u = 0.5 * np.pi * u
    wu = 0.5 * np.pi * wu
    x = scale * np.tan(u)
    w = wu * scale / np.cos(u) ** 2
    return QuadratureRule("real_line_mapped", x, w, {"map": "tan", "scale": scale, "n": n_points})


def integrate_real_line(f: Callable, rule: QuadratureRule) -> complex:
    """Sum w_i f(x_i); ``f`` is called once with the node array."""
    vals = _evaluate(f, rule.nodes)
    return fsum_complex(rule.weights * vals)


def radial_cutoff(sigma: Sigma, degree: int, tail: float = _TAIL) -> float:
    """Radius past which r^(2 sigma + 2 degree) K(2r) is below ``tail`` of its peak."""
    p = 2 * sigma.value + 2 * degree - 0.5  # power left after K(2r) ~ r^(-1/2) e^(-2r)
    r_peak = max(p / 2, 0.5)

    def logv(r):
        return p * math.log(r) - 2 * r

    target = logv(r_peak) + math.log(tail)
    lo, hi = r_peak, r_peak + 10
    while logv(hi) > target:
        lo, hi = hi, hi * 2
    for _ in range(80):
        mid = 0.5 * (lo + hi)
        if logv(mid) > target:
            lo = mid
        else:
            hi = mid
    return max(hi, 25 + sigma.two_sigma)


def _de_radial_nodes(radius: float, n: int):
    # r = exp(tau - exp(-tau)): doubly exponential clustering at r -> 0
    def r_of(tau):
        return math.exp(tau - math.exp(-tau))

    def tau_of(r):
        lo, hi = -10.0, 10.0
        for _ in range(200):
            mid = 0.5 * (lo + hi)
            if r_of(mid) < r:
                lo = mid
            else:
                hi = mid
        return 0.5 * (lo + hi)

    a, b = tau_of(_R_MIN), tau_of(radius)
    tau = np.linspace(a, b, n)
    h = (b - a) / (n - 1)
    r = np.exp(tau - np.exp(-tau))
    dr = r * (1 + np.exp(-tau)) * h
    dr[0] *= 0.5
    dr[-1] *= 0.5
    return r, dr


def bg_density_radial(sigma: Sigma, r, literal_weight: bool = False) -> np.ndarray:
    """(2 / (pi Gamma(2 sigma))) r^(2 sigma - 1) K_{2 sigma - 1}(2r).

    The MacDonald order 2 sigma - 1 is the one for which
    int |z|^(2n) d mu = n! Gamma(2 sigma + n) / Gamma(2 sigma), i.e. for which
    the coefficient norm and the 0F1 reproducing kernel hold. With
    ``literal_weight`` the order 1/2 - sigma is used instead; the two agree
    only at sigma = 1/2.
    """
    r = np.asarray(r, dtype=float)
    order = sigma.nu if literal_weight else sigma.weight_order
    k = macdonald_K(order, 2 * r)
    return 2.0 / (np.pi * gamma_half(2 * sigma.two_sigma)) * r ** (sigma.two_sigma - 1) * k


@lru_cache(maxsize=32)
def planar_rule(sigma: Sigma, n_radial: int = 200, n_angular: int = 64,
                max_degree: int | None = None, literal_weight: bool = False) -> PlanarRule:
    """Tensor rule for integrals against d mu_sigma over the plane.

    The radial part is a trapezoid rule under r = exp(tau - exp(-tau)),
    which absorbs the r -> 0 endpoint behaviour of the MacDonald weight
    (including the logarithmic K_0 singularity at sigma = 1/2) and decays
    exponentially in tau at large r. The truncation radius is chosen so
    that |z|^(2 max_degree) times the weight has dropped below 1e-18 of its
    peak; ``max_degree`` defaults to the highest degree the angular rule
    resolves, n_angular/2 - 1.

    The angular part is the uniform trapezoid rule on [0, 2 pi).
    ``literal_weight`` selects the MacDonald order 1/2 - sigma (see
    :func:`bg_density_radial`).
    """
    if n_angular < 4 or n_angular % 2:
        raise DomainError("n_angular must be even and >= 4")
    if n_radial < 8:
        raise DomainError("n_radial must be >= 8")
    if max_degree is None:
        max_degree = n_angular // 2 - 1
    radius = radial_cutoff(sigma, max_degree)
    r, dr = _de_radial_nodes(radius, n_radial)
    w = bg_density_radial(sigma, r, literal_weight) * r * dr
    radial = QuadratureRule("radial_positive", r, w,
                            {"radius": radius, "map": "exp(t - exp(-t))",
                             "max_degree": max_degree, "literal_weight": literal_weight})
    theta = 2 * np.pi * np.arange(n_angular) / n_angular
    angular = QuadratureRule("angular_periodic", theta, np.full(n_angular, 2 * np.pi / n_angular))
    return PlanarRule(radial, angular, sigma)


def integrate_planar(g: Callable, rule: PlanarRule) -> complex:
    """Sum of w_i^rad w_j^ang g(r_i e^{i theta_j}) over the tensor grid."""
    pts = rule.points
    vals = _evaluate(g, pts)
    return fsum_complex(rule.weights * vals)


def _ooura_nodes(h: float, shift: float):
    m = math.pi / h
    beta = 0.25
    alpha = beta / math.sqrt(1 + m * math.log1p(m) / (4 * math.pi))
    n = np.arange(-int(12 / h), int(12 / h) + 1)
    t = n * h + shift
    with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
        u = -2 * t - alpha * (1 - np.exp(-t)) - beta * np.expm1(t)
        du = -2 - alpha * np.exp(-t) - beta * np.exp(t)
        em = -np.expm1(u)
        phi = np.where(t == 0, 1 / (2 + alpha + beta), t / em)
        dphi = np.where(t == 0, 0.5 + (alpha - beta) / (2 * (2 + alpha + beta) ** 2),
                        (em + t * du * np.exp(u)) / em ** 2)
    x = m * phi
    return x, m * h * dphi


@lru_cache(maxsize=8)
def fourier_rule(h: float = 0.05, line_points: int = 400) -> QuadratureRule:
    """Double exponential rule for integrals of f(x) e^{-itx} over the line.

    The half-line integrals of f(x) cos(x) and f(x) sin(x) use the
    transformation x = M phi(t) with M h = pi, which places the nodes
    asymptotically on the zeros of the oscillating factor (shifted by half
    a step for the cosine). This handles integrands decaying as slowly as
    1/|x|. Nodes are stored for unit frequency and rescaled by 1/|t|.
    """
    parts = []
    for kind, shift, osc in (("cos", -0.5 * h, np.cos), ("sin", 0.0, np.sin)):
        x, w = _ooura_nodes(h, shift)
        with np.errstate(invalid="ignore"):
            w = w * osc(x)
        ok = np.isfinite(w) & np.isfinite(x) & (x > 0)
        ok &= np.abs(w) > 1e-20 * np.max(np.abs(w[ok]))
        parts.append((x[ok], w[ok]))
    (xc, wc), (xs, ws) = parts
    nodes = np.concatenate([xc, xs])
    weights = np.concatenate([wc, ws])
    return QuadratureRule("fourier_de", nodes, weights,
                          {"h": h, "n_cos": xc.size, "line": real_line_rule(line_points)})


def integrate_fourier(f: Callable, t: float, rule: QuadratureRule) -> complex:
    """int_R e^{-itx} f(x) dx; at t = 0 the symmetric line rule is used."""
    if rule.domain != "fourier_de":
        raise DomainError("integrate_fourier needs a fourier_de rule")
    t = float(t)
    if t == 0:
        return integrate_real_line(f, rule.meta["line"])
    om = abs(t)
    nc = rule.meta["n_cos"]
    x = rule.nodes / om
    fp = _evaluate(f, x)
    fm = _evaluate(f, -x)
    c = fsum_complex(rule.weights[:nc] * (fp[:nc] + fm[:nc]))
    s = fsum_complex(rule.weights[nc:] * (fp[nc:] - fm[nc:]))
    return (c - 1j * math.copysign(1.0, t) * s) / om
