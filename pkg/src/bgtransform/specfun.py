"""
Scalar special functions: half-integer Gamma, Pochhammer symbols, Bessel
functions, the MacDonald function and the hypergeometric family needed by
the Hardy and Barut-Girardello constructions.

Series are accumulated with Neumaier's compensated summation and stop once
two consecutive terms fall below ``rel_tol`` times the running sum.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import AccuracyError, DomainError, RangeError

__all__ = [
    "Sigma",
    "SeriesControl",
    "DEFAULT_CONTROL",
    "gamma_half",
    "pochhammer",
    "bessel_J",
    "bessel_I",
    "bessel_I_scaled",
    "log_bessel_I",
    "macdonald_K",
    "macdonald_K_closed",
    "hyp0f1",
    "hyp1f1",
    "hyp1f1_series",
    "hyp1f1_euler",
    "hyp2f1_terminating",
    "laguerre",
    "meixner",
    "MAX_DEGREE",
]

#: Largest polynomial degree for which terminating 2F1 sums are trusted.
MAX_DEGREE = 64

# Argument beyond which I_nu switches to its large-argument expansion.
_BESSEL_I_ASYMPTOTIC = 30.0


@dataclass(frozen=True)
class Sigma:
    """The parameter sigma, stored exactly as the positive integer 2*sigma."""

    two_sigma: int

    def __post_init__(self):
        if not isinstance(self.two_sigma, (int, np.integer)) or isinstance(self.two_sigma, bool):
            raise DomainError(f"two_sigma must be an integer, got {self.two_sigma!r}")
        if self.two_sigma < 1:
            raise DomainError(f"two_sigma must be >= 1, got {self.two_sigma}")
        object.__setattr__(self, "two_sigma", int(self.two_sigma))

    @property
    def value(self) -> float:
        return self.two_sigma / 2

    @property
    def alpha(self) -> int:
        """Laguerre index 2*sigma - 1."""
        return self.two_sigma - 1

    @property
    def nu(self) -> float:
        """Order 1/2 - sigma of the MacDonald weight as printed in the measure."""
        return (1 - self.two_sigma) / 2

    @property
    def weight_order(self) -> int:
        """Order 2*sigma - 1 of the MacDonald weight that normalizes the monomials."""
        return self.two_sigma - 1

    def __str__(self):
        if self.two_sigma % 2 == 0:
            return str(self.two_sigma // 2)
        return f"{self.two_sigma}/2"


@dataclass(frozen=True)
class SeriesControl:
    rel_tol: float = 1e-15
    max_terms: int = 500

    def __post_init__(self):
        if not self.rel_tol > 0:
            raise DomainError("rel_tol must be positive")
        if self.max_terms < 1:
            raise DomainError("max_terms must be >= 1")


DEFAULT_CONTROL = SeriesControl()


class _Neumaier:
    """Compensated accumulator for real or complex scalars."""

    __slots__ = ("re", "im", "cre", "cim")

    def __init__(self):
        self.re = self.im = self.cre = self.cim = 0.0

    @staticmethod
    def _add(s, c, x):
        t = s + x
        if abs(s) >= abs(x):
            c += (s - t) + x
        else:
            c += (x - t) + s
        return t, c

    def add(self, x):
        x = complex(x)
        self.re, self.cre = self._add(self.re, self.cre, x.real)
        self.im, self.cim = self._add(self.im, self.cim, x.imag)

    @property
    def value(self) -> complex:
        return complex(self.re + self.cre, self.im + self.cim)


def _sum_series(first, ratio, control: SeriesControl, what: str) -> complex:
    """Sum ``first * prod(ratio(k))`` over k until the stop rule triggers.

    ``ratio(k)`` returns term_k / term_{k-1} for k >= 1.
    """
    acc = _Neumaier()
    term = complex(first)
    acc.add(term)
    small = 0
    for k in range(1, control.max_terms):
        term = term * ratio(k)
        acc.add(term)
        s = abs(acc.value)
        if abs(term) <= control.rel_tol * s or (term == 0 and s == 0):
            small += 1
            if small == 2:
                return acc.value
        else:
            small = 0
    raise AccuracyError(f"{what}: series did not converge in {control.max_terms} terms")


def _is_int(x: float) -> bool:
    return float(x).is_integer()


@lru_cache(maxsize=512)
def gamma_half(two_a: int) -> float:
    """Gamma(two_a / 2) by upward recurrence from Gamma(1/2) or Gamma(1)."""
    two_a = int(two_a)
    if two_a < 1:
        raise DomainError(f"gamma_half needs two_a >= 1, got {two_a}")
    if two_a % 2:
        g, x = math.sqrt(math.pi), 0.5
    else:
        g, x = 1.0, 1.0
    while 2 * x < two_a:
        g *= x
        x += 1
        if math.isinf(g):
            raise RangeError(f"Gamma({two_a}/2) overflows")
    return g


def _rgamma(x: float) -> float:
    """1/Gamma(x), zero at the poles."""
    if x <= 0 and _is_int(x):
        return 0.0
    if x > 0 and _is_int(2 * x):
        return 1.0 / gamma_half(int(round(2 * x)))
    return 1.0 / math.gamma(x)


def pochhammer(a: float, n: int) -> float:
    """Rising factorial (a)_n = a (a+1) ... (a+n-1), with (a)_0 = 1."""
    if n < 0:
        raise DomainError("pochhammer needs n >= 0")
    p = 1.0
    for j in range(n):
        p *= a + j
    if math.isinf(p):
        raise RangeError(f"({a})_{n} overflows")
    return p


def _check_order(nu, x, name):
    if x < 0:
        raise DomainError(f"{name}: argument must be >= 0")
    if x == 0 and nu < 0 and not _is_int(nu):
        raise DomainError(f"{name}: negative non-integer order is singular at 0")


def _bessel_series(nu, x, sign, control, name):
    _check_order(nu, x, name)
    if x == 0:
        if nu == 0:
            return 1.0
        return 0.0
    h = 0.5 * x
    q = sign * h * h
    # start at the first m with a finite 1/Gamma(nu+m+1)
    m0 = 0
    if nu < 0 and _is_int(nu):
        m0 = int(-nu)
    first = h ** (nu + 2 * m0) * _rgamma(nu + m0 + 1) / math.factorial(m0) * (sign ** m0)
    val = _sum_series(first, lambda k: q / ((m0 + k) * (nu + m0 + k)), control, name)
    return val.real


def bessel_J(nu: float, zeta: float, control: SeriesControl = DEFAULT_CONTROL) -> float:
    """Bessel function of the first kind from its power series."""
    return _bessel_series(nu, zeta, -1.0, control, "bessel_J")


def _bessel_I_asymptotic_scaled(nu, x):
    # e^{-x} I_nu(x) ~ (2 pi x)^{-1/2} sum_k (-1)^k a_k(nu) / x^k
    mu = 4.0 * nu * nu
    term = 1.0
    acc = _Neumaier()
    acc.add(term)
    prev = abs(term)
    for k in range(1, 200):
        new = -term * (mu - (2 * k - 1) ** 2) / (k * 8.0 * x)
        if abs(new) > prev:  # asymptotic series starts to diverge
            break
        term = new
        acc.add(term)
        prev = abs(term)
        if prev < 1e-17 * abs(acc.value):
            break
    return acc.value.real / math.sqrt(2 * math.pi * x)


def _use_asymptotic(nu, x):
    return x > _BESSEL_I_ASYMPTOTIC and x > nu * nu


def bessel_I(nu: float, xi: float, control: SeriesControl = DEFAULT_CONTROL) -> float:
    """Modified Bessel function I_nu(xi) for xi >= 0."""
    if _use_asymptotic(nu, xi):
        s = _bessel_I_asymptotic_scaled(nu, xi)
        try:
            v = s * math.exp(xi)
        except OverflowError:
            raise RangeError(f"I_{nu}({xi}) overflows; use bessel_I_scaled") from None
        return v
    return _bessel_series(nu, xi, 1.0, control, "bessel_I")


def bessel_I_scaled(nu: float, xi: float, control: SeriesControl = DEFAULT_CONTROL) -> float:
    """exp(-xi) * I_nu(xi); finite for all xi >= 0."""
    if _use_asymptotic(nu, xi):
        return _bessel_I_asymptotic_scaled(nu, xi)
    return _bessel_series(nu, xi, 1.0, control, "bessel_I") * math.exp(-xi)


def log_bessel_I(nu: float, xi: float, control: SeriesControl = DEFAULT_CONTROL) -> float:
    """log I_nu(xi) for xi > 0, without overflow."""
    if xi <= 0:
        raise DomainError("log_bessel_I needs xi > 0")
    return math.log(bessel_I_scaled(nu, xi, control)) + xi


def _k_integrand_log(nu, xi, t):
    # log(e^{-xi cosh t} cosh(nu t)); logaddexp keeps cosh(nu t) finite
    nt = nu * t
    return -xi * np.cosh(t) + np.logaddexp(nt, -nt) - math.log(2.0)


def _macdonald_K_integral(nu: float, xi: float, h: float = 0.1) -> float:
    nu = abs(nu)
    # the peak narrows like xi^{-1/2}; keep several nodes across it
    h = min(h, 0.5 / math.sqrt(xi))
    # peak of the integrand sits at sinh t = nu / xi (or at t = 0)
    t_peak = math.asinh(nu / xi) if nu > 0 else 0.0
    log_peak = float(_k_integrand_log(nu, xi, np.array(t_peak)))
    cutoff = log_peak + math.log(1e-18)
    t_max = max(2 * t_peak, 1.0)
    while _k_integrand_log(nu, xi, np.array(t_max)) > cutoff:
        t_max *= 1.5
    t = np.arange(0.0, t_max + h, h)
    g = np.exp(_k_integrand_log(nu, xi, t))
    # even integrand: trapezoid on [0, inf) with half weight at t = 0
    return float(h * (math.fsum(g[1:]) + 0.5 * g[0]))


def macdonald_K(nu: float, xi, h: float = 0.1):
    """MacDonald function K_nu(xi) for xi > 0 and 2*nu an integer.

    Evaluated for every order from the representation
    ``K_nu(xi) = int_0^inf exp(-xi cosh t) cosh(nu t) dt`` with the
    trapezoidal rule, which converges geometrically for this doubly
    exponentially decaying integrand. Accepts scalar or array ``xi``.
    """
    if not _is_int(2 * nu):
        raise DomainError(f"macdonald_K supports 2*nu integer only, got nu={nu}")
    arr = np.asarray(xi, dtype=float)
    if np.any(arr <= 0) or not np.all(np.isfinite(arr)):
        raise DomainError("macdonald_K needs finite xi > 0")
    if arr.ndim == 0:
        return _macdonald_K_integral(nu, float(arr), h)
    out = np.array([_macdonald_K_integral(nu, float(v), h) for v in arr.ravel()])
    return out.reshape(arr.shape)


def macdonald_K_closed(two_nu: int, xi: float) -> float:
    """Finite closed form of K_nu for half-odd-integer nu = two_nu / 2.

    K_{n+1/2}(x) = sqrt(pi/(2x)) e^{-x} sum_{k<=n} (n+k)! / (k! (n-k)! (2x)^k).
    """
    if two_nu % 2 == 0:
        raise DomainError("closed form exists only for half-odd-integer orders")
    if xi <= 0:
        raise DomainError("macdonald_K_closed needs xi > 0")
    n = (abs(two_nu) - 1) // 2
    s = math.fsum(
        math.factorial(n + k) / (math.factorial(k) * math.factorial(n - k) * (2 * xi) ** k)
        for k in range(n + 1)
    )
    return math.sqrt(math.pi / (2 * xi)) * math.exp(-xi) * s


def _check_not_pole(c, name):
    if c <= 0 and _is_int(c):
        raise DomainError(f"{name}: lower parameter {c} is a non-positive integer")


def hyp0f1(eta: float, u: complex, control: SeriesControl = DEFAULT_CONTROL) -> complex:
    """Confluent hypergeometric limit function 0F1(; eta; u)."""
    _check_not_pole(eta, "hyp0f1")
    u = complex(u)
    if u == 0:
        return 1 + 0j
    return _sum_series(1.0, lambda k: u / ((eta + k - 1) * k), control, "hyp0f1")


def hyp1f1_series(a: float, b: float, z: complex,
                  control: SeriesControl = DEFAULT_CONTROL) -> complex:
    """Kummer's series sum_j (a)_j / (b)_j z^j / j! summed term by term."""
    _check_not_pole(b, "hyp1f1")
    z = complex(z)
    if z == 0:
        return 1 + 0j
    if a <= 0 and _is_int(a):
        # terminating polynomial; sum every term exactly
        acc = _Neumaier()
        term = 1 + 0j
        acc.add(term)
        for k in range(1, int(-a) + 1):
            term *= (a + k - 1) / (b + k - 1) * z / k
            acc.add(term)
        return acc.value
    return _sum_series(1.0, lambda k: (a + k - 1) / (b + k - 1) * z / k, control, "hyp1f1")


@lru_cache(maxsize=64)
def _jacobi_rule(n: int, p: float, q: float):
    # nodes/weights on [0, 1] for weight t^p (1-t)^q
    from scipy.special import roots_jacobi

    x, w = roots_jacobi(n, q, p)
    t = 0.5 * (x + 1.0)
    w = w * 0.5 ** (p + q + 1.0)
    t.setflags(write=False)
    w.setflags(write=False)
    return t, w


def _euler_nodes(abs_z: float) -> int:
    return int(48 + math.ceil(0.75 * abs_z))


def hyp1f1_euler(a: float, b: float, z: complex, n_nodes: int | None = None) -> complex:
    """1F1 from Euler's integral, valid for b > a > 0.

    1F1(a; b; z) = Gamma(b) / (Gamma(a) Gamma(b-a)) int_0^1 e^{zt} t^{a-1} (1-t)^{b-a-1} dt,
    evaluated with Gauss-Jacobi quadrature. The absolute error is of order
    eps * max(1, exp(Re z)), so no cancellation arises for large imaginary z.
    """
    if not b > a > 0:
        raise DomainError("hyp1f1_euler needs b > a > 0")
    z = complex(z)
    n = n_nodes or _euler_nodes(abs(z))
    t, w = _jacobi_rule(n, a - 1.0, b - a - 1.0)
    c = math.exp(math.lgamma(b) - math.lgamma(a) - math.lgamma(b - a))
    return complex(c * np.dot(w, np.exp(z * t)))


def hyp1f1(a: float, b: float, z: complex, control: SeriesControl = DEFAULT_CONTROL) -> complex:
    """Kummer's confluent hypergeometric function 1F1(a; b; z).

    Small arguments use the power series, applying Kummer's transformation
    ``1F1(a;b;z) = e^z 1F1(b-a;b;-z)`` when Re z < 0. For |z| > 12 with
    b > a > 0 the Euler integral is used instead, since the series loses
    roughly exp(|z| - |Re z|) to cancellation there.
    """
    _check_not_pole(b, "hyp1f1")
    z = complex(z)
    if a == b:
        return complex(np.exp(z))
    if abs(z) > 12 and b > a > 0:
        return hyp1f1_euler(a, b, z)
    if z.real < 0 and not (a <= 0 and _is_int(a)):
        return complex(np.exp(z)) * hyp1f1_series(b - a, b, -z, control)
    return hyp1f1_series(a, b, z, control)


def _neumaier_add(s, c, x):
    t = s + x
    big = np.abs(s) >= np.abs(x)
    c = c + np.where(big, (s - t) + x, (x - t) + s)
    return t, c


def hyp2f1_terminating(n: int, b: float, c: float, zeta):
    """Terminating Gauss function 2F1(-n, b; c; zeta) as an exact n+1 term sum.

    ``zeta`` may be a complex scalar or array; the sum is compensated
    separately in the real and imaginary parts.
    """
    if n < 0:
        raise DomainError("hyp2f1_terminating needs n >= 0")
    if n > MAX_DEGREE:
        raise DomainError(f"degree {n} exceeds the verified range n <= {MAX_DEGREE}")
    if c <= 0 and _is_int(c) and c >= -n + 1:
        raise DomainError("hyp2f1_terminating: c is a non-positive integer inside the sum")
    z = np.asarray(zeta, dtype=complex)
    if z.ndim == 0:
        zs, t = complex(z), 1 + 0j
        terms = [t]
        for k in range(1, n + 1):
            t = t * ((-n + k - 1) * (b + k - 1) / ((c + k - 1) * k)) * zs
            terms.append(t)
        return complex(math.fsum(v.real for v in terms), math.fsum(v.imag for v in terms))
    term = np.ones_like(z)
    sr, cr = term.real.copy(), np.zeros(z.shape)
    si, ci = term.imag.copy(), np.zeros(z.shape)
    for k in range(1, n + 1):
        term = term * ((-n + k - 1) * (b + k - 1) / ((c + k - 1) * k)) * z
        sr, cr = _neumaier_add(sr, cr, term.real)
        si, ci = _neumaier_add(si, ci, term.imag)
    out = (sr + cr) + 1j * (si + ci)
    if out.ndim == 0:
        return complex(out)
    return out


def laguerre(n: int, alpha: float, t):
    """Generalized Laguerre polynomial L_n^(alpha)(t) by three-term recurrence."""
    if alpha <= -1:
        raise DomainError("laguerre needs alpha > -1")
    if n < 0:
        raise DomainError("laguerre needs n >= 0")
    t = np.asarray(t, dtype=float)
    prev = np.ones_like(t)
    if n == 0:
        return prev if prev.ndim else float(prev)
    cur = 1.0 + alpha - t
    for k in range(1, n):
        prev, cur = cur, ((2 * k + 1 + alpha - t) * cur - (k + alpha) * prev) / (k + 1)
    return cur if cur.ndim else float(cur)


def meixner(n: int, u: float, b: float, c: complex) -> complex:
    """Meixner polynomial M_n(u, b; c) = 2F1(-n, -u; b; 1 - 1/c)."""
    if c == 0:
        raise DomainError("meixner needs c != 0")
    return hyp2f1_terminating(n, -u, b, 1 - 1 / complex(c))
