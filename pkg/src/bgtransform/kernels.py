"""
Backend selection for the hot evaluation kernels.

The compiled extension ``_ckernels`` is used when it imports; otherwise,
or when ``BGTRANSFORM_PURE_PYTHON`` is set to a non-empty value other
than ``0``, the numpy implementations in ``_pykernels`` are used.
"""
from __future__ import annotations

import math
import os

import numpy as np

from . import _pykernels
from .specfun import MAX_DEGREE, Sigma, _jacobi_rule, gamma_half, pochhammer
from .errors import DomainError

__all__ = ["BACKEND", "use_backend", "hardy_norms", "hardy_table", "kummer_grid", "kernel_constant"]


def _load_compiled():
    try:
        from . import _ckernels
    except ImportError:
        return None
    return _ckernels


_compiled = _load_compiled()
_impl = _pykernels
BACKEND = "python"
if _compiled is not None and os.environ.get("BGTRANSFORM_PURE_PYTHON", "") in ("", "0"):
    _impl = _compiled
    BACKEND = "cython"


def use_backend(name: str) -> None:
    """Switch between ``"cython"`` and ``"python"`` at runtime."""
    global _impl, BACKEND
    if name == "python":
        _impl, BACKEND = _pykernels, "python"
    elif name == "cython":
        if _compiled is None:
            raise ImportError("compiled kernels are not built")
        _impl, BACKEND = _compiled, "cython"
    else:
        raise ValueError(f"unknown backend {name!r}")


def _hardy_amplitude(sigma: Sigma) -> float:
    # (Gamma(sigma + 1/2) / (2^(2 sigma) sqrt(pi) Gamma(sigma)))^(1/2)
    ts = sigma.two_sigma
    return math.sqrt(gamma_half(ts + 1) / (2.0 ** ts * math.sqrt(math.pi) * gamma_half(ts)))


def hardy_norms(sigma: Sigma, n_max: int) -> np.ndarray:
    """Normalization constants of phi_0^sigma ... phi_{n_max}^sigma."""
    if n_max > MAX_DEGREE:
        raise DomainError(f"n_max {n_max} exceeds {MAX_DEGREE}")
    amp = _hardy_amplitude(sigma)
    return np.array([amp * math.sqrt(pochhammer(sigma.two_sigma, n) / math.factorial(n))
                     for n in range(n_max + 1)])


def hardy_table(sigma: Sigma, n_max: int, x) -> np.ndarray:
    """phi_n^sigma(x) for n = 0..n_max as an (n_max+1, len(x)) array."""
    x = np.atleast_1d(np.asarray(x, dtype=float))
    return _impl.hardy_table(hardy_norms(sigma, n_max), sigma.value + 0.5, float(sigma.two_sigma), x)


def kernel_constant(sigma: Sigma) -> float:
    """(1 / (2^sigma pi^(1/4))) (Gamma(sigma + 1/2) / Gamma(sigma))^(1/2)."""
    ts = sigma.two_sigma
    return math.sqrt(gamma_half(ts + 1) / gamma_half(ts)) / (2.0 ** (ts / 2) * math.pi ** 0.25)


def _euler_rule(sigma: Sigma, n_nodes: int):
    ts = sigma.two_sigma
    if ts == 1:
        # a = b: 1F1(1; 1; w) = e^w, a single node at t = 1
        return np.ones(1), np.ones(1), 1.0
    t, w = _jacobi_rule(n_nodes, (ts - 1) / 2, (ts - 3) / 2)
    beta = gamma_half(2 * ts) / (gamma_half(ts + 1) * gamma_half(ts - 1))
    return t, w, beta


def _nodes_for(abs_z: np.ndarray) -> np.ndarray:
    # Gauss-Jacobi size for e^{wt} with |w| <= 2|z|, rounded up to a multiple of 8
    n = 48 + np.ceil(1.5 * abs_z)
    return (8 * np.ceil(n / 8)).astype(int)


def kummer_grid(sigma: Sigma, z, x, shift=None) -> np.ndarray:
    """exp(-shift) * K_sigma(z, x) on the grid z x x.

    K_sigma(z, x) = c_sigma (1/2 - ix)^(-(sigma+1/2)) e^z 1F1(sigma+1/2; 2 sigma; -z/(1/2-ix))
    is evaluated through Euler's integral for 1F1, so that
    e^z 1F1(...) = beta * int_0^1 e^{z (1 - t/s)} t^(a-1) (1-t)^(b-a-1) dt.
    Since |1 - 1/s| = 1 on the real line, every exponent has real part at
    most |z|, and the quadrature sum never cancels by more than e^|z|
    relative to the result's natural scale.
    """
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    x = np.atleast_1d(np.asarray(x, dtype=float))
    shift = np.zeros(z.shape) if shift is None else np.broadcast_to(np.asarray(shift, dtype=float), z.shape)
    a = sigma.value + 0.5
    c = kernel_constant(sigma)
    out = np.empty((z.size, x.size), dtype=complex)
    sizes = _nodes_for(np.abs(z))
    for n in np.unique(sizes):
        idx = np.flatnonzero(sizes == n)
        t, w, beta = _euler_rule(sigma, int(n))
        out[idx] = _impl.kummer_table(a, c * beta, z[idx], x, shift[idx], t, w)
    return out
