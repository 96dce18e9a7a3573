"""Pure numpy implementations of the hot kernels (fallback backend)."""
import numpy as np

from .specfun import hyp2f1_terminating


def hardy_table(norms, a, b, x):
    """Rows norms[n] * s^(-a) * 2F1(-n, a; b; 1/s) with s = 1/2 - ix."""
    norms = np.asarray(norms, dtype=float)
    x = np.asarray(x, dtype=float)
    s = 0.5 - 1j * x
    y = 1.0 / s
    pref = np.exp(-a * np.log(s))
    out = np.empty((norms.size, x.size), dtype=complex)
    for n in range(norms.size):
        out[n] = norms[n] * pref * hyp2f1_terminating(n, a, b, y)
    return out


def kummer_table(a, const, z, x, shift, t, w):
    """const * s^(-a) * sum_k w_k exp(z (1 - t_k / s) - shift) on the (z, x) grid."""
    z = np.asarray(z, dtype=complex)
    x = np.asarray(x, dtype=float)
    shift = np.asarray(shift, dtype=float)
    s = 0.5 - 1j * x
    y = 1.0 / s
    pref = const * np.exp(-a * np.log(s))
    yt = y[:, None] * np.asarray(t, dtype=float)[None, :]
    w = np.asarray(w, dtype=float)
    out = np.empty((z.size, x.size), dtype=complex)
    for i in range(z.size):
        e = np.exp(z[i] * (1.0 - yt) - shift[i])
        out[i] = pref * (e.real @ w + 1j * (e.imag @ w))
    return out
