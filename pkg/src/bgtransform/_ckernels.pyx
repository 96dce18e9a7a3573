# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the hot kernels; same signatures as _pykernels."""
import numpy as np
cimport numpy as cnp
from libc.math cimport fabs

cnp.import_array()

cdef extern from "complex.h" nogil:
    double complex cexp(double complex)
    double complex clog(double complex)


def hardy_table(norms, double a, double b, x):
    cdef const double[::1] nv = np.ascontiguousarray(norms, dtype=np.float64)
    cdef const double[::1] xv = np.ascontiguousarray(x, dtype=np.float64)
    cdef Py_ssize_t nn = nv.shape[0], m = xv.shape[0]
    out = np.empty((nn, m), dtype=np.complex128)
    cdef double complex[:, ::1] ov = out
    cdef Py_ssize_t j, n, k
    cdef double complex s, y, pref, term
    cdef double sr, cr, si, ci, t, v
    with nogil:
        for j in range(m):
            s = 0.5 - 1j * xv[j]
            y = 1.0 / s
            pref = cexp(-a * clog(s))
            for n in range(nn):
                term = 1.0
                sr = 1.0
                cr = 0.0
                si = 0.0
                ci = 0.0
                for k in range(1, n + 1):
                    term = term * ((k - 1 - n) * (a + k - 1) / ((b + k - 1) * k)) * y
                    v = term.real
                    t = sr + v
                    if fabs(sr) >= fabs(v):
                        cr += (sr - t) + v
                    else:
                        cr += (v - t) + sr
                    sr = t
                    v = term.imag
                    t = si + v
                    if fabs(si) >= fabs(v):
                        ci += (si - t) + v
                    else:
                        ci += (v - t) + si
                    si = t
                ov[n, j] = nv[n] * pref * ((sr + cr) + 1j * (si + ci))
    return out


def kummer_table(double a, double const, z, x, shift, t, w):
    cdef const double complex[::1] zv = np.ascontiguousarray(z, dtype=np.complex128)
    cdef const double[::1] xv = np.ascontiguousarray(x, dtype=np.float64)
    cdef const double[::1] sv = np.ascontiguousarray(shift, dtype=np.float64)
    cdef const double[::1] tv = np.ascontiguousarray(t, dtype=np.float64)
    cdef const double[::1] wv = np.ascontiguousarray(w, dtype=np.float64)
    cdef Py_ssize_t p = zv.shape[0], m = xv.shape[0], nq = tv.shape[0]
    out = np.empty((p, m), dtype=np.complex128)
    cdef double complex[:, ::1] ov = out
    cdef double complex[::1] pref = np.empty(m, dtype=np.complex128)
    cdef double complex[::1] yv = np.empty(m, dtype=np.complex128)
    cdef Py_ssize_t i, j, k
    cdef double complex s, zi, acc
    with nogil:
        for j in range(m):
            s = 0.5 - 1j * xv[j]
            yv[j] = 1.0 / s
            pref[j] = const * cexp(-a * clog(s))
        for i in range(p):
            zi = zv[i]
            for j in range(m):
                acc = 0.0
                for k in range(nq):
                    acc = acc + wv[k] * cexp(zi * (1.0 - yv[j] * tv[k]) - sv[i])
                ov[i, j] = pref[j] * acc
    return out
