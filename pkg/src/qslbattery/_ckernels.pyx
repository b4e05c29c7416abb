# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled per-sample kernels; same signatures as ``_pykernels``."""

import numpy as np
from libc.math cimport exp, sqrt, log, fabs, hypot, fmax, fmin, cos, sin

NAME = "cython"
cdef double DET_ROUNDOFF = 4.0 * 2.220446049250313e-16


cdef inline double _det(double a, double d, double br, double bi) noexcept nogil:
    # roundoff-level a*d - |b|^2 is flushed to zero
    cdef double b2 = br * br + bi * bi
    cdef double det = a * d - b2
    if fabs(det) <= DET_ROUNDOFF * (a * a + d * d + 2.0 * b2):
        return 0.0
    return det


cdef inline void _eig(double a, double d, double br, double bi,
                      double* hi, double* lo) noexcept nogil:
    cdef double mean = 0.5 * (a + d)
    cdef double radius = hypot(0.5 * (a - d), hypot(br, bi))
    hi[0] = mean + radius
    if mean > 0.0 and hi[0] > 0.0:
        lo[0] = _det(a, d, br, bi) / hi[0]
    else:
        lo[0] = mean - radius


cdef inline double _xlogx(double p) noexcept nogil:
    if p > 0.0:
        return p * log(p)
    return 0.0


cdef inline void _sqrt_psd(double a, double d, double br, double bi,
                           double* out) noexcept nogil:
    cdef double s = sqrt(fmax(_det(a, d, br, bi), 0.0))
    cdef double norm = sqrt(fmax(a + d + 2.0 * s, 0.0))
    cdef double inv = 1.0 / norm if norm > 0.0 else 0.0
    out[0] = (a + s) * inv
    out[1] = (d + s) * inv
    out[2] = br * inv
    out[3] = bi * inv


def _arr(x):
    return np.ascontiguousarray(x, dtype=np.float64)


def decoherence(t, double lam, double gamma0):
    # Real l: two decaying exponentials (no cosh overflow). Imaginary l = i*w:
    # sinh(i x)/(i w) = sin(x)/w.
    cdef double[::1] tv = _arr(t)
    cdef Py_ssize_t n = tv.shape[0], i
    g = np.empty(n)
    gdot = np.empty(n)
    cdef double[::1] gv = g, dv = gdot
    cdef double disc = lam * lam - 2.0 * gamma0 * lam
    cdef double w = sqrt(fabs(disc))
    cdef double env, x, sh, slow, fast
    with nogil:
        for i in range(n):
            if disc > 0.0:
                slow = exp(-tv[i] * gamma0 * lam / (lam + w))
                fast = exp(-0.5 * (lam + w) * tv[i])
                gv[i] = 0.5 * ((1.0 + lam / w) * slow + (1.0 - lam / w) * fast)
                dv[i] = -0.5 * (gamma0 * lam / w) * (slow - fast)
                continue
            env = exp(-0.5 * lam * tv[i])
            if disc == 0.0:
                gv[i] = env * (1.0 + 0.5 * lam * tv[i])
                dv[i] = -0.5 * gamma0 * lam * tv[i] * env
            else:
                x = 0.5 * w * tv[i]
                sh = sin(x) / w
                gv[i] = env * (cos(x) + lam * sh)
                dv[i] = -gamma0 * lam * env * sh
    return g, gdot


def hermitian_eigvals(a, d, br, bi):
    cdef double[::1] av = _arr(a), dv = _arr(d), rv = _arr(br), iv = _arr(bi)
    cdef Py_ssize_t n = av.shape[0], i
    hi = np.empty(n)
    lo = np.empty(n)
    cdef double[::1] hv = hi, lv = lo
    with nogil:
        for i in range(n):
            _eig(av[i], dv[i], rv[i], iv[i], &hv[i], &lv[i])
    return hi, lo


def hermitian_norms(a, d, br, bi):
    cdef double[::1] av = _arr(a), dv = _arr(d), rv = _arr(br), iv = _arr(bi)
    cdef Py_ssize_t n = av.shape[0], i
    op = np.empty(n)
    tr = np.empty(n)
    hs = np.empty(n)
    cdef double[::1] ov = op, tv = tr, sv = hs
    cdef double hi, lo, s1, s2
    with nogil:
        for i in range(n):
            _eig(av[i], dv[i], rv[i], iv[i], &hi, &lo)
            s1 = fmax(fabs(hi), fabs(lo))
            s2 = fmin(fabs(hi), fabs(lo))
            ov[i] = s1
            tv[i] = s1 + s2
            sv[i] = hypot(s1, s2)
    return op, tr, hs


def fidelity_to(ref, a, d, br, bi):
    cdef double a0 = ref[0], d0 = ref[1], b0r = ref[2], b0i = ref[3]
    cdef double[::1] av = _arr(a), dv = _arr(d), rv = _arr(br), iv = _arr(bi)
    cdef Py_ssize_t n = av.shape[0], i
    out = np.empty(n)
    cdef double[::1] ov = out
    cdef double det0 = fmax(_det(a0, d0, b0r, b0i), 0.0)
    cdef double det, val
    with nogil:
        for i in range(n):
            det = fmax(_det(av[i], dv[i], rv[i], iv[i]), 0.0)
            val = (a0 * av[i] + d0 * dv[i] + 2.0 * (b0r * rv[i] + b0i * iv[i])
                   + 2.0 * sqrt(det0 * det))
            ov[i] = fmin(fmax(val, 0.0), 1.0)
    return out


def affinity_to(ref, a, d, br, bi):
    cdef double[::1] av = _arr(a), dv = _arr(d), rv = _arr(br), iv = _arr(bi)
    cdef Py_ssize_t n = av.shape[0], i
    out = np.empty(n)
    cdef double[::1] ov = out
    cdef double s0[4]
    cdef double s[4]
    cdef double val
    _sqrt_psd(ref[0], ref[1], ref[2], ref[3], s0)
    with nogil:
        for i in range(n):
            _sqrt_psd(av[i], dv[i], rv[i], iv[i], s)
            val = s0[0] * s[0] + s0[1] * s[1] + 2.0 * (s0[2] * s[2] + s0[3] * s[3])
            ov[i] = fmin(fmax(val, 0.0), 1.0)
    return out


def entropy_logs(a, d, br, bi, double floor):
    cdef double[::1] av = _arr(a), dv = _arr(d), rv = _arr(br), iv = _arr(bi)
    cdef Py_ssize_t n = av.shape[0], i
    ent = np.empty(n)
    lsq = np.empty(n)
    cdef double[::1] ev = ent, qv = lsq
    cdef double hi, lo, l1, l2
    with nogil:
        for i in range(n):
            _eig(av[i], dv[i], rv[i], iv[i], &hi, &lo)
            lo = fmax(lo, 0.0)
            ev[i] = -(_xlogx(hi) + _xlogx(lo))
            l1 = log(fmax(hi, floor))
            l2 = log(fmax(lo, floor))
            qv[i] = l1 * l1 + l2 * l2
    return ent, lsq


def ergotropy_split(a, d, br, bi, double omega0):
    cdef double[::1] av = _arr(a), dv = _arr(d), rv = _arr(br), iv = _arr(bi)
    cdef Py_ssize_t n = av.shape[0], i
    w = np.empty(n)
    w_i = np.empty(n)
    w_c = np.empty(n)
    cdef double[::1] wv = w, iwv = w_i, cwv = w_c
    cdef double hi, lo
    with nogil:
        for i in range(n):
            _eig(av[i], dv[i], rv[i], iv[i], &hi, &lo)
            wv[i] = fmax(omega0 * (dv[i] - fmax(lo, 0.0)), 0.0)
            iwv[i] = omega0 * fmax(dv[i] - av[i], 0.0)
            cwv[i] = fmax(wv[i] - iwv[i], 0.0)
    return w, w_i, w_c


def cumulative_simpson(y, double h):
    cdef double[::1] yv = _arr(y)
    cdef Py_ssize_t n = yv.shape[0], i
    out = np.zeros(n)
    cdef double[::1] ov = out
    if n < 2:
        return out
    if n == 2:
        ov[1] = 0.5 * h * (yv[0] + yv[1])
        return out
    with nogil:
        ov[1] = h / 12.0 * (5.0 * yv[0] + 8.0 * yv[1] - yv[2])
        for i in range(2, n):
            if i % 2 == 0:
                ov[i] = ov[i - 2] + h / 3.0 * (yv[i - 2] + 4.0 * yv[i - 1] + yv[i])
            else:
                ov[i] = ov[i - 1] + h / 12.0 * (-yv[i - 2] + 8.0 * yv[i - 1] + 5.0 * yv[i])
    return out


def cumulative_trapezoid(y, double h):
    cdef double[::1] yv = _arr(y)
    cdef Py_ssize_t n = yv.shape[0], i
    out = np.zeros(n)
    cdef double[::1] ov = out
    with nogil:
        for i in range(1, n):
            ov[i] = ov[i - 1] + 0.5 * h * (yv[i - 1] + yv[i])
    return out
