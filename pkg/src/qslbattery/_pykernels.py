"""Vectorized numpy implementations of the per-sample kernels.

A batch of Hermitian 2x2 matrices is passed as four float arrays
``(a, d, br, bi)`` for ``[[a, conj(b)], [b, d]]`` with ``b = br + 1j*bi``;
for states ``a = rho_gg``, ``d = rho_ee`` and ``b = rho_eg``.
Signatures mirror the compiled module ``_ckernels`` exactly.
"""

import numpy as np

NAME = "python"
DET_ROUNDOFF = 4.0 * np.finfo(float).eps


def _f(x):
    return np.ascontiguousarray(x, dtype=np.float64)


def decoherence(t, lam, gamma0):
    """Decoherence function ``G(t)`` and its derivative for a Lorentzian bath."""
    t = _f(t)
    disc = lam * lam - 2.0 * gamma0 * lam
    if disc > 0.0:
        l = np.sqrt(disc)
        slow = np.exp(-t * gamma0 * lam / (lam + l))  # exp(-(lam - l) t / 2)
        fast = np.exp(-0.5 * (lam + l) * t)
        g = 0.5 * ((1.0 + lam / l) * slow + (1.0 - lam / l) * fast)
        return g, -0.5 * (gamma0 * lam / l) * (slow - fast)
    env = np.exp(-0.5 * lam * t)
    if disc == 0.0:
        g = env * (1.0 + 0.5 * lam * t)
        gdot = -0.5 * gamma0 * lam * t * env
        return g, gdot
    l = np.sqrt(complex(disc))
    x = 0.5 * l * t
    sh = np.sinh(x)
    g = env * (np.cosh(x) + (lam / l) * sh)
    gdot = -(gamma0 * lam / l) * env * sh
    return np.ascontiguousarray(g.real), np.ascontiguousarray(gdot.real)


def _det(a, d, br, bi):
    # roundoff-level a*d - |b|^2 is flushed to zero
    b2 = br * br + bi * bi
    det = a * d - b2
    return np.where(np.abs(det) <= DET_ROUNDOFF * (a * a + d * d + 2.0 * b2), 0.0, det)


def hermitian_eigvals(a, d, br, bi):
    a, d, br, bi = map(_f, (a, d, br, bi))
    mean = 0.5 * (a + d)
    radius = np.hypot(0.5 * (a - d), np.hypot(br, bi))
    hi = mean + radius
    safe = (mean > 0.0) & (hi > 0.0)
    det = _det(a, d, br, bi)
    lo = np.where(safe, det / np.where(safe, hi, 1.0), mean - radius)
    return hi, lo


def hermitian_norms(a, d, br, bi):
    """Operator, trace and Hilbert-Schmidt norms (singular values = |eigenvalues|)."""
    hi, lo = hermitian_eigvals(a, d, br, bi)
    s1 = np.maximum(np.abs(hi), np.abs(lo))
    s2 = np.minimum(np.abs(hi), np.abs(lo))
    return s1, s1 + s2, np.hypot(s1, s2)


def fidelity_to(ref, a, d, br, bi):
    """Fidelity of each state against a fixed reference state.

    Uses the qubit identity ``F = Tr(rho sigma) + 2 sqrt(det rho det sigma)``.
    """
    a0, d0, b0r, b0i = ref
    a, d, br, bi = map(_f, (a, d, br, bi))
    overlap = a0 * a + d0 * d + 2.0 * (b0r * br + b0i * bi)
    det0 = max(float(_det(a0, d0, b0r, b0i)), 0.0)
    det = np.maximum(_det(a, d, br, bi), 0.0)
    return np.clip(overlap + 2.0 * np.sqrt(det0 * det), 0.0, 1.0)


def _sqrt_psd(a, d, br, bi):
    # sqrt(M) = (M + sqrt(det M) I) / sqrt(Tr M + 2 sqrt(det M))
    s = np.sqrt(np.maximum(_det(a, d, br, bi), 0.0))
    norm = np.sqrt(np.maximum(a + d + 2.0 * s, 0.0))
    inv = np.where(norm > 0.0, 1.0 / np.where(norm > 0.0, norm, 1.0), 0.0)
    return (a + s) * inv, (d + s) * inv, br * inv, bi * inv


def affinity_to(ref, a, d, br, bi):
    a0, d0, b0r, b0i = (np.float64(x) for x in ref)
    sa0, sd0, sb0r, sb0i = _sqrt_psd(a0, d0, b0r, b0i)
    sa, sd, sbr, sbi = _sqrt_psd(*map(_f, (a, d, br, bi)))
    val = sa0 * sa + sd0 * sd + 2.0 * (sb0r * sbr + sb0i * sbi)
    return np.clip(val, 0.0, 1.0)


def _xlogx(p):
    return np.where(p > 0.0, p * np.log(np.where(p > 0.0, p, 1.0)), 0.0)


def entropy_logs(a, d, br, bi, floor):
    """Von Neumann entropy and squared HS norm of the clamped matrix log."""
    hi, lo = hermitian_eigvals(a, d, br, bi)
    lo = np.maximum(lo, 0.0)
    s = -(_xlogx(hi) + _xlogx(lo))
    l1 = np.log(np.maximum(hi, floor))
    l2 = np.log(np.maximum(lo, floor))
    return s, l1 * l1 + l2 * l2


def ergotropy_split(a, d, br, bi, omega0):
    """Ergotropy and its incoherent/coherent split for ``H = diag(0, omega0)``."""
    a, d = _f(a), _f(d)
    hi, lo = hermitian_eigvals(a, d, br, bi)
    w = np.maximum(omega0 * (d - np.maximum(lo, 0.0)), 0.0)
    w_i = omega0 * np.maximum(d - a, 0.0)
    w_c = np.maximum(w - w_i, 0.0)
    return w, w_i, w_c


def cumulative_simpson(y, h):
    """Running integral of uniformly sampled ``y`` from its first sample.

    Even indices are composite Simpson; an odd index adds the last interval
    from the parabola through the three final samples.
    """
    y = _f(y)
    n = y.size
    out = np.zeros(n)
    if n < 2:
        return out
    if n == 2:
        out[1] = 0.5 * h * (y[0] + y[1])
        return out
    panels = h / 3.0 * (y[0:-2:2] + 4.0 * y[1:-1:2] + y[2::2])
    out[2::2] = np.cumsum(panels)
    tail = h / 12.0 * (-y[0:-2] + 8.0 * y[1:-1] + 5.0 * y[2:])
    out[3::2] = out[2:-1:2][: out[3::2].size] + tail[1::2]
    out[1] = h / 12.0 * (5.0 * y[0] + 8.0 * y[1] - y[2])
    return out


def cumulative_trapezoid(y, h):
    y = _f(y)
    out = np.zeros(y.size)
    if y.size > 1:
        out[1:] = np.cumsum(0.5 * h * (y[:-1] + y[1:]))
    return out
