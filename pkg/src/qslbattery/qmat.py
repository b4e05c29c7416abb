"""Closed-form 2x2 Hermitian linear algebra and qubit state functionals.

Matrices are plain ``numpy`` arrays of shape ``(2, 2)`` in the computational
basis ``{|g>, |e>}``: index 0 is the ground state, index 1 the excited state,
so ``rho[1, 0]`` is the coherence ``rho_eg``. Logarithms are natural (nats).
"""

from dataclasses import dataclass
import math

import numpy as np

from .errors import (
    InvalidState,
    NegativeEigenvalue,
    NotHermitian,
    SingularReference,
)

STATE_TOL = 1e-12
HERMITIAN_TOL = 1e-10
DEGENERACY_GAP = 1e-14
DEFAULT_FLOOR = 1e-12
# A determinant a*d - |b|^2 below this multiple of its terms is cancellation
# noise and is treated as exactly zero.
DET_ROUNDOFF = 4.0 * np.finfo(float).eps

_BASIS = np.eye(2, dtype=complex)


@dataclass(frozen=True)
class SpectralDecomposition:
    """Eigenvalues sorted descending; ``vectors[:, i]`` belongs to ``values[i]``."""

    values: np.ndarray
    vectors: np.ndarray

    def reconstruct(self):
        v = self.vectors
        return (v * self.values) @ v.conj().T


@dataclass(frozen=True)
class StateFunctionals:
    purity: float
    entropy: float
    dephased: np.ndarray
    c_l1: float
    c_relent: float


@dataclass(frozen=True)
class RelativeEntropies:
    quantum: float
    classical: float


def as_matrix(m):
    a = np.asarray(m, dtype=complex)
    if a.shape != (2, 2):
        raise ValueError(f"expected a 2x2 matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix has non-finite entries")
    return a


def ket(c_g, c_e):
    return np.array([c_g, c_e], dtype=complex)


def projector(psi):
    psi = np.asarray(psi, dtype=complex)
    return np.outer(psi, psi.conj())


def dagger(m):
    return np.conj(np.transpose(m))


def is_hermitian(m, tol=HERMITIAN_TOL):
    m = np.asarray(m)
    return float(np.max(np.abs(m - dagger(m)))) <= tol


def check_state(rho, tol=STATE_TOL):
    """Validate a density matrix and return it as a complex array.

    :raises InvalidState: if ``rho`` is not Hermitian, not unit trace or has
        an eigenvalue below ``-tol``.
    """
    try:
        rho = as_matrix(rho)
    except ValueError as exc:
        raise InvalidState(str(exc)) from None
    herm = float(np.max(np.abs(rho - dagger(rho))))
    if herm > tol:
        raise InvalidState(f"not Hermitian (deviation {herm:.3e})")
    tr = np.trace(rho)
    if abs(tr - 1.0) > tol:
        raise InvalidState(f"trace {tr.real:.15g} != 1")
    lo = _eigvals(rho)[1]
    if lo < -tol:
        raise InvalidState(f"negative eigenvalue {lo:.3e}")
    return rho


def _eigvals(m):
    # Larger root first; the smaller one comes from det/hi to avoid
    # cancellation for nearly pure states.
    a = m[0, 0].real
    d = m[1, 1].real
    c = m[0, 1]
    mean = 0.5 * (a + d)
    radius = math.hypot(0.5 * (a - d), abs(c))
    hi = mean + radius
    if mean > 0.0 and hi > 0.0:
        lo = clean_det(a, d, c.real * c.real + c.imag * c.imag) / hi
    else:
        lo = mean - radius
    return hi, lo


def clean_det(a, d, b2):
    """``a*d - b2`` with noise below the squared Frobenius scale flushed to zero."""
    det = a * d - b2
    return 0.0 if abs(det) <= DET_ROUNDOFF * (a * a + d * d + 2.0 * b2) else det


def eig_hermitian(m):
    """Spectral decomposition of a Hermitian 2x2 matrix.

    Eigenvalues come from the trace/determinant formulas. When the gap is
    below ``DEGENERACY_GAP`` the computational basis is returned.
    """
    m = as_matrix(m)
    if not is_hermitian(m):
        raise NotHermitian("matrix is not Hermitian within 1e-10")
    m = 0.5 * (m + dagger(m))
    hi, lo = _eigvals(m)
    values = np.array([hi, lo])
    if hi - lo < DEGENERACY_GAP:
        return SpectralDecomposition(values, _BASIS.copy())
    a = m[0, 0].real
    d = m[1, 1].real
    c = m[0, 1]
    vectors = np.empty((2, 2), dtype=complex)
    for i, lam in enumerate(values):
        # Two algebraically equivalent null vectors of (M - lam); keep the
        # better conditioned one.
        u = np.array([c, lam - a])
        w = np.array([lam - d, np.conj(c)])
        v = u if np.linalg.norm(u) >= np.linalg.norm(w) else w
        vectors[:, i] = v / np.linalg.norm(v)
    # Re-orthogonalize the second vector against the first.
    v0 = vectors[:, 0]
    v1 = np.array([-np.conj(v0[1]), np.conj(v0[0])])
    phase = np.vdot(v1, vectors[:, 1])
    if abs(phase) > 0:
        v1 = v1 * (phase / abs(phase))
    vectors[:, 1] = v1
    return SpectralDecomposition(values, vectors)


def matrix_function(m, f, floor=DEFAULT_FLOOR):
    """Apply ``sqrt`` or ``log`` to a Hermitian matrix through its eigenbasis.

    For ``log`` the eigenvalues are clamped below at ``floor`` first.
    """
    dec = eig_hermitian(m)
    lam = dec.values
    if f == "sqrt":
        if lam[1] < -STATE_TOL:
            raise NegativeEigenvalue(f"eigenvalue {lam[1]:.3e} < 0")
        fl = np.sqrt(np.clip(lam, 0.0, None))
    elif f == "log":
        if not floor > 0:
            raise ValueError("log floor must be positive")
        fl = np.log(np.maximum(lam, floor))
    else:
        raise ValueError(f"unsupported matrix function {f!r}")
    v = dec.vectors
    out = (v * fl) @ v.conj().T
    return 0.5 * (out + dagger(out))


def fidelity(rho0, rho_t):
    """Uhlmann fidelity ``(Tr sqrt(sqrt(rho0) rho_t sqrt(rho0)))**2``."""
    rho0 = check_state(rho0)
    rho_t = check_state(rho_t)
    s = matrix_function(rho0, "sqrt")
    inner = s @ rho_t @ s
    val = float(np.real(np.trace(matrix_function(0.5 * (inner + dagger(inner)), "sqrt"))))
    return min(max(val * val, 0.0), 1.0)


def affinity(rho0, rho_t):
    """Wigner-Yanase affinity ``Tr(sqrt(rho0) sqrt(rho_t))``."""
    rho0 = check_state(rho0)
    rho_t = check_state(rho_t)
    val = float(np.real(np.trace(matrix_function(rho0, "sqrt") @ matrix_function(rho_t, "sqrt"))))
    return min(max(val, 0.0), 1.0)


def singular_values(a):
    """Singular values ``s1 >= s2`` of a general complex 2x2 matrix."""
    a = as_matrix(a)
    fro2 = float(np.sum(np.abs(a) ** 2))
    det = abs(a[0, 0] * a[1, 1] - a[0, 1] * a[1, 0])
    # s1^2 + s2^2 = |A|_F^2 and s1 * s2 = |det A|
    disc = math.sqrt(max(fro2 * fro2 - 4.0 * det * det, 0.0))
    s1 = math.sqrt(0.5 * (fro2 + disc))
    s2 = det / s1 if s1 > 0 else 0.0
    return s1, s2


def schatten_norms(a):
    """Operator, trace and Hilbert-Schmidt norms of a 2x2 matrix."""
    s1, s2 = singular_values(a)
    return s1, s1 + s2, math.hypot(s1, s2)


def _entropy_of(p):
    p = np.asarray(p, dtype=float)
    pos = p > 0
    return float(-np.sum(p[pos] * np.log(p[pos])))


def von_neumann_entropy(rho):
    hi, lo = _eigvals(check_state(rho))
    return _entropy_of([hi, max(lo, 0.0)])


def dephase(rho):
    rho = as_matrix(rho)
    return np.diag(np.diag(rho))


def l1_coherence(rho):
    rho = as_matrix(rho)
    return float(abs(rho[0, 1]) + abs(rho[1, 0]))


def state_functionals(rho):
    rho = check_state(rho)
    dephased = dephase(rho)
    s = von_neumann_entropy(rho)
    s_d = _entropy_of(np.clip(np.real(np.diag(rho)), 0.0, None))
    return StateFunctionals(
        purity=float(np.real(np.trace(rho @ rho))),
        entropy=s,
        dephased=dephased,
        c_l1=l1_coherence(rho),
        c_relent=max(s_d - s, 0.0),
    )


def classical_relative_entropy(p, s):
    """``sum p_i ln(p_i / s_i)`` with ``0 ln 0 = 0``; inputs sorted descending."""
    p = np.sort(np.asarray(p, dtype=float))[::-1]
    s = np.sort(np.asarray(s, dtype=float))[::-1]
    pos = p > 0
    if np.any(s[pos] <= 0):
        raise SingularReference("reference distribution vanishes on the support")
    return float(np.sum(p[pos] * np.log(p[pos] / s[pos])))


def relative_entropies(rho, sigma, floor=DEFAULT_FLOOR, clamp=False):
    """Quantum ``S(rho||sigma)`` and classical ``D`` between sorted spectra.

    :param floor: eigenvalues of ``sigma`` below this are singular.
    :param clamp: clamp singular eigenvalues at ``floor`` instead of raising.
    """
    rho = check_state(rho)
    sigma = check_state(sigma)
    sd = eig_hermitian(sigma)
    if sd.values[1] < floor and not clamp:
        raise SingularReference(f"reference eigenvalue {sd.values[1]:.3e} below floor {floor:g}")
    log_s = np.log(np.maximum(sd.values, floor))
    r_hi, r_lo = _eigvals(rho)
    r = np.array([r_hi, max(r_lo, 0.0)])
    weights = np.real(np.einsum("ji,jk,ki->i", sd.vectors.conj(), rho, sd.vectors))
    quantum = -_entropy_of(r) - float(np.dot(weights, log_s))
    s = np.maximum(sd.values, floor) if clamp else sd.values
    classical = classical_relative_entropy(r, s)
    return RelativeEntropies(quantum=max(quantum, 0.0), classical=max(classical, 0.0))
