"""Ergotropy, its coherent/incoherent split, Gibbs states and battery power.

The coherent split assumes the Hamiltonian is diagonal in the computational
basis (true for ``H = diag(0, omega0)``); coherence is measured in that basis.
"""

from dataclasses import dataclass
import math

import numpy as np

from . import qmat
from .errors import GridDegenerate, NotAState, NumericalDomain, SingularReference

RADICAND_TOL = 1e-12


@dataclass(frozen=True)
class ErgotropyBreakdown:
    w: float
    w_i: float
    w_c: float
    w_c_eq16: float
    w_c_eq18_minus: float
    w_c_eq18_plus: float


@dataclass(frozen=True)
class PowerSeries:
    times: np.ndarray
    w_series: np.ndarray
    p_inst: np.ndarray
    p_avg: np.ndarray
    t0: float


def qubit_hamiltonian(omega0):
    return np.diag([0.0, float(omega0)]).astype(complex)


def hamiltonian_spectrum(h):
    """Energies ascending with matching eigenvectors."""
    dec = qmat.eig_hermitian(h)
    return dec.values[::-1].copy(), dec.vectors[:, ::-1].copy()


def _require_diagonal(h):
    h = qmat.as_matrix(h)
    if abs(h[0, 1]) > qmat.HERMITIAN_TOL or abs(h[1, 0]) > qmat.HERMITIAN_TOL:
        raise ValueError("Hamiltonian must be diagonal in the computational basis")
    return h


def partition_function(h, temperature):
    if not temperature > 0:
        raise ValueError("temperature must be > 0")
    energies, _ = hamiltonian_spectrum(h)
    beta = 1.0 / temperature
    shifted = np.exp(-beta * (energies - energies[0]))
    return float(np.sum(shifted) * math.exp(-beta * energies[0]))


def gibbs_state(h, temperature):
    """Thermal state ``exp(-H/T) / Z``."""
    if not temperature > 0:
        raise ValueError("temperature must be > 0")
    energies, vectors = hamiltonian_spectrum(h)
    weights = np.exp(-(energies - energies[0]) / temperature)
    p = weights / weights.sum()
    return (vectors * p) @ vectors.conj().T


def passive_state(rho, h):
    """Populations of ``rho`` sorted descending placed on energies ascending."""
    r = qmat.eig_hermitian(qmat.check_state(rho)).values
    _, vectors = hamiltonian_spectrum(h)
    return (vectors * r) @ vectors.conj().T


def energy(rho, h):
    return float(np.real(np.trace(np.asarray(rho) @ np.asarray(h))))


def ergotropy_routes(rho, h):
    """Ergotropy from the spectral overlap sum and from the passive-state energy gap."""
    rho = qmat.check_state(rho)
    dec = qmat.eig_hermitian(rho)
    energies, evecs = hamiltonian_spectrum(h)
    overlaps = np.abs(dec.vectors.conj().T @ evecs) ** 2  # [j, i] = |<r_j|e_i>|^2
    spectral = float(np.sum(dec.values[:, None] * energies[None, :] * (overlaps - np.eye(2))))
    gap = energy(rho, h) - energy(passive_state(rho, h), h)
    return spectral, gap


def ergotropy(rho, h):
    spectral, _ = ergotropy_routes(rho, h)
    return max(spectral, 0.0)


def coherence_invariant_state(rho):
    """Lowest-energy state reachable without changing the coherence.

    Off-diagonals are kept as they are; the excited population becomes
    ``min(rho_ee, rho_gg)``.
    """
    rho = qmat.check_state(rho)
    gg, ee = rho[0, 0].real, rho[1, 1].real
    sigma = rho.copy()
    if ee > gg:
        sigma[0, 0], sigma[1, 1] = ee, gg
    lo = qmat.eig_hermitian(sigma).values[1]
    if lo < -qmat.STATE_TOL:
        raise NotAState(f"population swap produced eigenvalue {lo:.3e}")
    return sigma


def _radical(x):
    if x < -RADICAND_TOL:
        raise NumericalDomain(f"negative radicand {x:.3e}")
    return math.sqrt(max(x, 0.0))


def l1_closed_forms(rho, omega0):
    """Purity/l1-coherence closed forms with both signs between the radicals."""
    f = qmat.state_functionals(rho)
    bloch = _radical(2.0 * f.purity - 1.0)
    axial = _radical(2.0 * f.purity - 1.0 - f.c_l1**2)
    return 0.5 * omega0 * (bloch - axial), 0.5 * omega0 * (bloch + axial)


def coherent_ergotropy_entropic(rho, h, temperature, floor=qmat.DEFAULT_FLOOR):
    """Coherent ergotropy as ``T [C(rho) + S(E(sigma)||rho_eq) - D(rho||rho_eq)]``.

    ``sigma`` is the coherence-invariant state, ``E`` the dephasing map and
    ``D`` the classical relative entropy between the sorted spectra.
    """
    rho_eq = gibbs_state(h, temperature)
    sigma = coherence_invariant_state(rho)
    c = qmat.state_functionals(rho).c_relent
    s_rel = qmat.relative_entropies(qmat.dephase(sigma), rho_eq, floor=floor).quantum
    r = qmat.eig_hermitian(rho).values
    s = qmat.eig_hermitian(rho_eq).values
    d = qmat.classical_relative_entropy(np.clip(r, 0.0, None), s)
    return temperature * (c + s_rel - d)


def ergotropy_breakdown(rho, h, temperature, floor=qmat.DEFAULT_FLOOR):
    rho = qmat.check_state(rho)
    h = _require_diagonal(h)
    w = ergotropy(rho, h)
    sigma = coherence_invariant_state(rho)
    w_i = min(max(energy(rho - sigma, h), 0.0), w)
    w_c = w - w_i
    try:
        w_c16 = coherent_ergotropy_entropic(rho, h, temperature, floor)
    except SingularReference:
        w_c16 = math.nan
    omega0 = float(h[1, 1].real - h[0, 0].real)
    minus, plus = l1_closed_forms(rho, omega0)
    return ErgotropyBreakdown(w, w_i, w_c, w_c16, minus, plus)


def ergotropy_rate(rho, lrho, omega0):
    """Exact ``dW/dt`` for ``H = diag(0, omega0)`` given ``rho`` and ``d rho/dt``.

    Uses ``W = omega0 (rho_ee - 1/2 + |r|/2)`` with ``|r|`` the Bloch length;
    undefined at the maximally mixed state.
    """
    rho = np.asarray(rho)
    lrho = np.asarray(lrho)
    ee, eg = rho[..., 1, 1].real, rho[..., 1, 0]
    dee, deg = lrho[..., 1, 1].real, lrho[..., 1, 0]
    z = 1.0 - 2.0 * ee
    r = np.sqrt(z * z + 4.0 * np.abs(eg) ** 2)
    dr = (-2.0 * z * dee + 4.0 * np.real(np.conj(eg) * deg)) / r
    return omega0 * (dee + 0.5 * dr)


def power_series(w, times, t0=0.0):
    """Instantaneous (central differences) and average power of an ergotropy series.

    ``p_avg`` is ``nan`` for ``t <= t0``.
    """
    w = np.asarray(w, dtype=float)
    times = np.asarray(times, dtype=float)
    if w.size < 3 or times.size != w.size:
        raise GridDegenerate("power series needs at least 3 matching samples")
    h = times[1] - times[0]
    if not np.allclose(np.diff(times), h, rtol=1e-9, atol=0.0):
        raise GridDegenerate("power series needs a uniform grid")
    k = int(round((t0 - times[0]) / h))
    if not 0 <= k < times.size or abs(times[k] - t0) > 1e-9 * max(1.0, abs(t0)):
        raise ValueError(f"t0={t0!r} is not a grid point")
    p_inst = np.gradient(w, h, edge_order=2)
    p_avg = np.full_like(w, np.nan)
    p_avg[k + 1:] = (w[k + 1:] - w[k]) / (times[k + 1:] - times[k])
    return PowerSeries(times, w, p_inst, p_avg, float(times[k]))
