"""Quantum speed limit times along a trajectory.

Four bounds are evaluated as functions of the driving time ``tau``:

* ``tau_qsl_fisher`` - Bures angle over the time-averaged generator norms,
* ``tau_qsl_wy`` - the same with the Wigner-Yanase angle,
* ``tau_qsl_relpurity`` - relative purity bound (l1-coherence or general form),
* ``tau_csl`` - speed limit for the relative entropy of coherence.

Two evaluation paths share the integrands: the per-``tau`` functions integrate
on their own uniform mesh over ``[0, tau]``, and :func:`qsl_sweep` evaluates
every grid instant at once from cumulative quadrature tables.
"""

from dataclasses import dataclass, field
import enum
import math
from typing import NamedTuple

import numpy as np
from scipy.optimize import brentq
from scipy.signal import find_peaks

from . import kernels, qmat
from .dynamics import RATE_SINGULAR_G, g_function, g_series, propagate
from .errors import (
    DomainError,
    FloorTooSmall,
    GridTooShort,
    ZeroGenerator,
)

STATIONARY = "stationary"
SINGULAR_INTEGRAND = "singular_integrand"
SINGULAR_FRACTION = 1e-3
MAX_LOG_EIGENVALUE = 1e3
ANGLE_TOL = 1e-12


class BuresVariant(str, enum.Enum):
    STANDARD = "standard"
    AS_PRINTED = "as_printed"


class RelPurityMode(str, enum.Enum):
    EQ6_COHERENCE = "eq6_coherence"
    EQ4_GENERAL = "eq4_general"
    EQ6_INITIAL_COHERENCE = "eq6_initial_coherence"


@dataclass(frozen=True)
class QuadratureSpec:
    """Quadrature over ``[0, tau]`` (per-tau) or ``[0, tmax]`` (sweeps).

    :param n: number of subintervals; even for Simpson.
    :param singular_guard: half-width around zeros of ``G`` where the
        relative-purity integrand is skipped (exact zeros are always skipped).
    :param singular_window: mesh intervals on each side of a non-smooth point
        (``t = 0``, zeros of ``G`` and of ``Gdot``) that are integrated with
        graded Gauss-Legendre instead of the composite rule; 0 disables.
    """

    n: int = 2000
    scheme: str = "simpson"
    singular_guard: float = 0.0
    singular_window: int = 8

    def __post_init__(self):
        if self.scheme not in ("simpson", "trapezoid"):
            raise ValueError(f"unknown quadrature scheme {self.scheme!r}")
        if self.n < 2 or (self.scheme == "simpson" and self.n % 2):
            raise ValueError(f"n must be >= 2 and even for simpson, got {self.n}")
        if self.singular_guard < 0:
            raise ValueError("singular_guard must be >= 0")
        if self.singular_window < 0:
            raise ValueError("singular_window must be >= 0")

    def cumulative(self, y, h):
        if self.scheme == "simpson":
            return kernels.cumulative_simpson(y, h)
        return kernels.cumulative_trapezoid(y, h)


class GeometricBound(NamedTuple):
    tau: float
    value: float
    angle: float
    lambda_op: float
    lambda_tr: float
    lambda_hs: float
    flags: frozenset


class RelPurityBound(NamedTuple):
    tau: float
    value: float
    f: float
    theta: float
    denominator: float
    mode: str
    flags: frozenset


class CoherenceBound(NamedTuple):
    tau: float
    value: float
    numerator: float
    lambda_rms: float
    lambda_rms_d: float
    lognorm_avg: float
    lognorm_avg_d: float
    flags: frozenset


class RelativePurity(NamedTuple):
    f: float
    theta: float


@dataclass(frozen=True)
class QslResult:
    tau: float
    tau_qsl_fisher: float
    tau_qsl_wy: float
    tau_qsl_relpurity: float
    tau_csl: float
    bures_angle: float
    wy_angle: float
    lambda_op: float
    lambda_tr: float
    lambda_hs: float
    theta: float
    f_rel_purity: float
    lambda_rms: float
    lambda_rms_d: float
    lognorm_avg: float
    lognorm_avg_d: float
    flags: frozenset = frozenset()


class Extremum(NamedTuple):
    t: float
    kind: str
    value: float
    index: int


# --- integrands -------------------------------------------------------------


def _roots(fn, values, t):
    roots = [float(t[i]) for i in np.nonzero(values == 0.0)[0]]
    for i in np.nonzero(np.sign(values[:-1]) * np.sign(values[1:]) < 0)[0]:
        roots.append(brentq(fn, t[i], t[i + 1], xtol=1e-15, rtol=1e-15))
    return sorted(roots)


def g_zeros(params, tmax, resolution=1e-3):
    """Zeros of ``G`` in ``[0, tmax]`` by sign scan plus bisection."""
    t = np.linspace(0.0, tmax, max(int(math.ceil(tmax / resolution)), 2) + 1)
    g, _ = g_series(t, params)
    return _roots(lambda s: g_function(s, params).g, g, t)


def gdot_zeros(params, tmax, resolution=1e-3):
    """Zeros of ``Gdot`` in ``(0, tmax]`` (turning points of ``|G|``)."""
    t = np.linspace(0.0, tmax, max(int(math.ceil(tmax / resolution)), 2) + 1)
    _, gdot = g_series(t, params)
    gdot[0] = gdot[1]  # t = 0 is always a zero; reported separately
    return [r for r in _roots(lambda s: g_function(s, params).gdot, gdot, t) if r > 0]


@dataclass(frozen=True)
class Integrands:
    """Integrands and state functionals sampled on a uniform mesh."""

    t: np.ndarray
    g: np.ndarray
    gdot: np.ndarray
    states: tuple
    norm_op: np.ndarray
    norm_tr: np.ndarray
    norm_hs: np.ndarray
    hs_sq: np.ndarray
    hs_sq_dephased: np.ndarray
    lognorm_sq: np.ndarray
    lognorm_sq_dephased: np.ndarray
    entropy: np.ndarray
    entropy_dephased: np.ndarray
    relpurity: dict
    skipped: np.ndarray
    flags: frozenset = field(default_factory=frozenset)


def _state_arrays(params, g):
    rho0 = params.rho0
    ee0 = rho0[1, 1].real
    eg0 = complex(rho0[1, 0])
    d = g * g * ee0
    return 1.0 - d, d, g * eg0.real, g * eg0.imag


def _generator_arrays(params, g, gdot):
    rho0 = params.rho0
    ee0 = rho0[1, 1].real
    eg0 = complex(rho0[1, 0])
    dee = 2.0 * g * gdot * ee0
    return -dee, dee, gdot * eg0.real, gdot * eg0.imag


def _ref(rho):
    return (float(rho[0, 0].real), float(rho[1, 1].real), float(rho[1, 0].real), float(rho[1, 0].imag))


def evaluate_integrands(params, t, floor=qmat.DEFAULT_FLOOR, singular_guard=0.0):
    t = np.asarray(t, dtype=float)
    g, gdot = g_series(t, params)
    a, d, br, bi = _state_arrays(params, g)
    la, ld, lbr, lbi = _generator_arrays(params, g, gdot)
    op, tr, hs = kernels.hermitian_norms(la, ld, lbr, lbi)
    zero = np.zeros_like(t)
    s, lsq = kernels.entropy_logs(a, d, br, bi, floor)
    s_d, lsq_d = kernels.entropy_logs(a, d, zero, zero, floor)
    if np.max(lsq, initial=0.0) > MAX_LOG_EIGENVALUE**2 or np.max(lsq_d, initial=0.0) > MAX_LOG_EIGENVALUE**2:
        raise FloorTooSmall(f"log eigenvalue magnitude exceeds {MAX_LOG_EIGENVALUE:g} with floor {floor:g}")

    skipped = np.abs(g) < RATE_SINGULAR_G
    if singular_guard > 0:
        for z in g_zeros(params, float(t[-1])):
            skipped |= np.abs(t - z) <= singular_guard
    flags = set()
    if skipped.mean() > SINGULAR_FRACTION:
        flags.add(SINGULAR_INTEGRAND)
    safe_g = np.where(skipped, 1.0, g)
    # |d p / dt| / p^2 with the decoherence function p = G
    weight = np.where(skipped, 0.0, np.abs(gdot) / (safe_g * safe_g))
    c_l1_t = 2.0 * np.hypot(br, bi)
    c_l1_0 = qmat.l1_coherence(params.rho0)
    relpurity = {
        RelPurityMode.EQ6_COHERENCE: weight * c_l1_t,
        RelPurityMode.EQ6_INITIAL_COHERENCE: weight * c_l1_0,
        RelPurityMode.EQ4_GENERAL: hs,
    }
    return Integrands(
        t=t, g=g, gdot=gdot, states=(a, d, br, bi),
        norm_op=op, norm_tr=tr, norm_hs=hs,
        hs_sq=hs * hs, hs_sq_dephased=la * la + ld * ld,
        lognorm_sq=lsq, lognorm_sq_dephased=lsq_d,
        entropy=s, entropy_dephased=s_d,
        relpurity=relpurity, skipped=skipped, flags=frozenset(flags),
    )


def _check_tau(grid, tau):
    if not tau > 0:
        raise ValueError(f"tau must be > 0, got {tau!r}")
    if tau > grid.tmax * (1.0 + 1e-12):
        raise GridTooShort(f"tau={tau!r} beyond grid tmax={grid.tmax!r}")


INTEGRAND_FIELDS = (
    "norm_op", "norm_tr", "norm_hs", "hs_sq", "hs_sq_dephased",
    "lognorm_sq", "lognorm_sq_dephased",
)
_GL_X, _GL_W = np.polynomial.legendre.leggauss(16)
GRADING_LEVELS = 40


def _field(ig, name):
    if isinstance(name, RelPurityMode):
        return ig.relpurity[name]
    return getattr(ig, name)


def _graded(lo, hi, toward_lo, toward_hi):
    if toward_lo and toward_hi:
        mid = 0.5 * (lo + hi)
        return _graded(lo, mid, True, False) + _graded(mid, hi, False, True)
    if not (toward_lo or toward_hi):
        return [(lo, hi)]
    length = hi - lo
    cuts = length * 0.5 ** np.arange(GRADING_LEVELS + 1)
    cuts = np.append(cuts, 0.0)[::-1]
    if toward_lo:
        edges = lo + cuts
    else:
        edges = hi - cuts[::-1]
    return list(zip(edges[:-1], edges[1:]))


def _window_nodes(mesh, k0, k1, points):
    """Gauss-Legendre nodes/weights per mesh interval ``k0 .. k1 - 1``."""
    nodes, weights, owner = [], [], []
    eps = 1e-12 * (mesh[1] - mesh[0])
    for k in range(k0, k1):
        lo, hi = float(mesh[k]), float(mesh[k + 1])
        inside = [p for p in points if lo + eps < p < hi - eps]
        cuts = [lo] + inside + [hi]
        for a, b in zip(cuts[:-1], cuts[1:]):
            near_a = any(abs(a - p) <= eps for p in points)
            near_b = any(abs(b - p) <= eps for p in points)
            for u, v in _graded(a, b, near_a, near_b):
                half = 0.5 * (v - u)
                nodes.append(0.5 * (u + v) + half * _GL_X)
                weights.append(half * _GL_W)
                owner.append(np.full(_GL_X.size, k - k0))
    return np.concatenate(nodes), np.concatenate(weights), np.concatenate(owner)


def _windows(mesh, points, width):
    n = mesh.size - 1
    h = mesh[1] - mesh[0]
    spans = []
    for p in points:
        c = p / h
        k0 = max(0, 2 * int(math.floor((c - width) / 2)))
        k1 = min(n, 2 * int(math.ceil((c + width) / 2)))
        if k1 > k0:
            spans.append([k0, k1, [p]])
    spans.sort()
    merged = []
    for span in spans:
        if merged and span[0] <= merged[-1][1]:
            merged[-1][1] = max(merged[-1][1], span[1])
            merged[-1][2] += span[2]
        else:
            merged.append(span)
    return merged


def special_points(params, tmax):
    """Non-smooth points of the integrands: ``(all_fields, log_only)``.

    ``t = 0`` and zeros of ``Gdot`` (kinks of the norms) affect every field;
    zeros of ``G`` are log singularities of the entropic fields and are
    excluded for the divergent relative-purity integrands.
    """
    kinks = [0.0] + gdot_zeros(params, tmax)
    return kinks, g_zeros(params, tmax)


def cumulative_tables(params, mesh, ig, quad, names, floor=qmat.DEFAULT_FLOOR):
    """Running integrals ``int_0^t`` of the named integrands on ``mesh``."""
    h = float(mesh[1] - mesh[0])
    tables = {name: quad.cumulative(_field(ig, name), h) for name in names}
    if quad.singular_window == 0:
        return tables
    kinks, zeros = special_points(params, float(mesh[-1]))
    cache = {}
    for name in names:
        divergent = name in (RelPurityMode.EQ6_COHERENCE, RelPurityMode.EQ6_INITIAL_COHERENCE)
        points = kinks if divergent else sorted(kinks + zeros)
        cum = tables[name]
        out = cum.copy()
        for k0, k1, pts in _windows(mesh, points, quad.singular_window):
            key = (k0, k1, tuple(pts))
            if key not in cache:
                x, w, owner = _window_nodes(mesh, k0, k1, pts)
                cache[key] = (evaluate_integrands(params, x, floor, quad.singular_guard), w, owner)
            wig, w, owner = cache[key]
            parts = np.bincount(owner, weights=w * _field(wig, name), minlength=k1 - k0)
            base = out[k0]
            out[k0:k1 + 1] = base + np.concatenate(([0.0], np.cumsum(parts)))
            out[k1 + 1:] = cum[k1 + 1:] + (out[k1] - cum[k1])
        tables[name] = out
    return tables


def _averages(grid, tau, quad, names, floor=qmat.DEFAULT_FLOOR):
    mesh = np.linspace(0.0, tau, quad.n + 1)
    ig = evaluate_integrands(grid.params, mesh, floor, quad.singular_guard)
    tables = cumulative_tables(grid.params, mesh, ig, quad, names, floor)
    return ig, {name: float(tables[name][-1] / tau) for name in names}


# --- per-tau measures -------------------------------------------------------


def time_averaged_norms(grid, tau, quad=QuadratureSpec()):
    """Time averages of the operator, trace and Hilbert-Schmidt generator norms."""
    _check_tau(grid, tau)
    _, avg = _averages(grid, tau, quad, ("norm_op", "norm_tr", "norm_hs"))
    return avg["norm_op"], avg["norm_tr"], avg["norm_hs"]


def angle_from_fidelity(f, variant=BuresVariant.STANDARD):
    if not -ANGLE_TOL <= f <= 1.0 + ANGLE_TOL:
        raise DomainError(f"fidelity {f!r} outside [0, 1]")
    f = min(max(f, 0.0), 1.0)
    if BuresVariant(variant) is BuresVariant.STANDARD:
        return math.acos(math.sqrt(f))
    return math.acos(f)


def bures_angle(rho0, rho_t, variant=BuresVariant.STANDARD):
    """``arccos(sqrt F)`` (standard) or ``arccos(F)`` (as printed)."""
    return angle_from_fidelity(qmat.fidelity(rho0, rho_t), variant)


def wy_angle(rho0, rho_t):
    return math.acos(min(max(qmat.affinity(rho0, rho_t), 0.0), 1.0))


def _geometric(tau, angle, lambdas):
    lam_op, lam_tr, lam_hs = lambdas
    flags = set()
    if lam_op <= 0.0:
        if angle > ANGLE_TOL:
            raise ZeroGenerator(f"generator vanishes but the state moved (angle {angle:.3e})")
        flags.add(STATIONARY)
        value = 0.0
    else:
        # max over the three reciprocals is 1/lambda_op since op <= hs <= tr
        value = max(1.0 / lam_op, 1.0 / lam_tr, 1.0 / lam_hs) * math.sin(angle) ** 2
    return GeometricBound(tau, value, angle, lam_op, lam_tr, lam_hs, frozenset(flags))


def tau_qsl_fisher(grid, tau, quad=QuadratureSpec(), variant=BuresVariant.STANDARD):
    lambdas = time_averaged_norms(grid, tau, quad)
    angle = bures_angle(grid.params.rho0, propagate(grid.params, tau), variant)
    return _geometric(tau, angle, lambdas)


def tau_qsl_wy(grid, tau, quad=QuadratureSpec()):
    lambdas = time_averaged_norms(grid, tau, quad)
    angle = wy_angle(grid.params.rho0, propagate(grid.params, tau))
    return _geometric(tau, angle, lambdas)


def relative_purity(grid, tau):
    if tau < 0:
        raise ValueError("tau must be >= 0")
    rho0 = grid.params.rho0
    rho_t = propagate(grid.params, tau)
    f = float(np.real(np.trace(rho_t @ rho0)) / np.real(np.trace(rho0 @ rho0)))
    f = min(max(f, -1.0), 1.0)
    return RelativePurity(f, math.acos(f))


def _relpurity_value(theta, purity0, avg_integrand, mode, flags):
    mode = RelPurityMode(mode)
    prefactor = 4.0 * math.sqrt(2.0) if mode is not RelPurityMode.EQ4_GENERAL else 4.0
    denominator = math.pi**2 * avg_integrand
    if denominator <= 0.0:
        if theta > ANGLE_TOL:
            raise ZeroGenerator(f"relative purity denominator vanishes with theta={theta:.3e}")
        return 0.0, denominator, flags | {STATIONARY}
    return prefactor * theta**2 * purity0 / denominator, denominator, flags


def tau_qsl_relpurity(grid, tau, quad=QuadratureSpec(), mode=RelPurityMode.EQ6_COHERENCE):
    _check_tau(grid, tau)
    mode = RelPurityMode(mode)
    ig, avg = _averages(grid, tau, quad, (mode,))
    rp = relative_purity(grid, tau)
    rho0 = grid.params.rho0
    purity0 = float(np.real(np.trace(rho0 @ rho0)))
    value, den, flags = _relpurity_value(rp.theta, purity0, avg[mode], mode, set(ig.flags))
    return RelPurityBound(tau, value, rp.f, rp.theta, den, mode.value, frozenset(flags))


def _coherence(entropy, entropy_dephased):
    return max(entropy_dephased - entropy, 0.0)


def tau_csl(grid, tau, quad=QuadratureSpec(), floor=qmat.DEFAULT_FLOOR):
    _check_tau(grid, tau)
    if not floor > 0:
        raise ValueError("floor must be > 0")
    names = ("hs_sq", "hs_sq_dephased", "lognorm_sq", "lognorm_sq_dephased")
    ig, avg = _averages(grid, tau, quad, names, floor)

    def rms(name):
        return math.sqrt(max(avg[name], 0.0))

    numerator = abs(_coherence(ig.entropy[-1], ig.entropy_dephased[-1])
                    - _coherence(ig.entropy[0], ig.entropy_dephased[0]))
    lam_rms, lam_rms_d = rms("hs_sq"), rms("hs_sq_dephased")
    log_avg, log_avg_d = rms("lognorm_sq"), rms("lognorm_sq_dephased")
    denominator = lam_rms_d * log_avg_d + lam_rms * log_avg
    flags = set()
    if denominator <= 0.0:
        if numerator > 0.0:
            raise ZeroGenerator("coherence changed under a vanishing generator")
        flags.add(STATIONARY)
        value = 0.0
    else:
        value = numerator / denominator
    return CoherenceBound(tau, value, numerator, lam_rms, lam_rms_d, log_avg, log_avg_d, frozenset(flags))


def qsl_at(grid, tau, quad=QuadratureSpec(), variant=BuresVariant.STANDARD,
           mode=RelPurityMode.EQ6_COHERENCE, floor=qmat.DEFAULT_FLOOR):
    """All four bounds at one driving time."""
    fisher = tau_qsl_fisher(grid, tau, quad, variant)
    wy = tau_qsl_wy(grid, tau, quad)
    rp = tau_qsl_relpurity(grid, tau, quad, mode)
    csl = tau_csl(grid, tau, quad, floor)
    return QslResult(
        tau=tau,
        tau_qsl_fisher=fisher.value, tau_qsl_wy=wy.value,
        tau_qsl_relpurity=rp.value, tau_csl=csl.value,
        bures_angle=fisher.angle, wy_angle=wy.angle,
        lambda_op=fisher.lambda_op, lambda_tr=fisher.lambda_tr, lambda_hs=fisher.lambda_hs,
        theta=rp.theta, f_rel_purity=rp.f,
        lambda_rms=csl.lambda_rms, lambda_rms_d=csl.lambda_rms_d,
        lognorm_avg=csl.lognorm_avg, lognorm_avg_d=csl.lognorm_avg_d,
        flags=fisher.flags | wy.flags | rp.flags | csl.flags,
    )


# --- sweep over every grid instant -----------------------------------------


@dataclass(frozen=True)
class QslSweep:
    """Every bound and intermediate at each instant of a trajectory grid.

    Values at ``tau = 0`` are the ``tau -> 0+`` limits: bounds are 0 and
    averages equal the integrand at ``t = 0``.
    """

    tau: np.ndarray
    tau_qsl_fisher: np.ndarray
    tau_qsl_wy: np.ndarray
    tau_qsl_relpurity: np.ndarray
    tau_csl: np.ndarray
    bures_angle: np.ndarray
    wy_angle: np.ndarray
    lambda_op: np.ndarray
    lambda_tr: np.ndarray
    lambda_hs: np.ndarray
    theta: np.ndarray
    f_rel_purity: np.ndarray
    lambda_rms: np.ndarray
    lambda_rms_d: np.ndarray
    lognorm_avg: np.ndarray
    lognorm_avg_d: np.ndarray
    c_relent: np.ndarray
    variant: str
    mode: str
    flags: frozenset

    def at(self, i):
        return QslResult(**{
            name: float(getattr(self, name)[i])
            for name in QslResult.__dataclass_fields__ if name != "flags"
        }, flags=self.flags)


def _ratio(num, den):
    out = np.zeros_like(num)
    ok = den > 0
    out[ok] = num[ok] / den[ok]
    return out


def qsl_sweep(grid, quad=None, variant=BuresVariant.STANDARD, mode=RelPurityMode.EQ6_COHERENCE,
              floor=qmat.DEFAULT_FLOOR):
    """Evaluate all bounds for ``tau`` at every instant of ``grid``.

    ``quad.n`` counts subintervals over ``[0, tmax]`` and must be a multiple
    of the grid's interval count (default: equal to it).
    """
    variant = BuresVariant(variant)
    mode = RelPurityMode(mode)
    if quad is None:
        quad = QuadratureSpec(n=grid.n)
    if quad.n % grid.n:
        raise ValueError(f"quadrature n={quad.n} must be a multiple of grid n={grid.n}")
    stride = quad.n // grid.n
    params = grid.params
    mesh = np.linspace(0.0, grid.tmax, quad.n + 1)
    ig = evaluate_integrands(params, mesh, floor, quad.singular_guard)
    tables = cumulative_tables(params, mesh, ig, quad, INTEGRAND_FIELDS + (mode,), floor)
    tau = mesh[::stride]
    positive = tau > 0

    def running_avg(name):
        cum = tables[name][::stride]
        out = np.empty_like(tau)
        out[positive] = cum[positive] / tau[positive]
        out[~positive] = _field(ig, name)[0]
        return out

    lam_op = running_avg("norm_op")
    lam_tr = running_avg("norm_tr")
    lam_hs = running_avg("norm_hs")
    a, d, br, bi = (x[::stride] for x in ig.states)
    ref = _ref(params.rho0)
    fid = kernels.fidelity_to(ref, a, d, br, bi)
    aff = kernels.affinity_to(ref, a, d, br, bi)
    if variant is BuresVariant.STANDARD:
        b_angle = np.arccos(np.sqrt(fid))
    else:
        b_angle = np.arccos(fid)
    w_angle = np.arccos(aff)
    inv = _ratio(np.ones_like(lam_op), lam_op)
    fisher = inv * np.sin(b_angle) ** 2
    wy = inv * np.sin(w_angle) ** 2

    rho0 = params.rho0
    purity0 = float(np.real(np.trace(rho0 @ rho0)))
    overlap = ref[0] * a + ref[1] * d + 2.0 * (ref[2] * br + ref[3] * bi)
    f_rp = np.clip(overlap / purity0, -1.0, 1.0)
    theta = np.arccos(f_rp)
    prefactor = 4.0 if mode is RelPurityMode.EQ4_GENERAL else 4.0 * math.sqrt(2.0)
    rp_den = math.pi**2 * running_avg(mode)
    relp = _ratio(prefactor * theta**2 * purity0, rp_den)

    c = np.maximum(ig.entropy_dephased - ig.entropy, 0.0)[::stride]
    lam_rms = np.sqrt(np.maximum(running_avg("hs_sq"), 0.0))
    lam_rms_d = np.sqrt(np.maximum(running_avg("hs_sq_dephased"), 0.0))
    log_avg = np.sqrt(np.maximum(running_avg("lognorm_sq"), 0.0))
    log_avg_d = np.sqrt(np.maximum(running_avg("lognorm_sq_dephased"), 0.0))
    csl = _ratio(np.abs(c - c[0]), lam_rms_d * log_avg_d + lam_rms * log_avg)

    for arr in (fisher, wy, relp, csl):
        arr[~positive] = 0.0
    flags = set(ig.flags)
    if not np.any(lam_op[positive] > 0):
        flags.add(STATIONARY)
    return QslSweep(
        tau=tau, tau_qsl_fisher=fisher, tau_qsl_wy=wy, tau_qsl_relpurity=relp, tau_csl=csl,
        bures_angle=b_angle, wy_angle=w_angle, lambda_op=lam_op, lambda_tr=lam_tr, lambda_hs=lam_hs,
        theta=theta, f_rel_purity=f_rp, lambda_rms=lam_rms, lambda_rms_d=lam_rms_d,
        lognorm_avg=log_avg, lognorm_avg_d=log_avg_d, c_relent=c,
        variant=variant.value, mode=mode.value, flags=frozenset(flags),
    )


# --- extrema ----------------------------------------------------------------


def extrema_locator(times, series, min_prominence=0.0):
    """Interior local extrema with at least ``min_prominence``, sorted by time.

    Positions are refined by a parabola through the three samples around
    each extremum.
    """
    times = np.asarray(times, dtype=float)
    y = np.asarray(series, dtype=float)
    if y.size < 3:
        return []
    h = times[1] - times[0]
    found = []
    for kind, sign in (("max", 1.0), ("min", -1.0)):
        idx, _ = find_peaks(sign * y, prominence=min_prominence if min_prominence > 0 else None)
        if min_prominence <= 0:
            idx = idx[(sign * y[idx] > sign * y[idx - 1]) & (sign * y[idx] > sign * y[idx + 1])]
        for i in idx:
            y0, y1, y2 = y[i - 1], y[i], y[i + 1]
            curv = y0 - 2.0 * y1 + y2
            delta = 0.0 if curv == 0 else min(max(0.5 * (y0 - y2) / curv, -1.0), 1.0)
            found.append(Extremum(float(times[i] + delta * h), kind,
                                  float(y1 - 0.25 * (y0 - y2) * delta), int(i)))
    return sorted(found, key=lambda e: e.t)


class ExtremumPair(NamedTuple):
    t: float
    kind: str
    partner_t: float
    partner_kind: str
    distance: float
    matched: bool


def pair_extrema(reference, candidates, same_kind, tolerance):
    """Pair each reference extremum with the nearest candidate of the wanted kind.

    ``matched`` is true when that candidate lies within ``tolerance``;
    ``partner_t`` is ``nan`` when no candidate of the wanted kind exists.
    """
    pairs = []
    for e in reference:
        want = e.kind if same_kind else ("min" if e.kind == "max" else "max")
        pool = [c for c in candidates if c.kind == want]
        if not pool:
            pairs.append(ExtremumPair(e.t, e.kind, math.nan, want, math.inf, False))
            continue
        best = min(pool, key=lambda c: abs(c.t - e.t))
        dist = abs(best.t - e.t)
        pairs.append(ExtremumPair(e.t, e.kind, best.t, want, dist, dist <= tolerance))
    return pairs
