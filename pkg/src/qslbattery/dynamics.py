"""Reduced dynamics of a qubit decaying into a Lorentzian bosonic bath.

All quantities use hbar = k_B = 1 and are in the interaction picture, where
the closed-form map is ``rho_ee(t) = |G|^2 rho_ee(0)`` and
``rho_eg(t) = G rho_eg(0)``.
"""

from dataclasses import dataclass, field
import cmath
import enum
import math
from typing import NamedTuple

import numpy as np

from . import kernels
from .errors import GridDegenerate, RateSingular, StepSizeTooCoarse

STANDARD_AD_RATIO = 100.0
RATE_SINGULAR_G = 1e-10
NORMALIZATION_TOL = 1e-12


class Regime(enum.Enum):
    NON_MARKOVIAN = "NonMarkovian"
    TIME_DEPENDENT_MARKOVIAN = "TimeDependentMarkovian"
    STANDARD_AD = "StandardAD"

    @property
    def markovian(self):
        return self is not Regime.NON_MARKOVIAN


@dataclass(frozen=True)
class ModelParams:
    """Model parameters; ``c_g``/``c_e`` are the initial ground/excited amplitudes."""

    omega0: float = 1.0
    lam: float = 0.5
    gamma0: float = 10.0
    temperature: float = 1.0
    c_g: complex = math.sqrt(3.0) / 2.0
    c_e: complex = 0.5

    def __post_init__(self):
        for name in ("omega0", "lam", "gamma0", "temperature"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise ValueError(f"{name} must be > 0, got {value!r}")
        norm = abs(self.c_g) ** 2 + abs(self.c_e) ** 2
        if abs(norm - 1.0) > NORMALIZATION_TOL:
            raise ValueError(f"|c_g|^2 + |c_e|^2 = {norm!r}, expected 1")

    def replace(self, **changes):
        values = {
            "omega0": self.omega0,
            "lam": self.lam,
            "gamma0": self.gamma0,
            "temperature": self.temperature,
            "c_g": self.c_g,
            "c_e": self.c_e,
        }
        values.update(changes)
        return ModelParams(**values)

    @property
    def rho0(self):
        psi = np.array([self.c_g, self.c_e], dtype=complex)
        return np.outer(psi, psi.conj())


NON_MARKOVIAN_PRESET = ModelParams()
MARKOVIAN_PRESET = ModelParams(gamma0=0.1)


class GSample(NamedTuple):
    t: float
    g: float
    gdot: float


class Sample(NamedTuple):
    g: GSample
    rho: np.ndarray
    lrho: np.ndarray


class Rates(NamedTuple):
    gamma: float
    shift: float


@dataclass(frozen=True)
class TrajectoryGrid:
    """Uniformly sampled trajectory.

    ``rho`` and ``lrho`` have shape ``(n + 1, 2, 2)``; ``lrho`` is the
    generator output ``d rho / dt`` at each sample.
    """

    params: ModelParams
    times: np.ndarray
    g: np.ndarray
    gdot: np.ndarray
    rho: np.ndarray
    lrho: np.ndarray
    method: str = "exact"
    meta: dict = field(default_factory=dict, compare=False)

    @property
    def n(self):
        return self.times.size - 1

    @property
    def tmax(self):
        return float(self.times[-1])

    @property
    def h(self):
        return float(self.times[1] - self.times[0])

    def __len__(self):
        return self.times.size

    def sample(self, i):
        return Sample(GSample(float(self.times[i]), float(self.g[i]), float(self.gdot[i])),
                      self.rho[i], self.lrho[i])


def coupling_regime(params):
    if params.lam < 2.0 * params.gamma0:
        return Regime.NON_MARKOVIAN
    if params.lam / params.gamma0 >= STANDARD_AD_RATIO:
        return Regime.STANDARD_AD
    return Regime.TIME_DEPENDENT_MARKOVIAN


def g_function(t, params):
    """``G(t)`` and its closed-form derivative as a :class:`GSample`.

    For ``lam < 2 gamma0`` ``l`` is a complex square root and the imaginary
    part of the result is roundoff; for real ``l`` the overflow-free
    exponential form is used.
    """
    if t < 0:
        raise ValueError("t must be >= 0")
    lam, gamma0 = params.lam, params.gamma0
    disc = lam * lam - 2.0 * gamma0 * lam
    if disc > 0.0:
        # Real l: two decaying exponentials, no cosh overflow for large lam t.
        l = math.sqrt(disc)
        slow = math.exp(-0.5 * t * 2.0 * gamma0 * lam / (lam + l))  # exp(-(lam - l) t / 2)
        fast = math.exp(-0.5 * (lam + l) * t)
        g = 0.5 * ((1.0 + lam / l) * slow + (1.0 - lam / l) * fast)
        return GSample(t, g, -0.5 * (gamma0 * lam / l) * (slow - fast))
    env = math.exp(-0.5 * lam * t)
    if disc == 0.0:
        return GSample(t, env * (1.0 + 0.5 * lam * t), -0.5 * gamma0 * lam * t * env)
    l = cmath.sqrt(disc)
    x = 0.5 * l * t
    sh = cmath.sinh(x)
    g = env * (cmath.cosh(x) + (lam / l) * sh)
    gdot = -(gamma0 * lam / l) * env * sh
    return GSample(t, g.real, gdot.real)


def g_series(t, params):
    """Vectorized ``(G, Gdot)`` on an array of times."""
    return kernels.decoherence(np.asarray(t, dtype=float), params.lam, params.gamma0)


def rates(t, params):
    """Time-local decay rate ``gamma = -2 Re(Gdot/G)`` and shift ``-2 Im(Gdot/G)``.

    :raises RateSingular: where ``|G| < 1e-10``; the rate diverges at zeros of G.
    """
    s = g_function(t, params)
    if abs(s.g) < RATE_SINGULAR_G:
        raise RateSingular(f"|G(t)| = {abs(s.g):.3e} at t={t!r}")
    ratio = s.gdot / s.g
    # G is real for the resonant Lorentzian model, so the shift vanishes.
    return Rates(-2.0 * ratio, 0.0)


def state_at(params, g):
    rho0 = params.rho0
    ree = abs(g) ** 2 * rho0[1, 1].real
    reg = g * rho0[1, 0]
    return np.array([[1.0 - ree, np.conj(reg)], [reg, ree]], dtype=complex)


def propagate(params, t):
    return state_at(params, g_function(t, params).g)


def generator_at(params, g, gdot):
    rho0 = params.rho0
    dee = 2.0 * g * gdot * rho0[1, 1].real
    deg = gdot * rho0[1, 0]
    return np.array([[-dee, np.conj(deg)], [deg, dee]], dtype=complex)


def liouvillian_at(params, t):
    """Right-hand side of the master equation at ``rho_t``, from ``G`` and ``Gdot``.

    Finite at zeros of ``G``; never goes through the divergent rate.
    """
    s = g_function(t, params)
    return generator_at(params, s.g, s.gdot)


def states_from_g(params, g, gdot):
    """Stacked states and generator outputs for arrays of ``G`` and ``Gdot``."""
    rho0 = params.rho0
    ee0 = rho0[1, 1].real
    eg0 = rho0[1, 0]
    n = g.size
    rho = np.empty((n, 2, 2), dtype=complex)
    ree = g * g * ee0
    reg = g * eg0
    rho[:, 0, 0] = 1.0 - ree
    rho[:, 1, 1] = ree
    rho[:, 1, 0] = reg
    rho[:, 0, 1] = np.conj(reg)
    lrho = np.empty((n, 2, 2), dtype=complex)
    dee = 2.0 * g * gdot * ee0
    deg = gdot * eg0
    lrho[:, 0, 0] = -dee
    lrho[:, 1, 1] = dee
    lrho[:, 1, 0] = deg
    lrho[:, 0, 1] = np.conj(deg)
    return rho, lrho


def uniform_times(tmax, n):
    if not tmax > 0:
        raise GridDegenerate(f"empty time span tmax={tmax!r}")
    if n < 2:
        raise GridDegenerate(f"need at least 2 intervals, got {n}")
    return np.linspace(0.0, tmax, n + 1)


def build_trajectory(params, tmax, n):
    """Sample the exact map and its generator on ``n + 1`` uniform instants."""
    if n % 2:
        raise GridDegenerate(f"interval count must be even for Simpson, got {n}")
    times = uniform_times(tmax, n)
    g, gdot = g_series(times, params)
    rho, lrho = states_from_g(params, g, gdot)
    return TrajectoryGrid(params, times, g, gdot, rho, lrho)


# --- independent RK4 oracle -------------------------------------------------


def _rk4_rhs(params, t, u, reg):
    # Rate form. The excited population is carried as rho_ee(0) * u**2 with
    # u' = -gamma/2 u: the population equation itself has non-unique
    # continuations through zeros of G, its amplitude does not.
    gamma, shift = rates(t, params)
    k = 0.5 * gamma + 0.5j * shift
    return -0.5 * gamma * u, -k * reg


def _rk4_step(params, t, h, y):
    u, reg = y
    k1 = _rk4_rhs(params, t, u, reg)
    k2 = _rk4_rhs(params, t + 0.5 * h, u + 0.5 * h * k1[0], reg + 0.5 * h * k1[1])
    k3 = _rk4_rhs(params, t + 0.5 * h, u + 0.5 * h * k2[0], reg + 0.5 * h * k2[1])
    k4 = _rk4_rhs(params, t + h, u + h * k3[0], reg + h * k3[1])
    return (
        u + h / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]),
        reg + h / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1]),
    )


def _rk4_adaptive(params, t, h, y, tol, depth, max_depth, stats):
    """One nominal step with step-doubling error control and recursive halving."""
    try:
        full = _rk4_step(params, t, h, y)
        mid = _rk4_step(params, t, 0.5 * h, y)
        half = _rk4_step(params, t + 0.5 * h, 0.5 * h, mid)
        err = max(abs(full[0] - half[0]), abs(full[1] - half[1]))
    except RateSingular:
        full = half = None
        err = math.inf
    if err <= tol:
        return half, err
    if depth >= max_depth:
        if half is None or err > 1e-3:
            raise StepSizeTooCoarse(f"local error {err:.3e} at t={t!r} after {depth} halvings")
        return half, err
    stats["halvings"] += 1
    y_mid, e1 = _rk4_adaptive(params, t, 0.5 * h, y, tol, depth + 1, max_depth, stats)
    y_end, e2 = _rk4_adaptive(params, t + 0.5 * h, 0.5 * h, y_mid, tol, depth + 1, max_depth, stats)
    return y_end, max(e1, e2)


def rk4_oracle(params, tmax, steps, tol=1e-13, max_depth=40):
    """Integrate the rate form of the master equation with fixed-step RK4.

    Each of ``steps`` nominal steps is checked by step doubling and halved
    recursively where the local error exceeds ``tol`` (near zeros of G the
    rate diverges). Independent of the closed-form map.
    """
    times = uniform_times(tmax, steps)
    h = float(times[1] - times[0])
    rho0 = params.rho0
    ee0 = rho0[1, 1].real
    y = (1.0, complex(rho0[1, 0]))
    u = np.empty(times.size)
    reg = np.empty(times.size, dtype=complex)
    u[0], reg[0] = y
    stats = {"halvings": 0, "max_local_error": 0.0}
    for i in range(steps):
        y, err = _rk4_adaptive(params, float(times[i]), h, y, tol, 0, max_depth, stats)
        stats["max_local_error"] = max(stats["max_local_error"], err)
        u[i + 1], reg[i + 1] = y
    ree = ee0 * u * u
    rho = np.empty((times.size, 2, 2), dtype=complex)
    rho[:, 0, 0] = 1.0 - ree
    rho[:, 1, 1] = ree
    rho[:, 1, 0] = reg
    rho[:, 0, 1] = np.conj(reg)
    g, gdot = g_series(times, params)
    lrho = np.empty_like(rho)
    for i, t in enumerate(times):
        try:
            du, deg = _rk4_rhs(params, float(t), u[i], reg[i])
            dee = 2.0 * ee0 * u[i] * du
            lrho[i] = [[-dee, np.conj(deg)], [deg, dee]]
        except RateSingular:
            lrho[i] = generator_at(params, g[i], gdot[i])
    return TrajectoryGrid(params, times, g, gdot, rho, lrho, method="rk4", meta=stats)
