"""Acceptance criteria 1-10; the terminal summary prints one PASS/FAIL line each."""

import math

import numpy as np
import pytest

from qslbattery import cli, qmat, thermo
from qslbattery.dynamics import (
    ModelParams,
    build_trajectory,
    g_series,
    propagate,
    rk4_oracle,
)
from qslbattery.qsl import (
    BuresVariant,
    QuadratureSpec,
    RelPurityMode,
    extrema_locator,
    g_zeros,
    pair_extrema,
    qsl_sweep,
)

from oracles import T_STAR, brute_force_min_energy, euler_unitaries, random_state

H1 = thermo.qubit_hamiltonian(1.0)


def criterion(number, title):
    return pytest.mark.criterion(number, title)


def _min_eigs(rho):
    return np.linalg.eigvalsh(rho)[:, 0]


@pytest.fixture(scope="module")
def nm_table():
    return cli.sweep_table(cli.parse_config(None))


@pytest.fixture(scope="module")
def m_table():
    return cli.sweep_table(cli.parse_config({"gamma0": 0.1, "tmax": 15.0}))


# 1 -------------------------------------------------------------------------


@criterion(1, "dynamics fidelity: closed form vs RK4 oracle")
@pytest.mark.parametrize("gamma0", [10.0, 0.1])
def test_dynamics_fidelity(gamma0):
    params = ModelParams(gamma0=gamma0)
    steps = 15000  # 5000 per unit time over [0, 3]
    exact = build_trajectory(params, 3.0, steps)
    rk4 = rk4_oracle(params, 3.0, steps)
    err = np.max(np.abs(exact.rho - rk4.rho), axis=(1, 2))
    assert err.max() <= 1e-4
    away = np.ones_like(exact.times, dtype=bool)
    for z in g_zeros(params, 3.0):
        away &= np.abs(exact.times - z) > 0.01
    assert err[away].max() <= 1e-6
    for traj in (exact, rk4):
        trace = np.trace(traj.rho, axis1=1, axis2=2)
        assert np.max(np.abs(trace - 1.0)) <= 1e-12
        assert _min_eigs(traj.rho).min() >= -1e-12


# 2 -------------------------------------------------------------------------


@criterion(2, "regime behavior")
def test_regime_non_markovian(nm_params):
    t = np.linspace(0.0, 3.0, 3001)
    g, gdot = g_series(t, nm_params)
    ok = np.abs(g) > 1e-10
    gamma = -2.0 * gdot[ok] / g[ok]
    assert np.any(gamma < 0)
    zeros = g_zeros(nm_params, 3.0)
    assert zeros and abs(zeros[0] - 1.10776) <= 1e-4


@criterion(2, "regime behavior")
def test_regime_markovian(m_params):
    t = np.linspace(0.0, 15.0, 15001)
    g, gdot = g_series(t, m_params)
    assert np.all(-2.0 * gdot / g >= 0)
    assert g_zeros(m_params, 15.0) == []


@criterion(2, "regime behavior")
def test_regime_standard_ad_limit():
    params = ModelParams(lam=100.0, gamma0=0.1)
    assert cli.standard_ad_deviation(params, (0.1, 10.0)) <= 0.02


# 3 -------------------------------------------------------------------------


@criterion(3, "ergotropy vs brute-force unitary search")
def test_ergotropy_brute_force(rng):
    unitaries = euler_unitaries(60)
    for _ in range(100):
        rho = random_state(rng)
        passive = thermo.energy(thermo.passive_state(rho, H1), H1)
        brute = brute_force_min_energy(rho, 1.0, unitaries)
        assert passive - 1e-12 <= brute <= passive + 1e-3


@criterion(3, "ergotropy vs brute-force unitary search")
def test_initial_state_ergotropy(nm_params):
    assert abs(thermo.ergotropy(nm_params.rho0, H1) - 0.25) <= 1e-12


# 4 -------------------------------------------------------------------------


@criterion(4, "ergotropy split consistency")
def test_split_sum_and_closed_form(rng, nm_table):
    states = [random_state(rng) for _ in range(500)]
    grid = build_trajectory(ModelParams(), 3.0, 600)
    states += list(grid.rho)
    for rho in states:
        b = thermo.ergotropy_breakdown(rho, H1, 1.0)
        assert abs(b.w - (b.w_i + b.w_c)) <= 1e-10
        if rho[1, 1].real <= 0.5:
            assert abs(b.w_c - b.w_c_eq18_minus) <= 1e-9
    w, w_i, w_c = nm_table["w"], nm_table["w_i"], nm_table["w_c"]
    assert np.max(np.abs(w - w_i - w_c)) <= 1e-10


@criterion(4, "ergotropy split consistency")
def test_entropic_identity(rng):
    for _ in range(1000):
        rho = random_state(rng, full_rank=True)
        temperature = float(rng.uniform(0.2, 5.0))
        b = thermo.ergotropy_breakdown(rho, H1, temperature)
        assert abs(b.w_c_eq16 - b.w_c) <= 1e-8


# 5 -------------------------------------------------------------------------


@criterion(5, "battery cycle phenomenology")
def test_non_markovian_cycle(nm_params, nm_table):
    assert thermo.ergotropy(propagate(nm_params, T_STAR), H1) <= 1e-9
    t, w, p = nm_table["t"], nm_table["w"], nm_table["p_inst"]
    after = (t > T_STAR) & (t <= T_STAR + 1.0)
    assert w[after].max() > 0.01
    assert np.all(p[(t > 0) & (t < T_STAR)] < 0)
    assert p[np.argmax(t > T_STAR)] > 0


@criterion(5, "battery cycle phenomenology")
def test_markovian_discharge(m_table):
    assert np.all(np.diff(m_table["w"]) < 0)
    assert np.all(np.diff(m_table["tau_qsl_fisher"]) >= 0)


# 6 -------------------------------------------------------------------------


@criterion(6, "bound validity")
@pytest.mark.parametrize("gamma0", [10.0, 0.1])
@pytest.mark.parametrize("mode", [RelPurityMode.EQ6_COHERENCE, RelPurityMode.EQ4_GENERAL])
def test_bounds_below_tau(gamma0, mode):
    grid = build_trajectory(ModelParams(gamma0=gamma0), 3.0, 3000)
    s = qsl_sweep(grid, mode=mode)
    tau = s.tau[1:]
    assert np.all(s.tau_qsl_relpurity[1:] <= tau)
    assert np.all(s.tau_csl[1:] <= tau)


# 7 -------------------------------------------------------------------------


@criterion(7, "Wigner-Yanase bound at least the Fisher bound")
def test_wy_tighter(nm_params):
    grid = build_trajectory(nm_params, 3.0, 3000)
    s = qsl_sweep(grid, variant=BuresVariant.STANDARD)
    assert np.all(s.tau_qsl_wy >= s.tau_qsl_fisher)
    printed = qsl_sweep(grid, variant=BuresVariant.AS_PRINTED)
    holds = bool(np.all(printed.tau_qsl_wy >= printed.tau_qsl_fisher))
    print(f"as_printed variant: WY >= Fisher everywhere: {holds}")


# 8 -------------------------------------------------------------------------


def _window(table, lo=0.2):
    sel = table["t"] >= lo
    return {k: v[sel] for k, v in table.items()}


@criterion(8, "extrema alignment")
def test_csl_extrema_match_coherent_ergotropy(nm_table):
    tab = _window(nm_table)
    h = 3.0 / 3000
    ref = extrema_locator(tab["t"], tab["tau_csl"], 0.05 * np.ptp(tab["tau_csl"]))
    pairs = pair_extrema(ref, extrema_locator(tab["t"], tab["w_c"]), True, h)
    assert ref, "tau_csl has no prominent extrema"
    misses = [p for p in pairs if not p.matched]
    assert not misses, "\n".join(
        f"{p.kind} of tau_csl at {p.t:.4f}: nearest {p.partner_kind} of W_c at {p.partner_t:.4f}"
        for p in misses)


@criterion(8, "extrema alignment")
def test_relpurity_extrema_oppose_power(nm_table):
    tab = _window(nm_table)
    h = 3.0 / 3000
    ref = extrema_locator(tab["t"], tab["tau_qsl_relpurity"])
    pairs = pair_extrema(ref, extrema_locator(tab["t"], tab["p_inst"]), False, 2 * h)
    assert ref, "tau'_QSL has no extrema"
    misses = [p for p in pairs if not p.matched]
    assert not misses, "\n".join(
        f"{p.kind} of tau' at {p.t:.4f}: nearest {p.partner_kind} of p_inst at {p.partner_t:.4f}"
        for p in misses)


# 9 -------------------------------------------------------------------------


@criterion(9, "numerical hygiene")
@pytest.mark.parametrize("gamma0", [10.0, 0.1])
def test_quadrature_doubling(gamma0):
    params = ModelParams(gamma0=gamma0)
    grid = build_trajectory(params, 3.0, 300)
    coarse = qsl_sweep(grid, QuadratureSpec(3000))
    fine = qsl_sweep(grid, QuadratureSpec(6000))
    tau = coarse.tau
    smooth = tau >= 0.05
    zeros = g_zeros(params, 3.0)
    for name in ("tau_qsl_fisher", "tau_qsl_wy", "tau_qsl_relpurity", "tau_csl"):
        sel = smooth.copy()
        if name == "tau_qsl_relpurity" and zeros:
            # the relative-purity integrand is not integrable across a zero of G
            sel &= tau < zeros[0] - 0.05
        a, b = getattr(coarse, name)[sel], getattr(fine, name)[sel]
        assert np.max(np.abs(a / b - 1.0)) <= 1e-6, name


@criterion(9, "numerical hygiene")
def test_power_second_order(nm_params):
    def max_error(n):
        grid = build_trajectory(nm_params, 3.0, n)
        w = np.array([thermo.ergotropy(r, H1) for r in grid.rho])
        p = thermo.power_series(w, grid.times).p_inst
        exact = thermo.ergotropy_rate(grid.rho, grid.lrho, 1.0)
        sel = (grid.times >= 0.2) & (grid.times <= 0.9)
        return np.max(np.abs(p[sel] - exact[sel]))

    ratio = max_error(600) / max_error(1200)
    assert abs(ratio - 4.0) <= 0.5


# 10 ------------------------------------------------------------------------


@criterion(10, "determinism")
def test_byte_identical_csv(tmp_path, monkeypatch):
    cfg = tmp_path / "run.json"
    cfg.write_text('{"samples": 600, "quad_n": 1200}')
    outs = []
    for i, threads in enumerate(("1", "4", "4")):
        monkeypatch.setenv("QSLBATTERY_THREADS", threads)
        out = tmp_path / f"run{i}.csv"
        assert cli.main(["sweep", "--config", str(cfg), "--out", str(out)]) == 0
        outs.append(out.read_bytes())
    assert outs[0] == outs[1] == outs[2]
