import math

import numpy as np
import pytest

from qslbattery import qmat, thermo
from qslbattery.dynamics import build_trajectory
from qslbattery.errors import GridDegenerate

from oracles import T_STAR, random_state

H1 = thermo.qubit_hamiltonian(1.0)
PSI0 = np.array([math.sqrt(3) / 2, 0.5])
RHO0 = np.outer(PSI0, PSI0).astype(complex)
GROUND = np.diag([1.0, 0.0]).astype(complex)
MIXED = 0.5 * np.eye(2, dtype=complex)


def test_gibbs_examples():
    np.testing.assert_allclose(np.diag(thermo.gibbs_state(H1, 1.0)).real,
                               [0.7310585786300049, 0.2689414213699951], atol=1e-15)
    np.testing.assert_allclose(thermo.gibbs_state(np.zeros((2, 2)), 1.0), MIXED)
    hot = thermo.gibbs_state(H1, 1e6)
    assert np.max(np.abs(hot - MIXED)) <= 1e-6
    assert thermo.partition_function(H1, 1.0) == pytest.approx(1 + math.exp(-1))


def test_passive_state_examples():
    np.testing.assert_allclose(thermo.passive_state(RHO0, H1), GROUND, atol=1e-15)
    np.testing.assert_allclose(thermo.passive_state(MIXED, H1), MIXED)
    np.testing.assert_allclose(thermo.passive_state(np.diag([0.3, 0.7]), H1), np.diag([0.7, 0.3]))


def test_ergotropy_examples():
    assert thermo.ergotropy(GROUND, H1) == 0.0
    assert thermo.ergotropy(MIXED, H1) == 0.0
    assert thermo.ergotropy(RHO0, H1) == pytest.approx(0.25, abs=1e-15)
    r = np.array([[0.6, 0.2 - 0.1j], [0.2 + 0.1j, 0.4]])
    assert thermo.ergotropy(r, H1) == pytest.approx(0.14494897427831788, abs=1e-14)


def test_ergotropy_routes_agree(rng):
    for _ in range(1000):
        rho = random_state(rng)
        spectral, gap = thermo.ergotropy_routes(rho, H1)
        assert abs(spectral - gap) <= 1e-12


def test_coherence_invariant_state():
    np.testing.assert_allclose(thermo.coherence_invariant_state(RHO0), RHO0)
    np.testing.assert_allclose(thermo.coherence_invariant_state(np.diag([0.7, 0.3])), np.diag([0.7, 0.3]))
    rho = np.array([[0.3, 0.1], [0.1, 0.7]])
    np.testing.assert_allclose(thermo.coherence_invariant_state(rho), [[0.7, 0.1], [0.1, 0.3]])


def test_breakdown_examples():
    b = thermo.ergotropy_breakdown(RHO0, H1, 1.0)
    assert (b.w, b.w_i, b.w_c) == pytest.approx((0.25, 0.0, 0.25), abs=1e-15)
    assert b.w_c_eq18_minus == pytest.approx(0.25, abs=1e-12)
    d = thermo.ergotropy_breakdown(np.diag([0.2, 0.8]), H1, 1.0)
    assert d.w_c == 0.0 and d.w == pytest.approx(0.6)
    g = thermo.ergotropy_breakdown(GROUND, H1, 1.0)
    assert (g.w, g.w_i, g.w_c, g.w_c_eq18_minus) == (0.0, 0.0, 0.0, 0.0)


def test_closed_form_signs(rng):
    # minus sign: coherent ergotropy for every state; plus sign: total
    # ergotropy once the excited population is at least one half.
    for _ in range(1000):
        rho = random_state(rng)
        b = thermo.ergotropy_breakdown(rho, H1, 1.0)
        assert abs(b.w_c - b.w_c_eq18_minus) <= 1e-9
        if rho[1, 1].real >= 0.5:
            assert abs(b.w - b.w_c_eq18_plus) <= 1e-9


def test_plus_sign_is_not_coherent_ergotropy_above_half():
    rho = np.array([[0.3, 0.1], [0.1, 0.7]], dtype=complex)
    b = thermo.ergotropy_breakdown(rho, H1, 1.0)
    assert b.w_i > 0 and abs(b.w_c - b.w_c_eq18_plus) > 0.1


def test_entropic_identity_random_temperatures(rng):
    for _ in range(300):
        rho = random_state(rng, full_rank=True)
        omega0 = float(rng.uniform(0.3, 3.0))
        t = float(rng.uniform(0.2, 5.0))
        b = thermo.ergotropy_breakdown(rho, thermo.qubit_hamiltonian(omega0), t)
        assert b.w_c_eq16 == pytest.approx(b.w_c, abs=1e-8)


def test_ergotropy_vanishes_at_zero_of_g(nm_params):
    grid = build_trajectory(nm_params, 3.0, 3000)
    w = np.array([thermo.ergotropy(r, H1) for r in grid.rho])
    assert np.max(np.abs(np.diff(w))) < 5e-3
    from qslbattery.dynamics import propagate
    assert thermo.ergotropy(propagate(nm_params, T_STAR), H1) <= 1e-15


def test_ergotropy_rate_matches_finite_difference(nm_params):
    from qslbattery.dynamics import liouvillian_at, propagate
    h = 1e-6
    for t in (0.2, 0.7, 1.6, 2.5):
        fd = (thermo.ergotropy(propagate(nm_params, t + h), H1)
              - thermo.ergotropy(propagate(nm_params, t - h), H1)) / (2 * h)
        exact = thermo.ergotropy_rate(propagate(nm_params, t), liouvillian_at(nm_params, t), 1.0)
        assert exact == pytest.approx(fd, abs=1e-7)


def test_power_series_examples():
    t = np.linspace(0.0, 1.0, 11)
    const = thermo.power_series(np.full(11, 0.3), t)
    np.testing.assert_allclose(const.p_inst, 0.0, atol=1e-15)
    np.testing.assert_allclose(const.p_avg[1:], 0.0, atol=1e-15)
    assert math.isnan(const.p_avg[0])
    ramp = thermo.power_series(t.copy(), t)
    np.testing.assert_allclose(ramp.p_inst, 1.0, rtol=1e-12)
    np.testing.assert_allclose(ramp.p_avg[1:], 1.0, rtol=1e-12)
    shifted = thermo.power_series(t**2, t, t0=0.5)
    assert np.all(np.isnan(shifted.p_avg[:6]))
    assert shifted.p_avg[-1] == pytest.approx((1 - 0.25) / 0.5)


def test_power_series_errors():
    with pytest.raises(GridDegenerate):
        thermo.power_series([1.0, 2.0], [0.0, 1.0])
    with pytest.raises(ValueError):
        thermo.power_series(np.zeros(5), np.linspace(0, 1, 5), t0=0.3)


def test_hamiltonian_must_be_diagonal():
    with pytest.raises(ValueError):
        thermo.ergotropy_breakdown(RHO0, np.array([[0, 1], [1, 0]]), 1.0)


def test_relative_entropy_consistency(rng):
    rho = random_state(rng, True)
    d = qmat.relative_entropies(rho, thermo.gibbs_state(H1, 1.0))
    assert d.quantum >= d.classical - 1e-12
