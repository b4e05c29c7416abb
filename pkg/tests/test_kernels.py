"""Both kernel backends against the scalar routines and each other."""

import numpy as np
import pytest

from qslbattery import _pykernels, kernels, qmat, thermo
from qslbattery.dynamics import g_function

from oracles import random_state

BACKENDS = [_pykernels]
if kernels.compiled_backend is not None:
    BACKENDS.append(kernels.compiled_backend)


@pytest.fixture(params=BACKENDS, ids=lambda m: m.NAME)
def backend(request):
    return request.param


def _batch(states):
    s = np.array(states)
    return s[:, 0, 0].real, s[:, 1, 1].real, s[:, 1, 0].real, s[:, 1, 0].imag


@pytest.fixture
def states(rng):
    out = [random_state(rng) for _ in range(300)]
    psi = np.array([np.sqrt(3) / 2, 0.5])
    out += [np.outer(psi, psi).astype(complex), np.diag([1.0, 0.0]).astype(complex),
            0.5 * np.eye(2, dtype=complex)]
    return out


def test_selected_backend_is_compiled_when_available():
    expected = "cython" if kernels.compiled_backend is not None else "python"
    assert kernels.BACKEND == expected


def test_decoherence_matches_scalar(backend):
    from qslbattery.dynamics import ModelParams
    t = np.linspace(0.0, 20.0, 2001)
    for lam, gamma0 in ((0.5, 10.0), (0.5, 0.1), (0.5, 0.25), (100.0, 0.1)):
        p = ModelParams(lam=lam, gamma0=gamma0)
        g, gdot = backend.decoherence(t, lam, gamma0)
        ref = np.array([g_function(x, p)[1:] for x in t])
        np.testing.assert_allclose(g, ref[:, 0], rtol=1e-12, atol=1e-14)
        np.testing.assert_allclose(gdot, ref[:, 1], rtol=1e-12, atol=1e-13)


def test_eigvals_and_norms(backend, states):
    hi, lo = backend.hermitian_eigvals(*_batch(states))
    for i, rho in enumerate(states):
        ev = qmat.eig_hermitian(rho).values
        assert hi[i] == pytest.approx(ev[0], abs=1e-14)
        assert lo[i] == pytest.approx(ev[1], abs=1e-14)
    traceless = [r - 0.5 * np.eye(2) for r in states]
    op, tr, hs = backend.hermitian_norms(*_batch(traceless))
    for i, m in enumerate(traceless):
        np.testing.assert_allclose((op[i], tr[i], hs[i]), qmat.schatten_norms(m), atol=1e-14)


def test_fidelity_affinity(backend, states):
    ref = states[-3]
    packed = (ref[0, 0].real, ref[1, 1].real, ref[1, 0].real, ref[1, 0].imag)
    f = backend.fidelity_to(packed, *_batch(states))
    a = backend.affinity_to(packed, *_batch(states))
    for i, rho in enumerate(states):
        assert f[i] == pytest.approx(qmat.fidelity(ref, rho), abs=1e-13)
        assert a[i] == pytest.approx(qmat.affinity(ref, rho), abs=1e-13)


def test_entropy_logs(backend, states):
    s, lsq = backend.entropy_logs(*_batch(states), 1e-12)
    for i, rho in enumerate(states):
        assert s[i] == pytest.approx(qmat.von_neumann_entropy(rho), abs=1e-13)
        log = qmat.matrix_function(rho, "log", floor=1e-12)
        assert lsq[i] == pytest.approx(np.sum(np.abs(log) ** 2), rel=1e-12)


def test_ergotropy_split(backend, states):
    h = thermo.qubit_hamiltonian(1.3)
    w, w_i, w_c = backend.ergotropy_split(*_batch(states), 1.3)
    for i, rho in enumerate(states):
        b = thermo.ergotropy_breakdown(rho, h, 1.0)
        np.testing.assert_allclose((w[i], w_i[i], w_c[i]), (b.w, b.w_i, b.w_c), atol=1e-13)


def test_cumulative_rules(backend):
    t = np.linspace(0.0, 2.0, 201)
    h = t[1] - t[0]
    cubic = t**3 - t
    exact = t**4 / 4 - t**2 / 2
    # composite Simpson is exact for cubics at even indices
    np.testing.assert_allclose(backend.cumulative_simpson(cubic, h)[::2], exact[::2], atol=1e-14)
    quad = t**2 - 2 * t
    np.testing.assert_allclose(backend.cumulative_simpson(quad, h), t**3 / 3 - t**2, atol=1e-14)
    lin = 3 * t + 1
    np.testing.assert_allclose(backend.cumulative_trapezoid(lin, h), 1.5 * t**2 + t, atol=1e-13)


def test_backends_agree(states):
    if len(BACKENDS) < 2:
        pytest.skip("compiled kernels not built")
    py, cy = BACKENDS
    args = _batch(states)
    for name in ("hermitian_eigvals", "hermitian_norms"):
        for x, y in zip(getattr(py, name)(*args), getattr(cy, name)(*args)):
            np.testing.assert_allclose(x, y, rtol=1e-13, atol=1e-15)
    y = np.sin(np.linspace(0, 3, 101))
    np.testing.assert_allclose(py.cumulative_simpson(y, 0.03), cy.cumulative_simpson(y, 0.03),
                               rtol=1e-14, atol=1e-16)
