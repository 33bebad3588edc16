import math

import numpy as np
import pytest

from xychain import (ChainSpec, build_spectral, magnetization_ratio,
                     transition_amplitude, transition_matrix)


def test_three_site_spectrum():
    sd = build_spectral(ChainSpec(n_sites=3, polarized_node=1,
                                  inverse_temperature=1.0))
    assert np.allclose(sd.wavenumbers, [np.pi / 4, np.pi / 2, 3 * np.pi / 4])
    assert np.allclose(sd.energies, [np.sqrt(0.5), 0.0, -np.sqrt(0.5)])
    assert sd.amplitude(1, 2) == pytest.approx(1 / np.sqrt(2))


def test_energies_shift_with_field_and_scale_with_coupling():
    sd = build_spectral(ChainSpec(n_sites=4, polarized_node=1,
                                  inverse_temperature=1.0, coupling=2.5,
                                  larmor=0.7))
    k = sd.wavenumbers
    assert np.allclose(sd.energies, 2.5 * np.cos(k) + 0.7)


def test_amplitude_matrix_symmetric_orthogonal():
    sd = build_spectral(ChainSpec(n_sites=7, polarized_node=3,
                                  inverse_temperature=2.0))
    g = sd.modes
    assert np.allclose(g, g.T, atol=1e-14)
    assert np.allclose(g @ g.T, np.eye(7), atol=1e-13)


def test_amplitude_reflection_alternates_sign():
    # g_n(N+1-j) = (-1)^(n+1) g_n(j)
    sd = build_spectral(ChainSpec(n_sites=8, polarized_node=1,
                                  inverse_temperature=1.0))
    for n in range(1, 9):
        for j in range(1, 9):
            assert sd.amplitude(n, 9 - j) == pytest.approx(
                (-1) ** (n + 1) * sd.amplitude(n, j), abs=1e-14)


def test_spectral_arrays_are_read_only():
    sd = build_spectral(ChainSpec(n_sites=4, polarized_node=1,
                                  inverse_temperature=1.0))
    with pytest.raises(ValueError):
        sd.modes[0, 0] = 0.0


@pytest.mark.parametrize("kwargs", [
    {"n_sites": 1, "polarized_node": 1, "inverse_temperature": 1.0},
    {"n_sites": 5, "polarized_node": 0, "inverse_temperature": 1.0},
    {"n_sites": 5, "polarized_node": 6, "inverse_temperature": 1.0},
    {"n_sites": 5, "polarized_node": 1, "inverse_temperature": -0.5},
    {"n_sites": 5, "polarized_node": 1, "inverse_temperature": math.nan},
    {"n_sites": 5, "polarized_node": 1, "inverse_temperature": 1.0,
     "coupling": 0.0},
    {"n_sites": 5, "polarized_node": 1, "inverse_temperature": 1.0,
     "larmor": -0.1},
])
def test_spec_rejects_bad_parameters(kwargs):
    with pytest.raises(ValueError):
        ChainSpec(**kwargs)


def test_polarization_limits():
    make = lambda b: ChainSpec(n_sites=5, polarized_node=1,
                               inverse_temperature=b)
    assert make(0.0).polarization == 0.0
    assert make(10.0).polarization == pytest.approx(math.tanh(5.0))
    assert make(math.inf).polarization == 1.0
    # tanh saturates in double precision well before beta = 40
    assert make(40.0).polarization == 1.0


def test_two_site_amplitude_closed_form():
    # N=2 reduces to a two-level Rabi problem: U_11 = e^{-i w0 t} cos(D t / 2)
    spec = ChainSpec(n_sites=2, polarized_node=1, inverse_temperature=1.0,
                     coupling=1.0, larmor=0.7)
    sd = build_spectral(spec)
    t = 1.3
    assert transition_amplitude(sd, 1, 1, t) == pytest.approx(
        np.exp(-0.7j * t) * np.cos(t / 2))
    assert transition_amplitude(sd, 2, 1, t) == pytest.approx(
        -1j * np.exp(-0.7j * t) * np.sin(t / 2))


def test_propagator_identity_and_unitarity(sd21):
    times = np.array([0.0, 0.31, 4.7, 55.0])
    u = transition_matrix(sd21, 1, times)
    assert u.shape == (4, 21)
    assert np.allclose(u[0], np.eye(21)[0], atol=1e-13)
    assert np.allclose(np.sum(np.abs(u) ** 2, axis=1), 1.0, atol=1e-13)


def test_transition_matrix_matches_scalar(sd21):
    times = np.array([0.9, 12.4])
    u = transition_matrix(sd21, 5, times)
    for i, t in enumerate(times):
        for n in (1, 5, 13):
            assert u[i, n - 1] == pytest.approx(
                transition_amplitude(sd21, n, 5, float(t)), abs=1e-14)


def test_magnetization_ratio_properties():
    specs = {b: ChainSpec(n_sites=9, polarized_node=3, inverse_temperature=b)
             for b in (0.5, 10.0)}
    sds = {b: build_spectral(s) for b, s in specs.items()}
    rng = np.random.default_rng(3)
    for t in rng.uniform(0.0, 60.0, size=6):
        ratios = [magnetization_ratio(sds[0.5], p, 3, t) for p in range(1, 10)]
        # polarization independent, normalized, equal to |U_pj|^2
        for p in range(1, 10):
            assert ratios[p - 1] == pytest.approx(
                magnetization_ratio(sds[10.0], p, 3, t), abs=1e-13)
            assert ratios[p - 1] == pytest.approx(
                abs(transition_amplitude(sds[0.5], p, 3, t)) ** 2, abs=1e-13)
        assert sum(ratios) == pytest.approx(1.0, abs=1e-12)


def test_site_bounds_checked(sd21):
    with pytest.raises(ValueError):
        transition_amplitude(sd21, 0, 1, 0.0)
    with pytest.raises(ValueError):
        transition_amplitude(sd21, 1, 22, 0.0)
    with pytest.raises(ValueError):
        transition_matrix(sd21, 25, np.array([0.0]))
    with pytest.raises(ValueError):
        magnetization_ratio(sd21, 22, 1, 0.0)
