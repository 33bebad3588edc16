import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from xychain import (ChainSpec, Representation, XStateCoefficients,
                     beta_coefficients, build_density_matrix, build_spectral,
                     c_coefficients, coefficients, spin_coefficients)


def _bell_like():
    return XStateCoefficients(
        representation=Representation.C, n=1, m=2, time=0.0,
        j00=0.0, jnn=0.25, jmm=0.25, jnm=0.25 + 0j)


def test_beta_populations_static_phase_rotates(sd5_full):
    c0 = beta_coefficients(sd5_full, 2, 4, 0.0)
    ct = beta_coefficients(sd5_full, 2, 4, 3.7)
    assert ct.jnn == c0.jnn and ct.jmm == c0.jmm
    gap = sd5_full.energies[1] - sd5_full.energies[3]
    assert ct.jnm == pytest.approx(c0.jnm * np.exp(-1j * gap * 3.7))


def test_spin_matches_c_for_adjacent_nodes(sd21):
    for t in (0.0, 2.2, 17.0):
        a = c_coefficients(sd21, 4, 5, t)
        b = spin_coefficients(sd21, 4, 5, t)
        assert (a.j00, a.jnn, a.jmm, a.jnm) == (b.j00, b.jnn, b.jmm, b.jnm)


def test_spin_remote_pairs_are_diagonal(sd21):
    c = spin_coefficients(sd21, 4, 9, 1.5)
    assert c.diagonal
    assert c.jnm == 0j
    c.validate()
    base = c_coefficients(sd21, 4, 9, 1.5)
    assert not base.diagonal
    assert (c.jnn, c.jmm) == (base.jnn, base.jmm)


def test_dispatcher_accepts_enum_and_string(sd21):
    by_enum = coefficients(sd21, Representation.BETA, 1, 2, 0.0)
    by_name = coefficients(sd21, "beta", 1, 2, 0.0)
    assert by_enum == by_name


def test_pair_bounds_checked(sd21):
    for n, m in [(0, 2), (2, 2), (3, 2), (1, 22)]:
        with pytest.raises(ValueError):
            c_coefficients(sd21, n, m, 0.0)


def test_middle_node_pair_fully_polarized():
    # N=3, excitation on the center: modes 1 and 3 each carry weight 1/2
    sd = build_spectral(ChainSpec(n_sites=3, polarized_node=2,
                                  inverse_temperature=math.inf))
    c = beta_coefficients(sd, 1, 3, 0.0)
    assert c.jnn == pytest.approx(0.25)
    assert c.jmm == pytest.approx(0.25)
    assert c.j00 == pytest.approx(0.0)
    assert c.jnm == pytest.approx(-0.25 + 0j)


@pytest.mark.parametrize("rep", list(Representation))
@pytest.mark.parametrize("beta", [0.0, 0.7, 10.0, math.inf])
def test_generated_coefficients_obey_the_laws(rep, beta):
    sd = build_spectral(ChainSpec(n_sites=7, polarized_node=3,
                                  inverse_temperature=beta))
    for n, m in [(1, 2), (2, 5), (3, 7), (6, 7)]:
        for t in (0.0, 0.9, 31.0):
            c = coefficients(sd, rep, n, m, t)
            c.validate(tol=1e-13)
            assert c.j00 == pytest.approx(0.25 - 0.5 * (c.jnn + c.jmm))


@settings(max_examples=60, deadline=None)
@given(n_sites=st.integers(2, 9),
       t=st.floats(0.0, 200.0),
       beta=st.floats(0.0, 60.0),
       seed=st.integers(0, 2 ** 31))
def test_coefficient_laws_hold_everywhere(n_sites, t, beta, seed):
    rng = np.random.default_rng(seed)
    j = int(rng.integers(1, n_sites + 1))
    n = int(rng.integers(1, n_sites))
    m = int(rng.integers(n + 1, n_sites + 1))
    sd = build_spectral(ChainSpec(n_sites=n_sites, polarized_node=j,
                                  inverse_temperature=beta))
    for rep in Representation:
        coefficients(sd, rep, n, m, t).validate(tol=1e-12)


def test_validate_rejects_broken_sets():
    good = _bell_like()
    bad = [
        {"jnn": -1e-6},
        {"jnn": 0.4, "jmm": 0.4},
        {"j00": 0.1},                       # breaks the trace identity
        {"jnm": 0.3 + 0j},                  # breaks |jnm|^2 = jnn*jmm
    ]
    for override in bad:
        fields = {**good.__dict__, **override}
        with pytest.raises(ValueError):
            XStateCoefficients(**fields).validate()
    remote = XStateCoefficients(
        representation=Representation.SPIN, n=1, m=5, time=0.0,
        j00=0.15, jnn=0.1, jmm=0.1, jnm=0.05 + 0j)
    with pytest.raises(ValueError):
        remote.validate()


def test_density_matrix_layout_and_spectrum(sd21):
    c = c_coefficients(sd21, 2, 6, 4.1)
    rho = build_density_matrix(c)
    assert rho[0, 0] == pytest.approx(c.j00)
    assert rho[1, 1] == pytest.approx(c.j00 + c.jmm)
    assert rho[2, 2] == pytest.approx(c.j00 + c.jnn)
    assert rho[3, 3] == pytest.approx(c.j00 + c.jnn + c.jmm)
    assert rho[2, 1] == c.jnm
    assert rho[1, 2] == np.conj(c.jnm)
    assert np.trace(rho) == pytest.approx(1.0)
    # maximal coherence pushes one eigenvalue to j00 + jnn + jmm
    s = c.jnn + c.jmm
    expected = np.sort([c.j00, c.j00, c.j00 + s, c.j00 + s])
    assert np.allclose(np.linalg.eigvalsh(rho), expected, atol=1e-13)


def test_density_matrix_clamps_roundoff_only():
    tiny = _bell_like()
    shifted = XStateCoefficients(
        representation=Representation.C, n=1, m=2, time=0.0,
        j00=0.25 + 5e-14, jnn=-1e-13, jmm=0.0, jnm=0j)
    rho = build_density_matrix(shifted)
    assert rho[2, 2] == pytest.approx(rho[0, 0])
    with pytest.raises(ValueError):
        build_density_matrix(XStateCoefficients(
            representation=Representation.C, n=1, m=2, time=0.0,
            j00=0.25, jnn=-1e-9, jmm=0.0, jnm=0j))
    with pytest.raises(ValueError):
        build_density_matrix(XStateCoefficients(
            representation=Representation.C, n=1, m=2, time=0.0,
            j00=-0.05, jnn=0.3, jmm=0.3, jnm=0.3 + 0j))
    assert build_density_matrix(tiny)[3, 3] == pytest.approx(0.5)
