"""Spectral solution of the open spin-1/2 XY chain.

H = w0 * sum_i Iz_i + D * sum_i (Ix_i Ix_{i+1} + Iy_i Iy_{i+1})

maps onto free fermions with energies eps_k = D cos k + w0 on wavenumbers
k = pi*n/(N+1), n = 1..N, and real mode amplitudes
g_k(j) = sqrt(2/(N+1)) sin(k j).  Sites and modes are indexed from 1.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class ChainSpec:
    """Physical parameters of one chain configuration.

    inverse_temperature is the beta of the initial thermal polarization of
    a single node; math.inf selects full polarization tanh(beta/2) = 1.
    """

    n_sites: int
    polarized_node: int
    inverse_temperature: float
    coupling: float = 1.0
    larmor: float = 0.0

    def __post_init__(self):
        if self.n_sites < 2:
            raise ValueError(f"need at least 2 sites, got {self.n_sites}")
        if not 1 <= self.polarized_node <= self.n_sites:
            raise ValueError(
                f"polarized node {self.polarized_node} outside 1..{self.n_sites}")
        if not (self.inverse_temperature >= 0):
            raise ValueError(f"beta must be >= 0, got {self.inverse_temperature}")
        if not (self.coupling > 0):
            raise ValueError(f"coupling must be positive, got {self.coupling}")
        if self.larmor < 0:
            raise ValueError(f"larmor frequency must be >= 0, got {self.larmor}")

    @property
    def polarization(self) -> float:
        """tanh(beta/2); exactly 1.0 for beta = +inf."""
        if math.isinf(self.inverse_temperature):
            return 1.0
        return math.tanh(self.inverse_temperature / 2.0)


@dataclass(frozen=True)
class SpectralData:
    """Diagonalized chain: wavenumbers, mode energies and amplitudes.

    modes[n-1, j-1] = g_n(j); rows are modes, columns are sites.  The rows
    form an orthonormal basis (the matrix is symmetric and orthogonal).
    """

    spec: ChainSpec
    wavenumbers: np.ndarray
    energies: np.ndarray
    modes: np.ndarray

    def amplitude(self, n: int, j: int) -> float:
        """g_n(j) with 1-based mode n and site j."""
        return float(self.modes[n - 1, j - 1])


def build_spectral(spec: ChainSpec) -> SpectralData:
    """Solve the chain: k_n = pi*n/(N+1), eps_n = D cos k_n + w0."""
    N = spec.n_sites
    n = np.arange(1, N + 1)
    k = np.pi * n / (N + 1)
    eps = spec.coupling * np.cos(k) + spec.larmor
    sites = np.arange(1, N + 1)
    g = np.sqrt(2.0 / (N + 1)) * np.sin(np.outer(k, sites))
    for arr in (k, eps, g):
        arr.flags.writeable = False
    return SpectralData(spec=spec, wavenumbers=k, energies=eps, modes=g)


def transition_amplitude(sd: SpectralData, n: int, j: int, t: float) -> complex:
    """U_nj(t) = sum_k exp(-i eps_k t) g_k(j) g_k(n).

    Amplitude for the initial excitation at site j to be found at site n
    after time t.  U(0) is the identity and |U_nj(t)| <= 1.
    """
    _check_site(sd, n)
    _check_site(sd, j)
    phases = np.exp(-1j * sd.energies * t)
    return complex(np.sum(phases * sd.modes[:, j - 1] * sd.modes[:, n - 1]))


def transition_matrix(sd: SpectralData, j: int, times: np.ndarray) -> np.ndarray:
    """U_nj(t) for all sites n on a time grid; shape (len(times), N)."""
    _check_site(sd, j)
    times = np.atleast_1d(np.asarray(times, dtype=float))
    phases = np.exp(-1j * np.outer(times, sd.energies))
    return (phases * sd.modes[:, j - 1]) @ sd.modes


def magnetization_ratio(sd: SpectralData, p: int, j: int, t: float) -> float:
    """<Iz_p>(t) / <Iz_j>(0) = (4/(N+1)^2) |sum_k exp(-i eps_k t) sin(k j) sin(k p)|^2.

    Independent of the initial polarization; equals |U_pj(t)|^2 and sums
    to 1 over p at any t.
    """
    _check_site(sd, p)
    _check_site(sd, j)
    N = sd.spec.n_sites
    k = sd.wavenumbers
    amp = np.sum(np.exp(-1j * sd.energies * t) * np.sin(k * j) * np.sin(k * p))
    return float(4.0 / (N + 1) ** 2 * np.abs(amp) ** 2)


def _check_site(sd: SpectralData, i: int) -> None:
    if not 1 <= i <= sd.spec.n_sites:
        raise ValueError(f"site index {i} outside 1..{sd.spec.n_sites}")
