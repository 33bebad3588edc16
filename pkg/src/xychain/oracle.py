"""Exact dense-matrix oracle for small chains.

Everything here works in the full 2^N dimensional spin space and knows
nothing about the closed-form solution: the Hamiltonian is assembled from
Pauli operators, evolution uses its eigendecomposition, and reduced
matrices come from partial traces or operator expectation values.  It
exists to cross-validate the analytic route and is capped at 12 sites.

Basis conventions
-----------------
Product basis index = sum_i b_i 2^(N-i): site 1 is the most significant
bit.  Bit value 1 means the spin points up (Iz eigenvalue +1/2), which is
also the occupied state of the attached fermion mode, so the two-node
reductions land directly in the |00>,|01>,|10>,|11> filling basis used by
the closed forms.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .chain import ChainSpec, SpectralData

MAX_ORACLE_SITES = 12

# single-site operators in the (down, up) = (0, 1) basis
_LOWER = np.array([[0.0, 1.0], [0.0, 0.0]])
_IZ = np.diag([-0.5, 0.5])
_ID2 = np.eye(2)


def _check_size(n_sites: int) -> None:
    if n_sites > MAX_ORACLE_SITES:
        raise ValueError(
            f"oracle is dense; {n_sites} sites exceeds the cap of {MAX_ORACLE_SITES}")


def site_operator(n_sites: int, i: int, op: np.ndarray) -> np.ndarray:
    """Embed a single-site operator at site i (1-based) into the chain."""
    _check_size(n_sites)
    if not 1 <= i <= n_sites:
        raise ValueError(f"site {i} outside 1..{n_sites}")
    out = np.eye(1)
    for p in range(1, n_sites + 1):
        out = np.kron(out, op if p == i else _ID2)
    return out


def build_hamiltonian(spec: ChainSpec) -> np.ndarray:
    """Dense H = w0 sum_i Iz_i + D sum_i (Ix_i Ix_{i+1} + Iy_i Iy_{i+1}).

    The XY coupling is assembled as (D/2)(I+_i I-_{i+1} + h.c.), which is
    the same operator without leaving the real field.
    """
    N = spec.n_sites
    _check_size(N)
    H = np.zeros((2 ** N, 2 ** N))
    for i in range(1, N + 1):
        H += spec.larmor * site_operator(N, i, _IZ)
    raise_op = _LOWER.T
    for i in range(1, N):
        hop = site_operator(N, i, raise_op) @ site_operator(N, i + 1, _LOWER)
        H += 0.5 * spec.coupling * (hop + hop.T)
    return H


def initial_state(spec: ChainSpec) -> np.ndarray:
    """rho(0) = (1 + 2 tanh(beta/2) Iz_j) / 2^N: one thermally polarized node."""
    N = spec.n_sites
    _check_size(N)
    tau = spec.polarization
    return (np.eye(2 ** N) + 2.0 * tau * site_operator(N, spec.polarized_node, _IZ)) / 2 ** N


@dataclass(frozen=True)
class OracleState:
    """Prepared simulation: Hamiltonian eigendecomposition plus rho(0)."""

    spec: ChainSpec
    hamiltonian: np.ndarray
    energies: np.ndarray
    vectors: np.ndarray
    rho0: np.ndarray


def prepare_oracle(spec: ChainSpec) -> OracleState:
    """Diagonalize the dense Hamiltonian once for repeated evolution."""
    H = build_hamiltonian(spec)
    energies, vectors = np.linalg.eigh(H)
    return OracleState(spec=spec, hamiltonian=H, energies=energies,
                       vectors=vectors, rho0=initial_state(spec))


def evolve(state: OracleState, t: float) -> np.ndarray:
    """rho(t) = U rho(0) U^dag with U = exp(-i H t) from the eigenbasis."""
    phases = np.exp(-1j * state.energies * t)
    U = (state.vectors * phases) @ state.vectors.conj().T
    return U @ state.rho0 @ U.conj().T


def partial_trace_pair(rho: np.ndarray, n: int, m: int) -> np.ndarray:
    """Trace out every site except n < m; returns the 4x4 spin reduction.

    Output basis is |b_n b_m> with bit 1 = spin up, matching the filling
    basis of the closed-form matrices.
    """
    dim = rho.shape[0]
    n_sites = dim.bit_length() - 1
    if 2 ** n_sites != dim:
        raise ValueError(f"matrix dimension {dim} is not a power of 2")
    if not 1 <= n < m <= n_sites:
        raise ValueError(f"pair ({n}, {m}) must satisfy 1 <= n < m <= {n_sites}")
    tensor = rho.reshape((2,) * (2 * n_sites))
    letters = "abcdefghijklmnopqrstuvwxyz"
    row = list(letters[:n_sites])
    col = list(letters[:n_sites].upper())
    for p in range(n_sites):
        if p not in (n - 1, m - 1):
            col[p] = row[p]
    keep = "".join(row[p] for p in (n - 1, m - 1)) + "".join(col[p] for p in (n - 1, m - 1))
    reduced = np.einsum("".join(row) + "".join(col) + "->" + keep, tensor)
    return reduced.reshape(4, 4)


def jw_c_operator(n_sites: int, l: int) -> np.ndarray:
    """Lattice fermion annihilator c_l = (-2)^(l-1) Iz_1 ... Iz_{l-1} I-_l."""
    _check_size(n_sites)
    if not 1 <= l <= n_sites:
        raise ValueError(f"site {l} outside 1..{n_sites}")
    out = np.eye(2 ** n_sites)
    for p in range(1, l):
        out = out @ (-2.0 * site_operator(n_sites, p, _IZ))
    return out @ site_operator(n_sites, l, _LOWER)


def beta_mode_operator(sd: SpectralData, k: int) -> np.ndarray:
    """Collective mode annihilator beta_k = sum_j g_k(j) c_j."""
    N = sd.spec.n_sites
    if not 1 <= k <= N:
        raise ValueError(f"mode {k} outside 1..{N}")
    out = np.zeros((2 ** N, 2 ** N))
    for j in range(1, N + 1):
        out += sd.amplitude(k, j) * jw_c_operator(N, j)
    return out


def _expect(rho: np.ndarray, op: np.ndarray) -> complex:
    # Tr(rho @ op) without forming the product
    return complex(np.sum(rho * op.T))


def assert_fermionic(op: np.ndarray, tol: float = 1e-10) -> None:
    """Check b^2 = 0 and {b, b^dag} = 1; raises ValueError otherwise."""
    dim = op.shape[0]
    if np.abs(op @ op).max() > tol:
        raise ValueError("operator does not square to zero")
    anti = op @ op.conj().T + op.conj().T @ op
    if np.abs(anti - np.eye(dim)).max() > tol:
        raise ValueError("operator fails {b, b^dag} = 1")


def mode_pair_reduced(rho: np.ndarray, b_n: np.ndarray, b_m: np.ndarray,
                      check: bool = True) -> np.ndarray:
    """Two-mode reduced matrix from occupation and hopping expectations.

    The chain state is identity plus one-body, so the projector
    expectations <(1-N_n)(1-N_m)> etc. and the single coherence
    <b_m^dag b_n> determine the reduced matrix completely.  ``check``
    verifies the canonical anticommutation relations of the inputs first
    (skip it when the caller has already validated the operators).
    """
    if check:
        assert_fermionic(b_n)
        assert_fermionic(b_m)
        if np.abs(b_n @ b_m + b_m @ b_n).max() > 1e-10:
            raise ValueError("modes do not anticommute")
        if np.abs(b_n @ b_m.conj().T + b_m.conj().T @ b_n).max() > 1e-10:
            raise ValueError("modes are not independent: {b_n, b_m^dag} != 0")
    num_n = b_n.conj().T @ b_n
    num_m = b_m.conj().T @ b_m
    occ_n = _expect(rho, num_n).real
    occ_m = _expect(rho, num_m).real
    occ_nm = _expect(rho, num_n @ num_m).real
    hop = _expect(rho, b_m.conj().T @ b_n)
    out = np.zeros((4, 4), dtype=complex)
    out[0, 0] = 1.0 - occ_n - occ_m + occ_nm
    out[1, 1] = occ_m - occ_nm
    out[2, 2] = occ_n - occ_nm
    out[3, 3] = occ_nm
    out[2, 1] = hop
    out[1, 2] = np.conj(hop)
    return out


def site_z_expectation(rho: np.ndarray, p: int) -> float:
    """<Iz_p>: +1/2 weight for basis states with bit p set, -1/2 otherwise."""
    dim = rho.shape[0]
    n_sites = dim.bit_length() - 1
    if not 1 <= p <= n_sites:
        raise ValueError(f"site {p} outside 1..{n_sites}")
    bits = (np.arange(dim) >> (n_sites - p)) & 1
    return float(np.real(np.sum(np.diag(rho) * (bits - 0.5))))
