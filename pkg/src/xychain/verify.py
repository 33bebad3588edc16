"""Cross-validation of the closed forms against the dense oracle.

Each check returns a CheckResult with a machine-readable name, a pass
flag and a one-line detail (worst deviation vs tolerance).  The oracle
route shares no code with the closed forms: Hamiltonians are dense kron
products, reductions are partial traces or operator expectations.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import oracle
from .chain import (ChainSpec, build_spectral, magnetization_ratio,
                    transition_matrix)
from .correlations import (classical_correlation_B, concurrence_closed_form,
                           discord, discord_one_sided, measurement_objective,
                           middle_node_q, mutual_information,
                           wootters_concurrence)
from .xstate import (Representation, XStateCoefficients, beta_coefficients,
                     build_density_matrix, coefficients)

_BETAS = (0.5, 10.0, math.inf)
_TIMES = (0.0, 1.7, 10.0)


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


def _result(name: str, worst: float, tol: float, extra: str = "") -> CheckResult:
    detail = f"max deviation {worst:.3e} (tol {tol:.0e})"
    if extra:
        detail += "; " + extra
    return CheckResult(name, worst <= tol, detail)


def _random_coefficients(rng: np.random.Generator) -> XStateCoefficients:
    """A valid maximal-coherence coefficient set with random populations."""
    s = rng.uniform(0.0, 0.5)
    frac = rng.uniform(0.0, 1.0)
    jnn, jmm = s * frac, s * (1.0 - frac)
    phase = np.exp(1j * rng.uniform(0.0, 2.0 * np.pi))
    return XStateCoefficients(
        representation=Representation.C, n=1, m=2, time=0.0,
        j00=0.25 - 0.5 * s, jnn=jnn, jmm=jmm,
        jnm=complex(np.sqrt(jnn * jmm) * phase))


def check_spectral(max_sites: int) -> CheckResult:
    """Mode orthonormality and the reflection identity of the amplitudes."""
    worst = 0.0
    for N in range(2, max_sites + 1):
        sd = build_spectral(ChainSpec(n_sites=N, polarized_node=1,
                                      inverse_temperature=1.0))
        g = sd.modes
        worst = max(worst, np.abs(g @ g.T - np.eye(N)).max())
        for n in range(1, N + 1):
            refl = (-1.0) ** (n + 1) * g[n - 1, ::-1]
            worst = max(worst, np.abs(g[n - 1] - refl).max())
    return _result("spectral_orthonormality", worst, 1e-12)


def check_propagator(max_sites: int) -> CheckResult:
    """U(0) = identity and probability conservation sum_n |U_nj|^2 = 1."""
    worst = 0.0
    rng = np.random.default_rng(7)
    for N in range(2, max_sites + 1):
        sd = build_spectral(ChainSpec(n_sites=N, polarized_node=1,
                                      inverse_temperature=1.0, larmor=0.3))
        times = np.concatenate([[0.0], rng.uniform(0.0, 50.0, size=5)])
        for j in range(1, N + 1):
            u = transition_matrix(sd, j, times)
            worst = max(worst, np.abs(np.sum(np.abs(u) ** 2, axis=1) - 1.0).max())
            delta = np.zeros(N)
            delta[j - 1] = 1.0
            worst = max(worst, np.abs(u[0] - delta).max())
    return _result("propagator_unitarity", worst, 1e-12)


def check_free_fermion_spectrum(max_sites: int) -> CheckResult:
    """eigh(H) must equal the occupation sums sum_k eps_k n_k - N w0 / 2."""
    worst = 0.0
    for N in range(2, max_sites + 1):
        spec = ChainSpec(n_sites=N, polarized_node=1, inverse_temperature=1.0,
                         larmor=0.45)
        sd = build_spectral(spec)
        evals = np.linalg.eigvalsh(oracle.build_hamiltonian(spec))
        occ = np.zeros(2 ** N)
        for state in range(2 ** N):
            bits = (state >> np.arange(N - 1, -1, -1)) & 1
            occ[state] = np.dot(bits, sd.energies) - N * spec.larmor / 2.0
        worst = max(worst, np.abs(np.sort(occ) - evals).max())
    return _result("free_fermion_spectrum", worst, 1e-10)


def check_jw_algebra(max_sites: int) -> CheckResult:
    """Canonical anticommutation and Hamiltonian reconstruction from modes."""
    worst = 0.0
    for N in range(2, min(max_sites, 6) + 1):
        spec = ChainSpec(n_sites=N, polarized_node=1, inverse_temperature=1.0,
                         larmor=0.25)
        sd = build_spectral(spec)
        cs = [oracle.jw_c_operator(N, l) for l in range(1, N + 1)]
        eye = np.eye(2 ** N)
        for a in range(N):
            for b in range(N):
                anti = cs[a] @ cs[b].T + cs[b].T @ cs[a]
                target = eye if a == b else 0.0
                worst = max(worst, np.abs(anti - target).max())
                worst = max(worst, np.abs(cs[a] @ cs[b] + cs[b] @ cs[a]).max())
        modes = [oracle.beta_mode_operator(sd, k) for k in range(1, N + 1)]
        h_rec = sum(sd.energies[k] * modes[k].T @ modes[k] for k in range(N))
        h_rec -= N * spec.larmor / 2.0 * eye
        worst = max(worst, np.abs(h_rec - oracle.build_hamiltonian(spec)).max())
    return _result("jw_algebra", worst, 1e-10)


def check_oracle_conservation(max_sites: int) -> CheckResult:
    """Hermiticity, conserved total Iz, conserved spectrum and energy."""
    worst = 0.0
    for N in range(2, max_sites + 1):
        spec = ChainSpec(n_sites=N, polarized_node=min(2, N),
                         inverse_temperature=2.0, larmor=0.6)
        H = oracle.build_hamiltonian(spec)
        worst = max(worst, np.abs(H - H.T).max())
        z_total = sum(oracle.site_operator(N, i, np.diag([-0.5, 0.5]))
                      for i in range(1, N + 1))
        worst = max(worst, np.abs(H @ z_total - z_total @ H).max())
        state = oracle.prepare_oracle(spec)
        s0 = np.sort(np.linalg.eigvalsh(state.rho0))
        for t in (1.3, 17.0):
            rho_t = oracle.evolve(state, t)
            worst = max(worst, abs(np.trace(rho_t).real - 1.0))
            worst = max(worst, np.abs(np.sort(np.linalg.eigvalsh(rho_t)) - s0).max())
            e0 = np.trace(state.rho0 @ H).real
            worst = max(worst, abs(np.trace(rho_t @ H).real - e0))
            z0 = np.trace(state.rho0 @ z_total).real
            worst = max(worst, abs(np.trace(rho_t @ z_total).real - z0))
    return _result("oracle_conservation", worst, 1e-10)


def check_reduced_matrices(max_sites: int) -> CheckResult:
    """Closed-form two-node matrices vs the dense oracle, all representations."""
    worst = 0.0
    for N in range(2, max_sites + 1):
        cs = [oracle.jw_c_operator(N, l) for l in range(1, N + 1)]
        for beta in _BETAS:
            for j in range(1, N + 1):
                spec = ChainSpec(n_sites=N, polarized_node=j,
                                 inverse_temperature=beta)
                sd = build_spectral(spec)
                modes = [oracle.beta_mode_operator(sd, k) for k in range(1, N + 1)]
                state = oracle.prepare_oracle(spec)
                for t in _TIMES:
                    rho_t = oracle.evolve(state, t)
                    for n in range(1, N + 1):
                        for m in range(n + 1, N + 1):
                            got = oracle.partial_trace_pair(rho_t, n, m)
                            want = build_density_matrix(
                                coefficients(sd, Representation.SPIN, n, m, t))
                            worst = max(worst, np.abs(got - want).max())
                            got = oracle.mode_pair_reduced(
                                rho_t, cs[n - 1], cs[m - 1], check=False)
                            want = build_density_matrix(
                                coefficients(sd, Representation.C, n, m, t))
                            worst = max(worst, np.abs(got - want).max())
                            got = oracle.mode_pair_reduced(
                                rho_t, modes[n - 1], modes[m - 1], check=False)
                            want = build_density_matrix(
                                coefficients(sd, Representation.BETA, n, m, t))
                            worst = max(worst, np.abs(got - want).max())
    return _result("oracle_reduced_matrices", worst, 1e-10,
                   extra=f"N up to {max_sites}, all pairs and nodes")


def check_magnetization(max_sites: int) -> CheckResult:
    """Closed-form transfer ratio vs oracle; beta independence; sum rule."""
    worst = 0.0
    rng = np.random.default_rng(11)
    N = min(max_sites, 6)
    j = min(2, N)
    sds = {}
    for beta in (0.5, 10.0):
        spec = ChainSpec(n_sites=N, polarized_node=j, inverse_temperature=beta)
        sds[beta] = build_spectral(spec)
        state = oracle.prepare_oracle(spec)
        denom = oracle.site_z_expectation(state.rho0, j)
        for t in (0.0, 1.7, 10.0):
            rho_t = oracle.evolve(state, t)
            for p in range(1, N + 1):
                got = oracle.site_z_expectation(rho_t, p) / denom
                want = magnetization_ratio(sds[beta], p, j, t)
                worst = max(worst, abs(got - want))
    for t in rng.uniform(0.0, 40.0, size=10):
        r_lo = [magnetization_ratio(sds[0.5], p, j, t) for p in range(1, N + 1)]
        r_hi = [magnetization_ratio(sds[10.0], p, j, t) for p in range(1, N + 1)]
        worst = max(worst, float(np.abs(np.array(r_lo) - r_hi).max()))
        worst = max(worst, abs(sum(r_lo) - 1.0))
    return _result("magnetization_transfer", worst, 1e-10)


def check_concurrence_oracle(samples: int = 1000) -> CheckResult:
    """Closed-form concurrence vs the spin-flip eigenvalue procedure."""
    rng = np.random.default_rng(2024)
    worst = 0.0
    for _ in range(samples):
        c = _random_coefficients(rng)
        got = concurrence_closed_form(c)
        want = wootters_concurrence(build_density_matrix(c))
        worst = max(worst, abs(got - want))
    return _result("concurrence_oracle", worst, 1e-10,
                   extra=f"{samples} random coefficient sets")


def check_discord_assembly(samples: int = 400) -> CheckResult:
    """Q_B == I - C_B and the eta-grid never beats the eta=0 closed form."""
    rng = np.random.default_rng(77)
    worst_id = 0.0
    worst_grid = -np.inf
    etas = np.linspace(0.0, 1.0, 101)
    for _ in range(samples):
        c = _random_coefficients(rng)
        q_b = discord_one_sided(c, "B")
        assembled = mutual_information(c) - classical_correlation_B(c)
        worst_id = max(worst_id, abs(q_b - assembled))
        f = [measurement_objective(c, e) for e in etas]
        worst_grid = max(worst_grid, f[0] - min(f))
        if np.any(np.diff(f) < -1e-9):
            worst_grid = max(worst_grid, float(-np.diff(f).min()))
    passed = worst_id <= 1e-10 and worst_grid <= 1e-9
    return CheckResult(
        "discord_assembly", passed,
        f"identity deviation {worst_id:.3e} (tol 1e-10); "
        f"grid advantage over eta=0 {worst_grid:.3e} (tol 1e-9)")


def check_mode_reflection_symmetry() -> CheckResult:
    """Discord of mode pair (n, n+k) equals that of (N+1-n-k, N+1-n).

    The literal variant mapping (n, n+k) onto (N-n, N-n+k) is reported in
    the detail; it only holds for k = 1.
    """
    N = 21
    worst = 0.0
    literal_worst = 0.0
    for j in (1, 6, 11):
        sd = build_spectral(ChainSpec(n_sites=N, polarized_node=j,
                                      inverse_temperature=10.0))
        for k in (1, 2, 3, 4):
            for n in range(1, N + 1 - k):
                q = discord(beta_coefficients(sd, n, n + k, 0.0))
                n_ref, m_ref = N + 1 - n - k, N + 1 - n
                q_ref = discord(beta_coefficients(sd, n_ref, m_ref, 0.0))
                worst = max(worst, abs(q - q_ref))
                if 1 <= N - n < N - n + k <= N:
                    q_lit = discord(beta_coefficients(sd, N - n, N - n + k, 0.0))
                    literal_worst = max(literal_worst, abs(q - q_lit))
    return _result("mode_reflection_symmetry", worst, 1e-12,
                   extra=f"literal-index variant deviates by {literal_worst:.3e}")


def check_static_collective_discord() -> CheckResult:
    """Collective-mode discord is constant in time; lattice discord is not."""
    rng = np.random.default_rng(5)
    sd = build_spectral(ChainSpec(n_sites=21, polarized_node=1,
                                  inverse_temperature=10.0))
    q0 = discord(beta_coefficients(sd, 3, 7, 0.0))
    worst = 0.0
    c_values = []
    for t in rng.uniform(0.0, 100.0, size=50):
        worst = max(worst, abs(discord(beta_coefficients(sd, 3, 7, float(t))) - q0))
        c_values.append(discord(coefficients(sd, Representation.C, 1, 2, float(t))))
    spread = float(np.ptp(c_values))
    passed = worst <= 1e-14 and spread > 1e-6
    return CheckResult(
        "static_collective_discord", passed,
        f"max |Q(t) - Q(0)| = {worst:.3e} (tol 1e-14); lattice spread {spread:.3e}")


def check_middle_node_plateau() -> CheckResult:
    """Pipeline discord of odd mode pairs vs the plateau closed form."""
    worst = 0.0
    for N in (5, 9, 21):
        for beta in (0.5, 10.0, math.inf):
            sd = build_spectral(ChainSpec(n_sites=N, polarized_node=(N + 1) // 2,
                                          inverse_temperature=beta))
            q = middle_node_q(beta, N)
            for n in range(1, N + 1, 2):
                for m in range(n + 2, N + 1, 2):
                    worst = max(worst, abs(discord(beta_coefficients(sd, n, m, 0.0)) - q))
    return _result("middle_node_plateau", worst, 1e-10)


def run_verification(max_sites: int = 6) -> list[CheckResult]:
    """Run every check; max_sites bounds the dense-oracle chain length."""
    if not 2 <= max_sites <= oracle.MAX_ORACLE_SITES:
        raise ValueError(f"max_sites must lie in 2..{oracle.MAX_ORACLE_SITES}")
    return [
        check_spectral(max_sites),
        check_propagator(max_sites),
        check_free_fermion_spectrum(max_sites),
        check_jw_algebra(max_sites),
        check_oracle_conservation(max_sites),
        check_reduced_matrices(max_sites),
        check_magnetization(max_sites),
        check_concurrence_oracle(),
        check_discord_assembly(),
        check_mode_reflection_symmetry(),
        check_static_collective_discord(),
        check_middle_node_plateau(),
    ]
