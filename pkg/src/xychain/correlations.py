"""Entanglement and discord of two-node X-form reduced density matrices.

Every measure here reduces to functions of the two population excesses
(jnn, jmm) because the coherence of the evolved chain state is maximal,
|jnm|^2 = jnn*jmm.  Remote spin pairs are the one exception: their
reduced matrix is diagonal, so entanglement and discord vanish and only
the classical correlations survive.

Entropies are in bits (log base 2) and x*log2(x) is taken as 0 at x = 0.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .xstate import XStateCoefficients

#: below this magnitude a correlation value is classified as zero
ZERO_EPSILON = 1e-12

#: arguments of sqrt/log this far below 0 are treated as roundoff
_NEG_TOL = 1e-12


def _xlog2(x):
    """x*log2(x) with the x -> 0 limit = 0; array friendly."""
    x = np.asarray(x, dtype=float)
    if np.any(x < -_NEG_TOL):
        raise ValueError(f"x*log2(x) argument negative beyond tolerance: {x.min()}")
    safe = np.where(x > 0.0, x, 1.0)
    out = np.where(x > 0.0, x * np.log2(safe), 0.0)
    return out if out.ndim else float(out)


def _safe_sqrt(x):
    """sqrt clamping tiny negative roundoff to 0."""
    x = np.asarray(x, dtype=float)
    if np.any(x < -_NEG_TOL):
        raise ValueError(f"sqrt argument negative beyond tolerance: {x.min()}")
    out = np.sqrt(np.maximum(x, 0.0))
    return out if out.ndim else float(out)


def _node_entropy(x):
    """Entropy of a single node with population excess x: eigenvalues 1/2 +- x."""
    return -_xlog2(0.5 + np.asarray(x)) - _xlog2(0.5 - np.asarray(x))


# ---------------------------------------------------------------------------
# kernels on population excesses; scalar or array input
# ---------------------------------------------------------------------------

def _concurrence(jnn, jmm):
    # C = max(0, 2 sqrt(jnn jmm) - (1/2) sqrt(1 - 4 (jnn+jmm)^2))
    s = np.asarray(jnn) + np.asarray(jmm)
    return np.maximum(0.0, 2.0 * _safe_sqrt(np.asarray(jnn) * np.asarray(jmm))
                      - 0.5 * _safe_sqrt(1.0 - 4.0 * s * s))


def _discord_b(jnn, jmm):
    # measurement on the node with excess jnn
    s = np.asarray(jnn) + np.asarray(jmm)
    r = _safe_sqrt(np.asarray(jmm) * s)
    return -0.5 * (_xlog2(1.0 - 2.0 * np.asarray(jnn)) + _xlog2(1.0 + 2.0 * np.asarray(jnn))
                   - _xlog2(1.0 - 2.0 * s) - _xlog2(1.0 + 2.0 * s)
                   + _xlog2(1.0 - 2.0 * r) + _xlog2(1.0 + 2.0 * r))


def _classical_b(jnn, jmm):
    r = _safe_sqrt(np.asarray(jmm) * (np.asarray(jmm) + np.asarray(jnn)))
    return 0.5 * (_xlog2(1.0 - 2.0 * r) + _xlog2(1.0 + 2.0 * r)
                  - _xlog2(1.0 - 2.0 * np.asarray(jmm)) - _xlog2(1.0 + 2.0 * np.asarray(jmm)))


def _mutual_info(jnn, jmm):
    # I = S_A + S_B + sum_i lambda_i log2 lambda_i, doubly degenerate (1 +- 2s)/4
    s = np.asarray(jnn) + np.asarray(jmm)
    return (_node_entropy(jmm) + _node_entropy(jnn)
            + 2.0 * _xlog2((1.0 - 2.0 * s) / 4.0) + 2.0 * _xlog2((1.0 + 2.0 * s) / 4.0))


def _geometric(jnn, jmm):
    s = np.asarray(jnn) + np.asarray(jmm)
    return (4.0 / 3.0) * s * s


def _diag_mutual_info(jnn, jmm):
    # diagonal matrix: eigenvalues are the four populations themselves
    jnn, jmm = np.asarray(jnn), np.asarray(jmm)
    j00 = 0.25 - 0.5 * (jnn + jmm)
    ent = -(_xlog2(j00) + _xlog2(j00 + jnn) + _xlog2(j00 + jmm) + _xlog2(j00 + jnn + jmm))
    return _node_entropy(jmm) + _node_entropy(jnn) - ent


def _diag_geometric(jnn, jmm):
    jnn, jmm = np.asarray(jnn), np.asarray(jmm)
    return (4.0 / 3.0) * (jnn * jnn + jmm * jmm)


def correlation_columns(jnn, jmm, diagonal: bool = False) -> dict:
    """All correlation measures for arrays of populations of one pair.

    Returns a dict keyed like the CSV columns.  ``diagonal`` selects the
    coherence-free branch used for remote spin pairs, where quantum
    correlations vanish identically and the mutual information is purely
    classical.
    """
    jnn = np.asarray(jnn, dtype=float)
    jmm = np.asarray(jmm, dtype=float)
    if diagonal:
        zero = np.zeros(np.broadcast(jnn, jmm).shape)
        info = _diag_mutual_info(jnn, jmm)
        return {
            "concurrence": zero,
            "discord": zero,
            "discord_A": zero,
            "discord_B": zero,
            "classical_B": info,
            "mutual_info": info,
            "geometric_discord": _diag_geometric(jnn, jmm),
        }
    qb = _discord_b(jnn, jmm)
    qa = _discord_b(jmm, jnn)
    return {
        "concurrence": _concurrence(jnn, jmm),
        "discord": np.minimum(qa, qb),
        "discord_A": qa,
        "discord_B": qb,
        "classical_B": _classical_b(jnn, jmm),
        "mutual_info": _mutual_info(jnn, jmm),
        "geometric_discord": _geometric(jnn, jmm),
    }


# ---------------------------------------------------------------------------
# measures of a single coefficient set
# ---------------------------------------------------------------------------

def concurrence_closed_form(c: XStateCoefficients) -> float:
    """Wootters concurrence from the populations alone.

    C = max(0, 2 sqrt(jnn jmm) - (1/2) sqrt(1 - 4 (jnn+jmm)^2)); zero for
    a diagonal (remote spin) pair.
    """
    if c.diagonal:
        return 0.0
    return float(_concurrence(c.jnn, c.jmm))


def wootters_concurrence(rho: np.ndarray) -> float:
    """Concurrence of an arbitrary two-qubit density matrix.

    Spin-flips rho, takes the sorted square roots of the eigenvalues of
    rho @ rho_tilde and returns max(0, l1 - l2 - l3 - l4).  Raises if rho
    is not Hermitian positive semidefinite within tolerance.
    """
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (4, 4):
        raise ValueError(f"expected a 4x4 matrix, got {rho.shape}")
    if np.abs(rho - rho.conj().T).max() > 1e-10:
        raise ValueError("density matrix is not Hermitian")
    if np.linalg.eigvalsh(rho).min() < -1e-10:
        raise ValueError("density matrix is not positive semidefinite")
    sy = np.array([[0.0, -1j], [1j, 0.0]])
    flip = np.kron(sy, sy)
    rho_tilde = flip @ rho.conj() @ flip
    evals = np.linalg.eigvals(rho @ rho_tilde)
    # abs guards sqrt against tiny negative roundoff
    lam = np.sort(np.sqrt(np.abs(np.real(evals))))[::-1]
    return float(max(0.0, lam[0] - lam[1] - lam[2] - lam[3]))


def subsystem_entropies(c: XStateCoefficients) -> tuple[float, float]:
    """(S_A, S_B): entropies of the single nodes, A paired with jmm."""
    return float(_node_entropy(c.jmm)), float(_node_entropy(c.jnn))


def mutual_information(c: XStateCoefficients) -> float:
    """I = S_A + S_B - S(rho) in bits."""
    if c.diagonal:
        return float(_diag_mutual_info(c.jnn, c.jmm))
    return float(_mutual_info(c.jnn, c.jmm))


def classical_correlation_B(c: XStateCoefficients) -> float:
    """Classical correlations extracted by the optimal measurement on node B.

    The optimum sits at the transverse measurement; for a diagonal pair
    the longitudinal measurement recovers the whole mutual information.
    """
    if c.diagonal:
        return float(_diag_mutual_info(c.jnn, c.jmm))
    return float(_classical_b(c.jnn, c.jmm))


def measurement_objective(c: XStateCoefficients, eta: float) -> float:
    """Average conditional entropy f(eta) after measuring node B.

    eta = cos(angle) interpolates between the transverse (eta=0) and
    longitudinal (eta=1) projective measurements.  For maximal-coherence
    states f is nondecreasing in eta, so the discord optimum is eta = 0.
    """
    if not 0.0 <= eta <= 1.0:
        raise ValueError(f"eta must lie in [0, 1], got {eta}")
    jnn, jmm = c.jnn, c.jmm
    p0 = 0.5 * (1.0 + 2.0 * eta * jnn)
    p1 = 0.5 * (1.0 - 2.0 * eta * jnn)
    if c.diagonal:
        d = jmm
    else:
        d = _safe_sqrt(jmm * (jmm - (eta * eta - 1.0) * jnn))
    total = 0.0
    for p in (p0, p1):
        if p <= 1e-300:
            continue
        theta = d / p
        if theta > 1.0 + 1e-9:
            raise ValueError(f"conditional Bloch length {theta} exceeds 1")
        total += p * _node_entropy(min(theta, 1.0) / 2.0)
    return float(total)


def discord_one_sided(c: XStateCoefficients, side: str) -> float:
    """Quantum discord with the measurement on one node.

    Side "B" measures node n (excess jnn), side "A" measures node m.
    Zero for diagonal pairs, which are classically correlated.
    """
    if side not in ("A", "B"):
        raise ValueError(f"side must be 'A' or 'B', got {side!r}")
    if c.diagonal:
        return 0.0
    if side == "B":
        return float(_discord_b(c.jnn, c.jmm))
    return float(_discord_b(c.jmm, c.jnn))


def discord(c: XStateCoefficients) -> float:
    """Two-sided discord min(Q_A, Q_B)."""
    return min(discord_one_sided(c, "A"), discord_one_sided(c, "B"))


def geometric_discord(c: XStateCoefficients) -> float:
    """Unitary-invariant (purity-based) geometric discord, bounded by 1/3.

    (4/3)(jnn+jmm)^2 at maximal coherence, (4/3)(jnn^2+jmm^2) for the
    diagonal remote-spin case.
    """
    if c.diagonal:
        return float(_diag_geometric(c.jnn, c.jmm))
    return float(_geometric(c.jnn, c.jmm))


def middle_node_q(beta: float, n_sites: int) -> float:
    """Plateau discord of collective-mode pairs for a centrally polarized chain.

    Valid for odd chains, n_sites >= 5, with the excitation on the middle
    node: every pair of odd modes shares the same discord q.
    """
    if n_sites % 2 == 0:
        raise ValueError(f"middle node requires an odd chain, got {n_sites}")
    if n_sites < 5:
        raise ValueError(f"need n_sites >= 5, got {n_sites}")
    if not beta >= 0:
        raise ValueError(f"beta must be >= 0, got {beta}")
    tau = 1.0 if np.isinf(beta) else np.tanh(beta / 2.0)
    L = float(n_sites + 1)
    rt2 = np.sqrt(2.0)
    term1 = 0.5 * np.log2(
        (L * L - (4.0 * tau) ** 2) * L * L
        / ((L * L - (2.0 * tau) ** 2) * (L * L - 2.0 * (2.0 * tau) ** 2)))
    term2 = (tau / L) * np.log2(
        (L + 4.0 * tau) ** 2 * (L - 2.0 * tau)
        / ((L - 4.0 * tau) ** 2 * (L + 2.0 * tau)))
    term3 = (rt2 * tau / L) * np.log2((L - 2.0 * rt2 * tau) / (L + 2.0 * rt2 * tau))
    return float(term1 + term2 + term3)


# ---------------------------------------------------------------------------
# aggregated record
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CorrelationRecord:
    """All correlation measures of one pair at one time."""

    representation: str
    n: int
    m: int
    time: float
    concurrence: float
    discord: float
    discord_a: float
    discord_b: float
    classical_b: float
    mutual_info: float
    geometric_discord: float


def correlation_record(c: XStateCoefficients) -> CorrelationRecord:
    """Evaluate every measure for one coefficient set."""
    return CorrelationRecord(
        representation=c.representation.value,
        n=c.n,
        m=c.m,
        time=c.time,
        concurrence=concurrence_closed_form(c),
        discord=discord(c),
        discord_a=discord_one_sided(c, "A"),
        discord_b=discord_one_sided(c, "B"),
        classical_b=classical_correlation_B(c),
        mutual_info=mutual_information(c),
        geometric_discord=geometric_discord(c),
    )
