"""Two-node reduced density matrices in X form.

After tracing the evolved chain state down to one pair of nodes, the 4x4
reduced matrix is diagonal plus a single coherence between |01> and |10>.
It is fully described by four numbers (j00, jnn, jmm, jnm).  Three node
conventions are supported:

* ``beta`` -- collective (diagonalizing) fermion modes; populations are
  time independent and only the coherence phase rotates.
* ``c``    -- local lattice fermions; populations follow the excitation
  transfer amplitudes U_nj(t).
* ``spin`` -- lattice spins; identical to ``c`` for adjacent nodes, while
  remote pairs (m > n+1) lose the coherence entirely and the reduced
  matrix is diagonal.

The basis is |00>, |01>, |10>, |11> where the first slot is the filling
of node n and the second of node m (1 = excited/occupied).
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .chain import SpectralData, transition_amplitude

COEFF_TOL = 1e-12


class Representation(str, Enum):
    BETA = "beta"
    C = "c"
    SPIN = "spin"


@dataclass(frozen=True)
class XStateCoefficients:
    """Coefficients of one two-node reduced density matrix.

    jnn and jmm are the population excesses of nodes n and m, jnm the
    |10><01| coherence, j00 the weight of the doubly-empty state.  For the
    beta and c representations (and adjacent spin pairs) the coherence is
    maximal: |jnm|^2 = jnn * jmm.  Remote spin pairs are diagonal, jnm = 0.
    """

    representation: Representation
    n: int
    m: int
    time: float
    j00: float
    jnn: float
    jmm: float
    jnm: complex

    @property
    def diagonal(self) -> bool:
        """True when the reduced matrix carries no coherence by construction."""
        return self.representation is Representation.SPIN and self.m > self.n + 1

    def validate(self, tol: float = COEFF_TOL) -> None:
        """Check the structural laws; raises ValueError on violation."""
        if self.jnn < -tol or self.jmm < -tol:
            raise ValueError(f"negative population: jnn={self.jnn}, jmm={self.jmm}")
        if self.jnn + self.jmm > 0.5 + tol:
            raise ValueError(f"jnn + jmm = {self.jnn + self.jmm} exceeds 1/2")
        trace = 4.0 * self.j00 + 2.0 * (self.jnn + self.jmm)
        if abs(trace - 1.0) > tol:
            raise ValueError(f"trace identity violated: {trace}")
        if self.diagonal:
            if abs(self.jnm) > tol:
                raise ValueError(f"remote spin pair must be diagonal, jnm={self.jnm}")
        elif abs(abs(self.jnm) ** 2 - self.jnn * self.jmm) > tol:
            raise ValueError(
                f"|jnm|^2 = {abs(self.jnm)**2} != jnn*jmm = {self.jnn * self.jmm}")


def _check_pair(sd: SpectralData, n: int, m: int) -> None:
    if not 1 <= n < m <= sd.spec.n_sites:
        raise ValueError(f"pair ({n}, {m}) must satisfy 1 <= n < m <= {sd.spec.n_sites}")


def beta_coefficients(sd: SpectralData, n: int, m: int, t: float) -> XStateCoefficients:
    """Reduced matrix of two collective modes n and m.

    jnn = (tanh(beta/2)/2) g_n(j)^2 is constant in time; the coherence
    rotates as exp(-i t (eps_n - eps_m)).
    """
    _check_pair(sd, n, m)
    tau = sd.spec.polarization
    j = sd.spec.polarized_node
    gn = sd.amplitude(n, j)
    gm = sd.amplitude(m, j)
    jnn = 0.5 * tau * gn * gn
    jmm = 0.5 * tau * gm * gm
    phase = np.exp(-1j * t * (sd.energies[n - 1] - sd.energies[m - 1]))
    jnm = complex(0.5 * tau * phase * gn * gm)
    return XStateCoefficients(
        representation=Representation.BETA, n=n, m=m, time=t,
        j00=0.25 - 0.5 * (jnn + jmm), jnn=jnn, jmm=jmm, jnm=jnm)


def c_coefficients(sd: SpectralData, n: int, m: int, t: float) -> XStateCoefficients:
    """Reduced matrix of two lattice fermions n and m.

    jnn(t) = (tanh(beta/2)/2) |U_nj(t)|^2 and
    jnm(t) = (tanh(beta/2)/2) U_nj(t) conj(U_mj(t)).
    """
    _check_pair(sd, n, m)
    tau = sd.spec.polarization
    j = sd.spec.polarized_node
    un = transition_amplitude(sd, n, j, t)
    um = transition_amplitude(sd, m, j, t)
    jnn = 0.5 * tau * abs(un) ** 2
    jmm = 0.5 * tau * abs(um) ** 2
    jnm = 0.5 * tau * un * np.conj(um)
    return XStateCoefficients(
        representation=Representation.C, n=n, m=m, time=t,
        j00=0.25 - 0.5 * (jnn + jmm), jnn=jnn, jmm=jmm, jnm=complex(jnm))


def spin_coefficients(sd: SpectralData, n: int, m: int, t: float) -> XStateCoefficients:
    """Reduced matrix of two lattice spins n and m.

    Adjacent spins coincide with the c representation; for m > n+1 the
    operator strings between the nodes average out and only the diagonal
    survives.
    """
    base = c_coefficients(sd, n, m, t)
    jnm = base.jnm if m == n + 1 else 0j
    return XStateCoefficients(
        representation=Representation.SPIN, n=n, m=m, time=t,
        j00=base.j00, jnn=base.jnn, jmm=base.jmm, jnm=jnm)


_BUILDERS = {
    Representation.BETA: beta_coefficients,
    Representation.C: c_coefficients,
    Representation.SPIN: spin_coefficients,
}


def coefficients(sd: SpectralData, rep: Representation, n: int, m: int,
                 t: float) -> XStateCoefficients:
    """Dispatch to the builder for the requested representation."""
    return _BUILDERS[Representation(rep)](sd, n, m, t)


def build_density_matrix(c: XStateCoefficients) -> np.ndarray:
    """Assemble the 4x4 matrix in the |00>,|01>,|10>,|11> basis.

    diag = (j00, j00+jmm, j00+jnn, j00+jnn+jmm), coherence jnm at
    (|10>, |01>) and its conjugate mirrored.  Populations a hair below
    zero from roundoff are clamped; anything worse is rejected.
    """
    jnn = _clamp_nonnegative(c.jnn, "jnn")
    jmm = _clamp_nonnegative(c.jmm, "jmm")
    if jnn + jmm > 0.5 + COEFF_TOL:
        raise ValueError(f"jnn + jmm = {jnn + jmm} exceeds 1/2")
    j00 = max(c.j00, 0.0)
    rho = np.zeros((4, 4), dtype=complex)
    rho[0, 0] = j00
    rho[1, 1] = j00 + jmm
    rho[2, 2] = j00 + jnn
    rho[3, 3] = j00 + jnn + jmm
    rho[2, 1] = c.jnm
    rho[1, 2] = np.conj(c.jnm)
    return rho


def _clamp_nonnegative(x: float, name: str) -> float:
    """Map tiny negative roundoff onto 0; reject genuine negatives."""
    if x < -COEFF_TOL:
        raise ValueError(f"{name} = {x} is negative beyond tolerance")
    return max(x, 0.0)
