"""Sweep configuration and deterministic CSV output.

A sweep evaluates every requested correlation measure for a set of node
pairs on a uniform time grid, one row per (representation, pair, time).
Output is byte-identical across runs and worker counts: rows are ordered
by (representation, n, m, t) and floats are printed with 12 significant
digits.
"""
from __future__ import annotations

import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from typing import Iterator

import numpy as np

from .chain import ChainSpec, SpectralData, build_spectral, transition_matrix
from .correlations import (CorrelationRecord, correlation_columns,
                           correlation_record)
from .xstate import Representation, coefficients

CSV_HEADER = ("representation,n,m,t,concurrence,discord,discord_A,discord_B,"
              "classical_B,mutual_info,geometric_discord")
_COLUMNS = ("concurrence", "discord", "discord_A", "discord_B",
            "classical_B", "mutual_info", "geometric_discord")

_ALL_REPS = (Representation.BETA, Representation.C, Representation.SPIN)


def format_value(x: float) -> str:
    """12 significant digits, '.' decimal separator, no negative zero."""
    if x == 0.0:
        x = 0.0
    return "%.12g" % x


@dataclass(frozen=True)
class RunConfig:
    """One sweep: chain parameters, representations, pairs and time grid."""

    n_sites: int = 21
    polarized_node: int = 1
    inverse_temperature: float = 10.0
    coupling: float = 1.0
    larmor: float = 0.0
    representations: tuple[Representation, ...] = _ALL_REPS
    pairs: str | tuple[tuple[int, int], ...] = "all"
    t_min: float = 0.0
    t_max: float = 100.0
    steps: int = 2000
    out: str | None = None
    zero_epsilon: float = 1e-12
    workers: int = 1

    def __post_init__(self):
        self.chain_spec()  # validates the chain fields
        if not self.representations:
            raise ValueError("at least one representation is required")
        if self.t_min < 0 or self.t_max < self.t_min:
            raise ValueError(f"need 0 <= t_min <= t_max, got [{self.t_min}, {self.t_max}]")
        if self.steps < 1:
            raise ValueError(f"steps must be >= 1, got {self.steps}")
        if self.steps == 1 and self.t_max != self.t_min:
            raise ValueError("steps=1 requires t_min == t_max")
        if self.workers < 1:
            raise ValueError(f"workers must be >= 1, got {self.workers}")
        if self.zero_epsilon <= 0:
            raise ValueError("zero_epsilon must be positive")
        self.resolve_pairs()

    def chain_spec(self) -> ChainSpec:
        return ChainSpec(
            n_sites=self.n_sites,
            polarized_node=self.polarized_node,
            inverse_temperature=self.inverse_temperature,
            coupling=self.coupling,
            larmor=self.larmor)

    def time_grid(self) -> np.ndarray:
        if self.steps == 1:
            return np.array([self.t_min])
        return np.linspace(self.t_min, self.t_max, self.steps)

    def resolve_pairs(self) -> list[tuple[int, int]]:
        """Expand the pair selector into a sorted list of (n, m), n < m."""
        N = self.n_sites
        if self.pairs == "all":
            return [(n, m) for n in range(1, N + 1) for m in range(n + 1, N + 1)]
        if isinstance(self.pairs, str):
            if self.pairs.startswith("neighbors:"):
                sep = int(self.pairs.split(":", 1)[1])
                if not 1 <= sep <= N - 1:
                    raise ValueError(f"separation {sep} outside 1..{N - 1}")
                return [(n, n + sep) for n in range(1, N + 1 - sep)]
            raise ValueError(f"unknown pair selector {self.pairs!r}")
        out = []
        for pair in self.pairs:
            n, m = int(pair[0]), int(pair[1])
            if not 1 <= n < m <= N:
                raise ValueError(f"pair ({n}, {m}) must satisfy 1 <= n < m <= {N}")
            out.append((n, m))
        return sorted(set(out))


def _parse_beta(value) -> float:
    if isinstance(value, str):
        value = float(value)
    return float(value)


def config_from_mapping(data: dict) -> RunConfig:
    """Build a RunConfig from a flat mapping (parsed JSON)."""
    known = {f.name for f in RunConfig.__dataclass_fields__.values()}
    unknown = set(data) - known
    if unknown:
        raise ValueError(f"unknown config keys: {sorted(unknown)}")
    kwargs = dict(data)
    if "inverse_temperature" in kwargs:
        kwargs["inverse_temperature"] = _parse_beta(kwargs["inverse_temperature"])
    if "representations" in kwargs:
        kwargs["representations"] = tuple(
            Representation(r) for r in kwargs["representations"])
    if "pairs" in kwargs and not isinstance(kwargs["pairs"], str):
        kwargs["pairs"] = tuple((int(p[0]), int(p[1])) for p in kwargs["pairs"])
    return RunConfig(**kwargs)


def load_config(path: str) -> RunConfig:
    """Read a flat JSON config file."""
    with open(path) as fh:
        data = json.load(fh)
    if not isinstance(data, dict):
        raise ValueError(f"config root must be a JSON object, got {type(data).__name__}")
    return config_from_mapping(data)


# ---------------------------------------------------------------------------
# sweep execution
# ---------------------------------------------------------------------------

def _populations(sd: SpectralData, rep: Representation, n: int, m: int,
                 times: np.ndarray, umat: np.ndarray | None):
    """(jnn(t), jmm(t), |jnm(t)|, diagonal flag) arrays for one pair."""
    tau = sd.spec.polarization
    if rep is Representation.BETA:
        j = sd.spec.polarized_node
        jnn = 0.5 * tau * sd.amplitude(n, j) ** 2
        jmm = 0.5 * tau * sd.amplitude(m, j) ** 2
        ones = np.ones_like(times)
        return jnn * ones, jmm * ones, abs(
            0.5 * tau * sd.amplitude(n, j) * sd.amplitude(m, j)) * ones, False
    jnn = 0.5 * tau * np.abs(umat[:, n - 1]) ** 2
    jmm = 0.5 * tau * np.abs(umat[:, m - 1]) ** 2
    diagonal = rep is Representation.SPIN and m > n + 1
    if diagonal:
        coh = np.zeros_like(jnn)
    else:
        coh = np.abs(0.5 * tau * umat[:, n - 1] * np.conj(umat[:, m - 1]))
    return jnn, jmm, coh, diagonal


def _check_coefficient_laws(jnn, jmm, coh, diagonal: bool, tol: float = 1e-12) -> None:
    """Structural laws every generated coefficient set must obey."""
    if float(np.min(jnn)) < -tol or float(np.min(jmm)) < -tol:
        raise ValueError("negative population in sweep coefficients")
    s = jnn + jmm
    if float(np.max(s)) > 0.5 + tol:
        raise ValueError("population sum exceeds 1/2 in sweep coefficients")
    if diagonal:
        worst = float(np.max(np.abs(coh)))
    else:
        worst = float(np.max(np.abs(coh ** 2 - jnn * jmm)))
    if worst > tol:
        raise ValueError(f"coherence law violated by {worst}")


def _pair_block(sd: SpectralData, rep: Representation, n: int, m: int,
                times: np.ndarray, umat: np.ndarray | None) -> str:
    jnn, jmm, coh, diagonal = _populations(sd, rep, n, m, times, umat)
    _check_coefficient_laws(jnn, jmm, coh, diagonal)
    cols = correlation_columns(jnn, jmm, diagonal=diagonal)
    data = [np.atleast_1d(cols[name]) for name in _COLUMNS]
    prefix = f"{rep.value},{n},{m},"
    lines = []
    for i, t in enumerate(times):
        vals = ",".join(format_value(float(col[i])) for col in data)
        lines.append(prefix + format_value(float(t)) + "," + vals)
    return "\n".join(lines) + "\n"


_WORKER_STATE: dict = {}


def _init_worker(config: RunConfig) -> None:
    sd = build_spectral(config.chain_spec())
    times = config.time_grid()
    umat = None
    if any(r is not Representation.BETA for r in config.representations):
        umat = transition_matrix(sd, config.polarized_node, times)
    _WORKER_STATE["sd"] = sd
    _WORKER_STATE["times"] = times
    _WORKER_STATE["umat"] = umat


def _run_task(task: tuple[str, int, int]) -> str:
    rep, n, m = task
    return _pair_block(_WORKER_STATE["sd"], Representation(rep), n, m,
                       _WORKER_STATE["times"], _WORKER_STATE["umat"])


def run_sweep(config: RunConfig) -> int:
    """Execute the sweep and stream CSV rows to config.out (or stdout).

    Returns the number of data rows written.  Output ordering and bytes
    do not depend on the worker count.
    """
    reps = sorted(set(config.representations), key=lambda r: r.value)
    pairs = config.resolve_pairs()
    tasks = [(rep.value, n, m) for rep in reps for n, m in pairs]
    times = config.time_grid()

    if config.out is None:
        fh = sys.stdout
        close = False
    else:
        fh = open(config.out, "w", newline="")
        close = True
    rows = 0
    try:
        fh.write(CSV_HEADER + "\n")
        if config.workers == 1:
            _init_worker(config)
            blocks = map(_run_task, tasks)
            for block in blocks:
                fh.write(block)
                rows += block.count("\n")
        else:
            with ProcessPoolExecutor(max_workers=config.workers,
                                     initializer=_init_worker,
                                     initargs=(config,)) as pool:
                for block in pool.map(_run_task, tasks, chunksize=8):
                    fh.write(block)
                    rows += block.count("\n")
    finally:
        if close:
            fh.close()
    return rows


def iter_records(config: RunConfig) -> Iterator[CorrelationRecord]:
    """Scalar-path record generator in CSV row order (for small grids)."""
    sd = build_spectral(config.chain_spec())
    reps = sorted(set(config.representations), key=lambda r: r.value)
    pairs = config.resolve_pairs()
    for rep in reps:
        for n, m in pairs:
            for t in config.time_grid():
                c = coefficients(sd, rep, n, m, float(t))
                c.validate()
                yield correlation_record(c)


def snapshot(config: RunConfig, t: float = 0.0) -> list[CorrelationRecord]:
    """All records of the configured pairs at a single time."""
    single = replace(config, t_min=float(t), t_max=float(t), steps=1)
    return list(iter_records(single))
