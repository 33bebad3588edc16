"""Quantum correlations of an open XY spin-1/2 chain with one polarized node.

The chain maps to free fermions, so every two-node reduced state is an
X state whose coefficients follow from single-particle transition
amplitudes.  Three module layers cover the pipeline: spectral data and
propagators (`chain`), reduced-state coefficients in the collective-mode,
lattice-fermion and spin representations (`xstate`), and the correlation
measures built on them (`correlations`).  `oracle` cross-checks all of it
against dense exact diagonalization, `sweep`/`reproduce`/`cli` drive the
batch outputs.
"""
from .chain import (ChainSpec, SpectralData, build_spectral,
                    magnetization_ratio, transition_amplitude,
                    transition_matrix)
from .correlations import (CorrelationRecord, classical_correlation_B,
                           concurrence_closed_form, correlation_columns,
                           correlation_record, discord, discord_one_sided,
                           geometric_discord, measurement_objective,
                           middle_node_q, mutual_information,
                           subsystem_entropies, wootters_concurrence)
from .oracle import (MAX_ORACLE_SITES, OracleState, beta_mode_operator,
                     build_hamiltonian, evolve, initial_state, jw_c_operator,
                     mode_pair_reduced, partial_trace_pair, prepare_oracle,
                     site_z_expectation)
from .reproduce import FIGURE_IDS, ScalarComparison, reproduce, scalar_benchmarks
from .sweep import (CSV_HEADER, RunConfig, config_from_mapping, format_value,
                    iter_records, load_config, run_sweep, snapshot)
from .verify import CheckResult, run_verification
from .xstate import (Representation, XStateCoefficients, beta_coefficients,
                     build_density_matrix, c_coefficients, coefficients,
                     spin_coefficients)

__version__ = "0.1.0"

__all__ = [
    "ChainSpec", "SpectralData", "build_spectral", "transition_amplitude",
    "transition_matrix", "magnetization_ratio",
    "Representation", "XStateCoefficients", "coefficients",
    "beta_coefficients", "c_coefficients", "spin_coefficients",
    "build_density_matrix",
    "CorrelationRecord", "correlation_record", "correlation_columns",
    "concurrence_closed_form", "wootters_concurrence", "discord",
    "discord_one_sided", "classical_correlation_B", "mutual_information",
    "subsystem_entropies", "measurement_objective", "geometric_discord",
    "middle_node_q",
    "MAX_ORACLE_SITES", "OracleState", "prepare_oracle", "evolve",
    "build_hamiltonian", "initial_state", "partial_trace_pair",
    "jw_c_operator", "beta_mode_operator", "mode_pair_reduced",
    "site_z_expectation",
    "RunConfig", "run_sweep", "iter_records", "snapshot", "load_config",
    "config_from_mapping", "CSV_HEADER", "format_value",
    "CheckResult", "run_verification",
    "FIGURE_IDS", "ScalarComparison", "reproduce", "scalar_benchmarks",
    "__version__",
]
