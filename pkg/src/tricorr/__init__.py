"""Bipartite and tripartite correlation measures for pure tripartite states.

Computes entanglement of formation, quantum discord, classical correlation,
discrepancy and the per-pivot / total tangles built from them, plus a
two-qubit amplitude-damping dynamics study, behind a library API and a CLI.
"""

__version__ = "0.1.0"

from .correlations import (
    CorrelationReport,
    MeasurementBasis,
    classical_correlation,
    conditional_entropy,
    discord,
    discrepancy,
    measured_conditional_entropy,
    mutual_information,
    pair_report,
)
from .dynamics import DampingParams, DynamicsTrace, decay_amplitude, evolve_pair, purified_tripartite, scan
from .entanglement import (
    concurrence,
    concurrence_tangle,
    eof_koashi_winter,
    eof_pure_partition,
    eof_two_qubit,
)
from .errors import ConsistencyError, StateFormatError, UnsupportedDimensionError
from .linalg import (
    DensityMatrix,
    Spectrum,
    eig_hermitian,
    kron,
    partial_trace,
    permute_subsystems,
    von_neumann_entropy,
)
from .monogamy import (
    TangleReport,
    conservation_law_check,
    discrepancy_conservation_check,
    monogamy_predicate,
    squashed_bound_audit,
    tau_pivot,
    tau_total,
    tau_total_22n,
)
from .states import PureState, WParams, balanced_w, bell_like, ghz, haar_random, load_state, save_state, w

__all__ = [
    "CorrelationReport",
    "MeasurementBasis",
    "classical_correlation",
    "conditional_entropy",
    "discord",
    "discrepancy",
    "measured_conditional_entropy",
    "mutual_information",
    "pair_report",
    "DampingParams",
    "DynamicsTrace",
    "decay_amplitude",
    "evolve_pair",
    "purified_tripartite",
    "scan",
    "concurrence",
    "concurrence_tangle",
    "eof_koashi_winter",
    "eof_pure_partition",
    "eof_two_qubit",
    "ConsistencyError",
    "StateFormatError",
    "UnsupportedDimensionError",
    "DensityMatrix",
    "Spectrum",
    "eig_hermitian",
    "kron",
    "partial_trace",
    "permute_subsystems",
    "von_neumann_entropy",
    "TangleReport",
    "conservation_law_check",
    "discrepancy_conservation_check",
    "monogamy_predicate",
    "squashed_bound_audit",
    "tau_pivot",
    "tau_total",
    "tau_total_22n",
    "PureState",
    "WParams",
    "balanced_w",
    "bell_like",
    "ghz",
    "haar_random",
    "load_state",
    "save_state",
    "w",
]
