"""Trace-distance information-flow diagnostics for a two-qubit pair model.

An exactly solvable system-environment model (two qubits, product start,
time-local exchange coupling) together with the full toolbox built on it:
reduced dynamical maps in closed form, trace-distance flow measures and
their correlation bound, a distance-revival witness, relative-entropy
reduction losses, stock scenarios with closed-form oracle curves, a
memory-kernel integrator, and an oracle cross-check suite.
"""

from .linalg import (
    HermEigen,
    MatrixLog,
    herm_eig,
    kron,
    matrix_log_hermitian,
    partial_trace,
    trace_norm,
)
from .measures import (
    COLUMN_ORDER,
    MeasureSeries,
    SearchConfig,
    StatePair,
    WitnessReport,
    bloch_state,
    blp_witness,
    corr_bound,
    distance_at,
    entropy_sum,
    i_ext,
    minimize_loss,
    s_u_lambda,
    tdd,
    trace_distance,
)
from .model import (
    CouplingProfile,
    ModelState,
    closed_form_map,
    generator_apply,
    joint_state,
    kernel_apply,
    propagator,
    reduced_channel,
    reduced_state,
    volterra_solve,
)
from .quantum import (
    Channel,
    CptpReport,
    choi_of,
    density_from_matrix,
    is_cptp,
    relative_entropy,
    validate_unitary,
)
from .scenarios import (
    ORTHOGONAL_PAIR,
    PLUS_STATE,
    RANDOM_PAIR,
    OracleCurves,
    ScenarioConfig,
    TimeGrid,
    builtin,
    emit_csv,
    oracle,
    run,
    scenario_from_json,
    scenario_to_json,
)
from .validation import CheckResult, run_all

__version__ = "0.1.0"

__all__ = [
    "COLUMN_ORDER",
    "Channel",
    "CheckResult",
    "CouplingProfile",
    "CptpReport",
    "HermEigen",
    "MatrixLog",
    "MeasureSeries",
    "ModelState",
    "ORTHOGONAL_PAIR",
    "OracleCurves",
    "PLUS_STATE",
    "RANDOM_PAIR",
    "ScenarioConfig",
    "SearchConfig",
    "StatePair",
    "TimeGrid",
    "WitnessReport",
    "bloch_state",
    "blp_witness",
    "builtin",
    "choi_of",
    "closed_form_map",
    "corr_bound",
    "density_from_matrix",
    "distance_at",
    "emit_csv",
    "entropy_sum",
    "generator_apply",
    "herm_eig",
    "i_ext",
    "is_cptp",
    "joint_state",
    "kernel_apply",
    "kron",
    "matrix_log_hermitian",
    "minimize_loss",
    "oracle",
    "partial_trace",
    "propagator",
    "reduced_channel",
    "reduced_state",
    "relative_entropy",
    "run",
    "run_all",
    "s_u_lambda",
    "scenario_from_json",
    "scenario_to_json",
    "tdd",
    "trace_distance",
    "trace_norm",
    "validate_unitary",
    "volterra_solve",
    "__version__",
]
