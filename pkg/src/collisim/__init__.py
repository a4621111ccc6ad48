"""Collision-model simulator for ancilla-environment entanglement statistics.

A single ancilla qubit collides repeatedly with one or two multi-qubit
environments prepared in random pure states.  The package samples those
states with a verified Haar sampler, evolves the register through exact
two-qubit Heisenberg collisions, and reports entanglement measures
(concurrence, negativity, a three-party witness) aggregated over Monte
Carlo ensembles.  Everything is deterministic given (seed, sample index),
independent of worker count.
"""
__version__ = "0.1.0"

from .dynamics import (
    ORDER_L_FIRST,
    ORDER_R_FIRST,
    AncillaPrep,
    CollisionEvent,
    CollisionSchedule,
    CouplingSpec,
    bell_basis,
    build_register,
    heisenberg_unitary,
    prepare_environments,
    prepare_from_unitaries,
    run_protocol,
    standard_schedule,
)
from .haar import (
    EulerAngleSet,
    RngStream,
    assert_unitary,
    compose_unitary,
    ginibre_qr_haar,
    sample_euler_angles,
    sample_haar_unitary,
)
from .harness import (
    AggregateResult,
    ExperimentConfig,
    ExponentialFit,
    GridPoint,
    RunAbortedError,
    RunResult,
    SampleRecord,
    ThresholdScan,
    WitnessCensus,
    fit_exponential,
    preset,
    preset_names,
    run_monte_carlo,
    single_environment_config,
    threshold_dimension,
    witness_census,
)
from .measures import (
    bloch_decomposition,
    classify_graph,
    concurrence,
    factorization_distance,
    ghz_witness,
    negativity,
    tripartite_negativity,
)
from .qstate import (
    DensityMatrix,
    PureState,
    QubitRegister,
    apply_local_unitary,
    ground_state,
    partial_trace,
    partial_transpose,
    reduce_density_matrix,
)
from .reporting import write_csv, write_manifest, write_outputs, write_samples_csv
from .validate import haar_check, ks_statistic, oracle_check

__all__ = [
    "__version__",
    "ORDER_L_FIRST",
    "ORDER_R_FIRST",
    "AncillaPrep",
    "CollisionEvent",
    "CollisionSchedule",
    "CouplingSpec",
    "bell_basis",
    "build_register",
    "heisenberg_unitary",
    "prepare_environments",
    "prepare_from_unitaries",
    "run_protocol",
    "standard_schedule",
    "EulerAngleSet",
    "RngStream",
    "assert_unitary",
    "compose_unitary",
    "ginibre_qr_haar",
    "sample_euler_angles",
    "sample_haar_unitary",
    "AggregateResult",
    "ExperimentConfig",
    "ExponentialFit",
    "GridPoint",
    "RunAbortedError",
    "RunResult",
    "SampleRecord",
    "ThresholdScan",
    "WitnessCensus",
    "fit_exponential",
    "preset",
    "preset_names",
    "run_monte_carlo",
    "single_environment_config",
    "threshold_dimension",
    "witness_census",
    "bloch_decomposition",
    "classify_graph",
    "concurrence",
    "factorization_distance",
    "ghz_witness",
    "negativity",
    "tripartite_negativity",
    "DensityMatrix",
    "PureState",
    "QubitRegister",
    "apply_local_unitary",
    "ground_state",
    "partial_trace",
    "partial_transpose",
    "reduce_density_matrix",
    "write_csv",
    "write_manifest",
    "write_outputs",
    "write_samples_csv",
    "haar_check",
    "ks_statistic",
    "oracle_check",
]
