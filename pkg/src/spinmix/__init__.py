"""Exact and Monte Carlo statistics of fixed-composition vs randomly mixed
spin-1/2 ensembles: k-particle reduced density matrices, measurement count
distributions, and discrimination figures."""

from .discrimination import (
    AxisFigures,
    DistinguishabilityReport,
    MonteCarloEstimate,
    bayes_success_from_counts,
    build_report,
    monte_carlo_discrimination,
    pairwise_trace_distances,
)
from .ensembles import (
    CountPmf,
    EnsembleSpec,
    FixedComposition,
    IidMixture,
    TypeSequenceWeight,
    balanced_fixed,
    balanced_mixture,
    binomial_pmf,
    composition_distribution,
    delta_pmf,
    ensemble_literal,
    make_urn,
    ordered_type_weight,
    pair_density,
    pair_density_cross_expansion,
    pair_frequencies,
    parse_ensemble,
    preset_ensemble,
    reduced_density_matrix,
    total_variation,
    urn_composition,
)
from .linalg import (
    ATOL_ALGEBRA,
    ATOL_EIGEN,
    PARTICLE_CAP,
    DensityMatrix,
    hermitian_eigenvalues,
    kron,
    kron_power,
    partial_trace_last,
    trace_distance,
)
from .measurement import (
    ExperimentRecord,
    Realization,
    exact_count_pmf,
    measure_realization,
    monte_carlo_count_pmf,
    pmf_moments,
    run_experiments,
    sample_realization,
    trial_stream,
)
from .spin import (
    Axis,
    PureState,
    X_AXIS,
    Y_AXIS,
    Z_AXIS,
    axis_basis_matrix,
    axis_label,
    parse_axis,
    projector,
    spinor,
    state_projector,
    transition_probability,
)

__version__ = "0.1.0"

__all__ = [
    "ATOL_ALGEBRA",
    "ATOL_EIGEN",
    "Axis",
    "AxisFigures",
    "CountPmf",
    "DensityMatrix",
    "DistinguishabilityReport",
    "EnsembleSpec",
    "ExperimentRecord",
    "FixedComposition",
    "IidMixture",
    "MonteCarloEstimate",
    "PARTICLE_CAP",
    "PureState",
    "Realization",
    "TypeSequenceWeight",
    "X_AXIS",
    "Y_AXIS",
    "Z_AXIS",
    "axis_basis_matrix",
    "axis_label",
    "balanced_fixed",
    "balanced_mixture",
    "bayes_success_from_counts",
    "binomial_pmf",
    "build_report",
    "composition_distribution",
    "delta_pmf",
    "ensemble_literal",
    "exact_count_pmf",
    "hermitian_eigenvalues",
    "kron",
    "kron_power",
    "make_urn",
    "measure_realization",
    "monte_carlo_count_pmf",
    "monte_carlo_discrimination",
    "ordered_type_weight",
    "pair_density",
    "pair_density_cross_expansion",
    "pair_frequencies",
    "pairwise_trace_distances",
    "parse_axis",
    "parse_ensemble",
    "partial_trace_last",
    "pmf_moments",
    "preset_ensemble",
    "projector",
    "reduced_density_matrix",
    "run_experiments",
    "sample_realization",
    "spinor",
    "state_projector",
    "total_variation",
    "trace_distance",
    "transition_probability",
    "trial_stream",
    "urn_composition",
]
