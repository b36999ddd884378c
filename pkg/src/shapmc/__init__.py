"""Shapley value estimation by sampling, with finite-sample error bounds."""

from .exact import (
    FeasibilityError,
    StratumStats,
    linear_bounds_closed_form,
    linear_bounds_exact,
    marginal_range_exact,
    marginal_variance_exact,
    shapley_exact,
    shapley_exact_coalitions,
    shapley_exact_permutations,
    shapley_exact_permutations_all,
    stratum_mean_exact,
)
from .games import (
    Coalition,
    Game,
    GameConstructionError,
    InvalidCoalitionError,
    KnownFacts,
    LinearBounds,
    UnsupportedFamilyError,
    game_from_spec,
    game_to_spec,
    instrumented,
    load_game,
    make_additive,
    make_airport,
    make_symmetric,
    make_table_game,
    make_weighted_voting,
    marginal_contribution,
    value,
)
from .harness import (
    ConfigError,
    CoverageReport,
    ExperimentConfig,
    coverage_experiment,
    error_curve,
    ground_truth,
    run,
    run_clt_demo,
)
from .rng import stream
from .srs import (
    ErrorBound,
    Estimate,
    chebyshev_error_bound,
    chebyshev_sample_size,
    clt_interval_halfwidth,
    collect_marginal_samples,
    estimate_srs,
    hoeffding_error_bound,
    hoeffding_sample_size,
    random_permutation,
)
from .stratified import (
    BudgetTooSmallError,
    StrataPlan,
    StratifiedEstimate,
    allocate_samples,
    estimate_stratified,
    estimate_stratified_all,
    per_stratum_delta,
    per_stratum_error_bound,
    sample_k_subset,
    srs_error_floor,
    stratified_beats_srs,
    stratified_error_bound,
)

__version__ = "0.1.0"
