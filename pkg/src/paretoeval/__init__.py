"""Evaluation toolkit for Pareto (nondominated) solution sets.

Compare the solution sets that multi-objective optimizers return: dominance
relations between solutions and whole sets, quality indicators for
convergence / spread / uniformity / cardinality, preference-aware
preprocessing, and guidance that assembles an evaluation plan and flags
common evaluation mistakes.
"""

from .core import (
    DimensionMismatchError,
    Direction,
    DominanceOutcome,
    EmptySetError,
    EvaluationWarning,
    ObjectiveMeta,
    SetRelation,
    Solution,
    SolutionSet,
    better_relation,
    compare,
    dominates,
    nondominated_front,
    set_dominates,
    set_weakly_dominates,
    unique_nondominated_front,
    weakly_dominates,
)
from .preprocess import (
    AT_LEAST,
    AT_MOST,
    EXACTLY_BEST,
    ClearConstraint,
    NormalizationBounds,
    PreferenceSpec,
    RegionOfInterest,
    Removal,
    VagueClamp,
    apply_clear_preferences,
    apply_vague_preferences,
    build_reference_point,
    build_reference_set,
    compute_h,
    normalize,
    restore_orientation,
    screen_trivial,
    to_minimization,
)
from .indicators import (
    ASPECTS,
    IndicatorConfig,
    IndicatorProfile,
    aspects_of,
    canonical_name,
    contribution,
    coverage,
    epsilon_additive,
    gd,
    gd_plus,
    grid_diversity,
    hypervolume,
    igd,
    igd_plus,
    nfs,
    spacing,
    spread_delta,
    unfr,
)
from .doe import (
    DoeComparison,
    ObjectiveStats,
    RunCollection,
    doe_compare,
    per_objective_stats,
    scalarize_best,
    select_representative_run,
)
from .guidance import (
    SEVERITIES,
    WARNING_CODES,
    EvaluationMode,
    EvaluationPlan,
    LintWarning,
    PlannedIndicator,
    PlanStep,
    SetContext,
    aspect_coverage,
    lint,
    recommend,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # core
    "Direction",
    "DominanceOutcome",
    "SetRelation",
    "DimensionMismatchError",
    "EmptySetError",
    "EvaluationWarning",
    "ObjectiveMeta",
    "Solution",
    "SolutionSet",
    "weakly_dominates",
    "dominates",
    "compare",
    "set_dominates",
    "set_weakly_dominates",
    "better_relation",
    "nondominated_front",
    "unique_nondominated_front",
    # preprocess
    "AT_LEAST",
    "AT_MOST",
    "EXACTLY_BEST",
    "ClearConstraint",
    "VagueClamp",
    "RegionOfInterest",
    "PreferenceSpec",
    "Removal",
    "NormalizationBounds",
    "to_minimization",
    "restore_orientation",
    "screen_trivial",
    "apply_clear_preferences",
    "apply_vague_preferences",
    "normalize",
    "build_reference_set",
    "build_reference_point",
    "compute_h",
    # indicators
    "ASPECTS",
    "IndicatorConfig",
    "IndicatorProfile",
    "canonical_name",
    "aspects_of",
    "contribution",
    "coverage",
    "gd",
    "gd_plus",
    "igd",
    "igd_plus",
    "spread_delta",
    "spacing",
    "nfs",
    "unfr",
    "hypervolume",
    "epsilon_additive",
    "grid_diversity",
    # doe
    "ObjectiveStats",
    "DoeComparison",
    "RunCollection",
    "per_objective_stats",
    "doe_compare",
    "scalarize_best",
    "select_representative_run",
    # guidance
    "SEVERITIES",
    "WARNING_CODES",
    "EvaluationMode",
    "EvaluationPlan",
    "LintWarning",
    "PlannedIndicator",
    "PlanStep",
    "SetContext",
    "aspect_coverage",
    "lint",
    "recommend",
]
