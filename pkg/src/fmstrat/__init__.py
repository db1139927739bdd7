"""Finite-memory strategies in stochastic games: models, transformations and equivalence."""
from .equivalence import (
    Counterexample,
    Equivalent,
    LinearRepresentation,
    bounded_depth_check,
    build_linear_representation,
    coalition_view,
    cylinder_probability,
    exact_equivalence,
)
from .game import (
    Game,
    History,
    ValidationReport,
    Violation,
    enumerate_histories,
    is_valid_extension,
    parse_word,
    validate_game,
)
from .imperfect import (
    ObservationLayer,
    check_factoring,
    check_uniformity,
    lift,
    obs_sequence,
    observation_game,
    validate_layer,
)
from .machine import (
    MealyMachine,
    MemoryCursor,
    OracleUndefinedError,
    StrategyClass,
    action_distribution,
    brute_force_memory_distribution,
    classify,
    is_consistent,
    memory_distribution,
    validate_machine,
)
from .probability import FMError, InputError
from .sampling import EmpiricalEstimate, SampleConfig, empirical_cylinder_estimate, sample_play
from .transforms import (
    BOTTOM,
    SegmentPlan,
    SubsetFunctionState,
    reachable_trim,
    rdd_to_drd,
    rrr_to_drr,
    rrr_to_rdr,
)

__version__ = "0.1.0"

__all__ = [
    "BOTTOM",
    "Counterexample",
    "EmpiricalEstimate",
    "Equivalent",
    "FMError",
    "Game",
    "History",
    "InputError",
    "LinearRepresentation",
    "MealyMachine",
    "MemoryCursor",
    "ObservationLayer",
    "OracleUndefinedError",
    "SampleConfig",
    "SegmentPlan",
    "StrategyClass",
    "SubsetFunctionState",
    "ValidationReport",
    "Violation",
    "action_distribution",
    "bounded_depth_check",
    "brute_force_memory_distribution",
    "build_linear_representation",
    "check_factoring",
    "check_uniformity",
    "classify",
    "coalition_view",
    "cylinder_probability",
    "empirical_cylinder_estimate",
    "enumerate_histories",
    "exact_equivalence",
    "is_consistent",
    "is_valid_extension",
    "lift",
    "memory_distribution",
    "obs_sequence",
    "observation_game",
    "parse_word",
    "rdd_to_drd",
    "reachable_trim",
    "rrr_to_drr",
    "rrr_to_rdr",
    "sample_play",
    "validate_game",
    "validate_layer",
    "validate_machine",
]
