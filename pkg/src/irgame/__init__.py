"""Game-theoretic macro-model of information retrieval.

Bimatrix game tools, the diagonal Alpha model and its inverse problem,
search-log preprocessing, and provider bonus shifting.
"""
__version__ = "0.1.0"

from .alpha import (
    AlphaModel,
    EquilibriumProfile,
    ScaleConstants,
    equilibrium_scales,
    expand_to_bimatrix,
    forward_equilibrium,
    invert_from_equilibrium,
    normalize_to_budget,
    provider_gain_at_equilibrium,
    scales_for_budget,
    user_gain_at_equilibrium,
)
from .estimators import AlphaModelEstimator, BonusShifter
from .exceptions import (
    DegenerateGameError,
    DomainError,
    IRGameError,
    NoInteriorEquilibriumError,
    ParameterError,
    ParseError,
    ShapeError,
    StepTooLargeError,
    ZeroFrequencyError,
)
from .game import (
    BimatrixGame,
    EquilibriumVerdict,
    GainReport,
    Profile,
    best_response_oracle,
    expected_payoff,
    find_dominant_strategy,
    find_pure_equilibria,
    mixed_equilibrium_2x2,
    pure_profile,
    pure_strategy,
    verify_equilibrium,
)
from .logs import AlignedLog, FrequencyTable, align, parse_frequency_table, to_distribution
from .shifting import (
    ShiftOutcome,
    ShiftPlan,
    apply_shift,
    eq16_gain_estimate,
    gain_gradient,
    max_admissible_epsilon,
    shift_direction,
    shift_loop,
)
