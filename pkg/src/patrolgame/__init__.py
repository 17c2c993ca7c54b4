"""Exact solvers for periodic patrolling games on graphs.

A patroller walks a graph with a fixed period; an attacker picks a node
and a short time window.  This package computes exact rational game
values, optimal mixed strategies for both sides, and the closed forms
for line graphs, and certifies every construction against independent
linear-programming and best-response oracles.
"""

from .errors import (
    CapExceededError,
    InvalidGraphError,
    InvalidStrategyError,
    InvalidWalkError,
    NoClosedFormError,
    NoCoveringSetError,
    PatrolError,
    UnsupportedParametersError,
)
from .graphs import (
    FractionalWeighting,
    Graph,
    bipartition,
    covering_number,
    fractional_weightings,
    independence_number,
    line_graph,
)
from .line import (
    Decomposition,
    LineCase,
    OscillationSpec,
    biased_covering_strategy,
    boustrophedon_tour,
    case4_strategy,
    case5_strategy,
    casemap_csv,
    classify_case,
    curves_csv,
    decompose_bound,
    decomposed_case4_strategy,
    decomposition_gap,
    expand_oscillation,
    is_decomposable,
    limit_value,
    line_value,
    tour_with_end_oscillations,
    unbiased_covering_strategy,
)
from .lp import (
    GameSolution,
    LPResult,
    LPStatus,
    MatrixGame,
    solve_lp,
    solve_matrix_game,
)
from .model import (
    Attack,
    GameSpec,
    MixedStrategy,
    PeriodicWalk,
    ValueBounds,
    enumerate_attacks,
    independent_attack,
    interception_probability,
    intercepts,
    uniform_attack,
    value_bounds,
)
from .multi import (
    PatrolTeam,
    best_response_team,
    four_patroller_strategy,
    k_upper_bound,
    lift_strategy,
    solve_k_exact,
    team_guarantee,
    team_intercepts,
)
from .solver import (
    PatrolSolution,
    attacker_guarantee,
    best_response_walk,
    count_walks,
    enumerate_walks,
    patroller_guarantee,
    per_attack_interception,
    solve_column_generation,
    solve_exact,
)

__version__ = "0.1.0"
