"""Solvers for 2x2 zero-sum commitment games with noisy observation.

The leader commits to a mixed strategy over two actions; the follower sees
the realized action through a binary noisy channel (and possibly a distorted
view of the commitment itself) before responding.  The package computes Nash
equilibria, the leader's optimal commitment under observation, payoff bounds,
mismatch analyses, and validates everything with a seeded Monte Carlo
simulator.
"""

from .game import (
    PURE_A1,
    PURE_A2,
    BinaryDist,
    GameClass,
    NESolution,
    PayoffMatrix,
    classify,
    expected_payoff,
    minmax_pure,
    nash,
    u_hat,
)
from .mismatch import (
    DegenerateConfiguration,
    Distortion,
    InfeasibleEpsilon,
    MismatchReport,
    PayoffSet,
    distort,
    epsilon_commitment,
    equilibrium_analysis,
    inv_indifference,
    mismatch_benefit,
    omega,
    v_tilde,
)
from .montecarlo import (
    SimConfig,
    SimResult,
    TheoryIntervalAmbiguous,
    ValidationReport,
    json_record,
    simulate,
    validate_against_theory,
)
from .observation import (
    BoundChain,
    BRComponent,
    Channel,
    Equilibrium,
    FollowerPolicy,
    Relevance,
    RelevanceReport,
    ZeroProbabilityObservation,
    best_response,
    best_response_component,
    component_matrix,
    indifference_point,
    leader_equilibrium,
    observation_relevance,
    payoff_bounds,
    payoff_v,
    posterior,
    s_value,
    v_hat,
    v_hat_policy,
)

__all__ = [
    "PURE_A1",
    "PURE_A2",
    "BRComponent",
    "BinaryDist",
    "BoundChain",
    "Channel",
    "DegenerateConfiguration",
    "Distortion",
    "Equilibrium",
    "FollowerPolicy",
    "GameClass",
    "InfeasibleEpsilon",
    "MismatchReport",
    "NESolution",
    "PayoffMatrix",
    "PayoffSet",
    "Relevance",
    "RelevanceReport",
    "SimConfig",
    "SimResult",
    "TheoryIntervalAmbiguous",
    "ValidationReport",
    "ZeroProbabilityObservation",
    "best_response",
    "best_response_component",
    "classify",
    "component_matrix",
    "distort",
    "epsilon_commitment",
    "equilibrium_analysis",
    "expected_payoff",
    "indifference_point",
    "inv_indifference",
    "json_record",
    "leader_equilibrium",
    "minmax_pure",
    "mismatch_benefit",
    "nash",
    "observation_relevance",
    "omega",
    "payoff_bounds",
    "payoff_v",
    "posterior",
    "s_value",
    "simulate",
    "u_hat",
    "v_hat",
    "v_hat_policy",
    "v_tilde",
    "validate_against_theory",
]

__version__ = "0.1.0"
