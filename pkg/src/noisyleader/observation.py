"""Best responses, commitments, and bounds under noisy action observation.

The leader commits to a mixed strategy; the follower sees the leader's
*realized* action only through a binary noisy channel, then best-responds
per observation.  All quantities are piecewise-linear in the commitment,
so every optimization below is exact candidate-point evaluation.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .game import (
    EPS,
    PURE_A1,
    PURE_A2,
    BinaryDist,
    GameClass,
    PayoffMatrix,
    classify,
    minmax_pure,
    nash,
    u_hat,
)

__all__ = [
    "AnyMixed",
    "BRComponent",
    "BoundChain",
    "Channel",
    "Equilibrium",
    "FollowerPolicy",
    "Relevance",
    "RelevanceReport",
    "ZeroProbabilityObservation",
    "best_response",
    "best_response_component",
    "component_matrix",
    "indifference_point",
    "leader_equilibrium",
    "observation_relevance",
    "payoff_bounds",
    "payoff_v",
    "posterior",
    "s_value",
    "v_hat",
    "v_hat_policy",
]

_SUM_TOL = 1e-12


class ZeroProbabilityObservation(Exception):
    """Raised when conditioning on an observation that cannot occur."""


class BRComponent(enum.Enum):
    """The follower's best-response set after one fixed observation."""

    PURE_A1 = "PureA1"
    PURE_A2 = "PureA2"
    ANY_MIXED = "AnyMixed"


AnyMixed = BRComponent.ANY_MIXED  # convenience alias used by callers


@dataclass(frozen=True, slots=True)
class Channel:
    """Observation likelihoods: entry (i, j) = P(observe a_i | leader played a_j).

    Columns are conditional distributions, so each column sums to one; the
    difference w11 - w12 acts as the channel's determinant and measures how
    informative the observation is (0 uninformative, +/-1 noiseless).
    """

    w11: float
    w12: float
    w21: float
    w22: float

    def __post_init__(self) -> None:
        for name in ("w11", "w12", "w21", "w22"):
            value = getattr(self, name)
            if not math.isfinite(value) or not (0.0 <= value <= 1.0):
                raise ValueError(f"{name} must lie in [0, 1], got {value!r}")
        for j, total in ((1, self.w11 + self.w21), (2, self.w12 + self.w22)):
            if abs(total - 1.0) > _SUM_TOL:
                raise ValueError(
                    f"column {j} must sum to 1 within {_SUM_TOL}, got {total!r}"
                    " (the matrix must be column-stochastic)"
                )

    @classmethod
    def from_rows(cls, rows) -> "Channel":
        (a, b), (c, d) = rows
        return cls(float(a), float(b), float(c), float(d))

    def as_rows(self) -> tuple[tuple[float, float], tuple[float, float]]:
        return ((self.w11, self.w12), (self.w21, self.w22))

    def prob(self, i: int, j: int) -> float:
        """P(observe a_i | played a_j), 1-based indices."""
        return self.as_rows()[i - 1][j - 1]

    @property
    def det(self) -> float:
        return self.w11 - self.w12


@dataclass(frozen=True, slots=True)
class FollowerPolicy:
    """One mixed action per possible observation."""

    on_obs_a1: BinaryDist
    on_obs_a2: BinaryDist

    @classmethod
    def pure(cls, action_on_a1: int, action_on_a2: int) -> "FollowerPolicy":
        lookup = {1: PURE_A1, 2: PURE_A2}
        return cls(lookup[action_on_a1], lookup[action_on_a2])

    def component(self, obs: int) -> BinaryDist:
        return self.on_obs_a1 if obs == 1 else self.on_obs_a2


@dataclass(frozen=True, slots=True)
class Equilibrium:
    """Leader's optimal commitment with one supporting follower policy."""

    leader_commitment: BinaryDist
    follower_policy: FollowerPolicy
    value: float
    indifferent_observation: int | None


@dataclass(frozen=True, slots=True)
class BoundChain:
    """ne <= u_hat <= v_hat <= upper, evaluated at one commitment."""

    ne_value: float
    u_hat_value: float
    v_hat_value: float
    upper_bound: float


class Relevance(enum.Enum):
    IRRELEVANT = "Irrelevant"
    BENEFICIAL = "Beneficial"


@dataclass(frozen=True, slots=True)
class RelevanceReport:
    relevance: Relevance
    reasons: tuple[str, ...]
    fully_revealing: bool
    ne_value: float
    equilibrium_value: float


def component_matrix(u: PayoffMatrix, w: Channel, i: int) -> PayoffMatrix:
    """Payoff contribution matrix for observation a_i: column j of u scaled by w(i,j)."""
    wi1, wi2 = w.prob(i, 1), w.prob(i, 2)
    return PayoffMatrix(u.u11 * wi1, u.u12 * wi2, u.u21 * wi1, u.u22 * wi2)


def s_value(u: PayoffMatrix, w: Channel, p: BinaryDist, i: int) -> float:
    """Advantage of the follower's a1 over a2 after observing a_i.

    Positive means a1 strictly better, negative a2, zero indifferent; the
    quantity is the payoff difference scaled by the observation probability.
    """
    return (u.u11 - u.u21) * p.p1 * w.prob(i, 1) + (u.u12 - u.u22) * p.p2 * w.prob(i, 2)


def best_response_component(u: PayoffMatrix, w: Channel, p: BinaryDist, i: int) -> BRComponent:
    s = s_value(u, w, p, i)
    if s > EPS:
        return BRComponent.PURE_A1
    if s < -EPS:
        return BRComponent.PURE_A2
    return BRComponent.ANY_MIXED


def best_response(u: PayoffMatrix, w: Channel, p: BinaryDist) -> tuple[BRComponent, BRComponent]:
    """Per-observation best responses; the full BR set is their product."""
    return (
        best_response_component(u, w, p, 1),
        best_response_component(u, w, p, 2),
    )


def posterior(w: Channel, p: BinaryDist, obs: int) -> BinaryDist:
    """Bayes posterior over the leader's action given the observation."""
    num1 = w.prob(obs, 1) * p.p1
    num2 = w.prob(obs, 2) * p.p2
    denom = num1 + num2
    if denom == 0.0:
        raise ZeroProbabilityObservation(
            f"observation a{obs} has probability 0 under this commitment"
        )
    return BinaryDist(num1 / denom, num2 / denom)


def payoff_v(u: PayoffMatrix, w: Channel, policy: FollowerPolicy, p: BinaryDist) -> float:
    """Expected payoff when the follower plays ``policy`` against commitment ``p``."""
    total = 0.0
    for i in (1, 2):
        q = policy.component(i)
        wi1, wi2 = w.prob(i, 1), w.prob(i, 2)
        row1 = u.u11 * p.p1 * wi1 + u.u12 * p.p2 * wi2
        row2 = u.u21 * p.p1 * wi1 + u.u22 * p.p2 * wi2
        total += q.p1 * row1 + q.p2 * row2
    return total


def indifference_point(u: PayoffMatrix, w: Channel, i: int) -> float | None:
    """Commitment probability of a1 that makes observation a_i uninformative.

    Absent when the follower's preference after a_i does not depend on the
    commitment at all (zero denominator).  May fall outside [0, 1] for
    degenerate games; such points are infeasible and callers drop them.
    """
    alpha = (u.u11 - u.u21) * w.prob(i, 1)
    beta = (u.u22 - u.u12) * w.prob(i, 2)
    denom = alpha + beta
    if denom == 0.0:
        return None
    return beta / denom


def v_hat(u: PayoffMatrix, w: Channel, p: BinaryDist) -> float:
    """Leader's cost when the follower best-responds to each observation."""
    total = 0.0
    for i in (1, 2):
        wi1, wi2 = w.prob(i, 1), w.prob(i, 2)
        row1 = u.u11 * p.p1 * wi1 + u.u12 * p.p2 * wi2
        row2 = u.u21 * p.p1 * wi1 + u.u22 * p.p2 * wi2
        total += max(row1, row2)
    return total


def v_hat_policy(u: PayoffMatrix, w: Channel, p: BinaryDist) -> FollowerPolicy:
    """The pure policy attaining v_hat, tie-broken toward a1 per observation."""
    actions = []
    for i in (1, 2):
        wi1, wi2 = w.prob(i, 1), w.prob(i, 2)
        row1 = u.u11 * p.p1 * wi1 + u.u12 * p.p2 * wi2
        row2 = u.u21 * p.p1 * wi1 + u.u22 * p.p2 * wi2
        actions.append(1 if row1 >= row2 else 2)
    return FollowerPolicy.pure(actions[0], actions[1])


def _indifferent_observation(u: PayoffMatrix, w: Channel, p: BinaryDist) -> int | None:
    for i in (1, 2):
        if abs(s_value(u, w, p, i)) <= EPS:
            return i
    return None


def leader_equilibrium(u: PayoffMatrix, w: Channel) -> Equilibrium:
    """Leader's optimal commitment against a per-observation best responder.

    v_hat is continuous piecewise-linear in the commitment with breakpoints
    only at the indifference points, so the minimum is found by exact
    evaluation on {0, 1} plus the feasible indifference points; ties go to
    the smallest commitment probability of a1.  Degenerate games bottom out
    at a pure commitment whose value is exactly the pure min-max.
    """
    if classify(u) is GameClass.DEGENERATE_NE:
        col1, col2 = max(u.u11, u.u21), max(u.u12, u.u22)
        commit = PURE_A2 if col2 <= col1 else PURE_A1
        return Equilibrium(
            leader_commitment=commit,
            follower_policy=v_hat_policy(u, w, commit),
            value=minmax_pure(u),
            indifferent_observation=_indifferent_observation(u, w, commit),
        )

    candidates = {0.0, 1.0}
    for i in (1, 2):
        point = indifference_point(u, w, i)
        if point is not None and 0.0 <= point <= 1.0:
            candidates.add(point)
    best_p = min(sorted(candidates), key=lambda x: (v_hat(u, w, BinaryDist.from_p1(x)), x))
    commit = BinaryDist.from_p1(best_p)
    return Equilibrium(
        leader_commitment=commit,
        follower_policy=v_hat_policy(u, w, commit),
        value=v_hat(u, w, commit),
        indifferent_observation=_indifferent_observation(u, w, commit),
    )


def payoff_bounds(u: PayoffMatrix, w: Channel, p: BinaryDist) -> BoundChain:
    """The value chain at one commitment: NE, known-commitment, noisy, pure-reveal."""
    upper = p.p1 * max(u.u11, u.u21) + p.p2 * max(u.u12, u.u22)
    return BoundChain(
        ne_value=nash(u).value,
        u_hat_value=u_hat(u, p),
        v_hat_value=v_hat(u, w, p),
        upper_bound=upper,
    )


def observation_relevance(u: PayoffMatrix, w: Channel) -> RelevanceReport:
    """Does observing through this channel change the game's outcome at all?"""
    game_class = classify(u)
    ne_value = nash(u).value
    eq_value = leader_equilibrium(u, w).value
    fully_revealing = abs(abs(w.det) - 1.0) <= EPS

    reasons: list[str] = []
    if game_class is GameClass.DEGENERATE_NE:
        reasons.append("degenerate_game")
    if abs(w.det) <= EPS:
        reasons.append("uninformative_channel")
    if reasons:
        relevance = Relevance.IRRELEVANT
    else:
        relevance = Relevance.BENEFICIAL
        reasons.append("mixed_game_with_informative_channel")
    if fully_revealing:
        reasons.append("fully_revealing_channel")

    return RelevanceReport(
        relevance=relevance,
        reasons=tuple(reasons),
        fully_revealing=fully_revealing,
        ne_value=ne_value,
        equilibrium_value=eq_value,
    )
