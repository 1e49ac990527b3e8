"""Distorted commitments: set-valued payoffs, equilibrium existence, refinements.

The follower best-responds to a *distorted* view of the leader's commitment
while payoffs accrue at the true one, which makes the achieved payoff a
correspondence (an interval at the follower's indifference points) rather
than a function.  Everything is piecewise-affine between the pre-images of
the indifference points, so candidate-point evaluation is exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .game import EPS, BinaryDist, PayoffMatrix
from .observation import (
    BRComponent,
    Channel,
    FollowerPolicy,
    best_response,
    indifference_point,
    leader_equilibrium,
    payoff_v,
    s_value,
)

__all__ = [
    "DegenerateConfiguration",
    "Distortion",
    "InfeasibleEpsilon",
    "MismatchReport",
    "PayoffSet",
    "distort",
    "epsilon_commitment",
    "equilibrium_analysis",
    "inv_indifference",
    "mismatch_benefit",
    "omega",
    "v_tilde",
]

_SUM_TOL = 1e-12
_POINT_TOL = 1e-12  # interval width below which a payoff set counts as a single value


class DegenerateConfiguration(Exception):
    """Raised when a piecewise construction needs breakpoints that don't exist."""


class InfeasibleEpsilon(Exception):
    """Raised when no nearby commitment yields a unique best response."""


@dataclass(frozen=True, slots=True)
class Distortion:
    """Column-stochastic nonsingular map from true commitment to observed one."""

    t11: float
    t12: float
    t21: float
    t22: float

    def __post_init__(self) -> None:
        for name in ("t11", "t12", "t21", "t22"):
            value = getattr(self, name)
            if not math.isfinite(value) or not (0.0 <= value <= 1.0):
                raise ValueError(f"{name} must lie in [0, 1], got {value!r}")
        for j, total in ((1, self.t11 + self.t21), (2, self.t12 + self.t22)):
            if abs(total - 1.0) > _SUM_TOL:
                raise ValueError(
                    f"column {j} must sum to 1 within {_SUM_TOL}, got {total!r}"
                    " (the matrix must be column-stochastic)"
                )
        if abs(self.det) <= _SUM_TOL:
            raise ValueError(f"matrix must be nonsingular, |det| = {abs(self.det)!r}")

    @classmethod
    def from_rows(cls, rows) -> "Distortion":
        (a, b), (c, d) = rows
        return cls(float(a), float(b), float(c), float(d))

    @classmethod
    def identity(cls) -> "Distortion":
        return cls(1.0, 0.0, 0.0, 1.0)

    def as_rows(self) -> tuple[tuple[float, float], tuple[float, float]]:
        return ((self.t11, self.t12), (self.t21, self.t22))

    @property
    def det(self) -> float:
        return self.t11 - self.t12


@dataclass(frozen=True, slots=True)
class PayoffSet:
    """A closed interval of achievable payoffs; lo == hi is a single value."""

    lo: float
    hi: float

    def __post_init__(self) -> None:
        if not (self.lo <= self.hi):
            raise ValueError(f"interval requires lo <= hi, got [{self.lo!r}, {self.hi!r}]")

    @property
    def width(self) -> float:
        return self.hi - self.lo


@dataclass(frozen=True, slots=True)
class MismatchReport:
    """Existence analysis of the distorted-commitment game."""

    omega_infimum: float
    omega_argmin: BinaryDist
    vtilde_at_argmin: PayoffSet
    guaranteed_min: float
    equilibrium_exists: bool
    benefit_over_undistorted: float

    def __post_init__(self) -> None:
        if self.omega_infimum > self.guaranteed_min + EPS:
            raise ValueError(
                "lower envelope minimum cannot exceed upper envelope minimum: "
                f"{self.omega_infimum!r} > {self.guaranteed_min!r}"
            )


def distort(t: Distortion, p: BinaryDist) -> BinaryDist:
    """The commitment as the follower perceives it."""
    return BinaryDist(t.t11 * p.p1 + t.t12 * p.p2, t.t21 * p.p1 + t.t22 * p.p2)


def inv_indifference(u: PayoffMatrix, w: Channel, t: Distortion, i: int) -> float | None:
    """True-commitment probability whose distorted view sits at the indifference point.

    First coordinate of t^{-1} applied to the indifference point for
    observation a_i; absent when that point is absent, and possibly outside
    [0, 1] (infeasible as a commitment) otherwise.
    """
    point = indifference_point(u, w, i)
    if point is None:
        return None
    return (t.t22 * point - t.t12 * (1.0 - point)) / t.det


def _selections(component: BRComponent) -> tuple[BinaryDist, ...]:
    if component is BRComponent.PURE_A1:
        return (BinaryDist(1.0, 0.0),)
    if component is BRComponent.PURE_A2:
        return (BinaryDist(0.0, 1.0),)
    return (BinaryDist(1.0, 0.0), BinaryDist(0.0, 1.0))


def v_tilde(u: PayoffMatrix, w: Channel, t: Distortion, p: BinaryDist) -> PayoffSet:
    """Payoffs achievable at true commitment p under best responses to its distortion.

    The payoff is affine in each policy component, so interval endpoints are
    attained at pure selections; components with a strict best response
    contribute a single vertex.
    """
    view = distort(t, p)
    comp1, comp2 = best_response(u, w, view)
    values = [
        payoff_v(u, w, FollowerPolicy(q1, q2), p)
        for q1 in _selections(comp1)
        for q2 in _selections(comp2)
    ]
    return PayoffSet(min(values), max(values))


def _slope(u: PayoffMatrix, w: Channel, i: int) -> float:
    """Rate of change of the observation-a_i advantage in the viewed commitment."""
    return (u.u11 - u.u21) * w.prob(i, 1) + (u.u22 - u.u12) * w.prob(i, 2)


def omega(u: PayoffMatrix, w: Channel, t: Distortion, p: BinaryDist) -> float:
    """The single-valued piecewise selection of the payoff correspondence.

    Outside the closed interval spanned by the two breakpoint pre-images,
    both best responses are strict and omega is the corresponding pure-branch
    value; on the closed interval it is the affine extension of the unique
    best response from the open region between them, which assigns each
    observation the action it takes on its own side of its breakpoint.
    """
    pre: dict[int, float] = {}
    for i in (1, 2):
        x = inv_indifference(u, w, t, i)
        if x is None:
            raise DegenerateConfiguration(
                f"observation a{i} has no indifference point; omega is undefined"
            )
        pre[i] = x
    lo_obs, hi_obs = (1, 2) if pre[1] <= pre[2] else (2, 1)
    lo, hi = pre[lo_obs], pre[hi_obs]

    if p.p1 < lo or p.p1 > hi:
        view = distort(t, p)
        actions = tuple(1 if s_value(u, w, view, i) >= 0.0 else 2 for i in (1, 2))
        return payoff_v(u, w, FollowerPolicy.pure(*actions), p)

    actions_by_obs: dict[int, int] = {}
    for i in (1, 2):
        increasing = _slope(u, w, i) * t.det > 0.0
        if i == lo_obs:
            # middle region lies just above this observation's breakpoint
            actions_by_obs[i] = 1 if increasing else 2
        else:
            # ... and just below the other one
            actions_by_obs[i] = 2 if increasing else 1
    policy = FollowerPolicy.pure(actions_by_obs[1], actions_by_obs[2])
    return payoff_v(u, w, policy, p)


def _feasible_pre_images(u: PayoffMatrix, w: Channel, t: Distortion) -> list[float]:
    points = []
    for i in (1, 2):
        x = inv_indifference(u, w, t, i)
        if x is not None and 0.0 <= x <= 1.0:
            points.append(x)
    return points


def _candidate_points(u: PayoffMatrix, w: Channel, t: Distortion) -> list[float]:
    """Breakpoints, corners, and open-region midpoints, sorted ascending."""
    anchors = sorted({0.0, 1.0, *_feasible_pre_images(u, w, t)})
    midpoints = [
        (a + b) / 2.0 for a, b in zip(anchors, anchors[1:]) if b > a
    ]
    return sorted({*anchors, *midpoints})


def equilibrium_analysis(u: PayoffMatrix, w: Channel, t: Distortion) -> MismatchReport:
    """Envelope analysis over the candidate set.

    The lower envelope's infimum is always attained at a candidate point
    (every branch is affine and breakpoint intervals contain the adjacent
    one-sided limits); an equilibrium exists exactly when some candidate
    guarantees that infimum, i.e. its whole payoff interval sits at it.
    """
    best_lo = math.inf
    best_p = 0.0
    best_set: PayoffSet | None = None
    guaranteed = math.inf
    for x in _candidate_points(u, w, t):
        payoff_set = v_tilde(u, w, t, BinaryDist.from_p1(x))
        if payoff_set.lo < best_lo:
            best_lo, best_p, best_set = payoff_set.lo, x, payoff_set
        guaranteed = min(guaranteed, payoff_set.hi)
    assert best_set is not None  # candidate set is never empty
    undistorted = leader_equilibrium(u, w).value
    return MismatchReport(
        omega_infimum=best_lo,
        omega_argmin=BinaryDist.from_p1(best_p),
        vtilde_at_argmin=best_set,
        guaranteed_min=guaranteed,
        equilibrium_exists=guaranteed <= best_lo + EPS,
        benefit_over_undistorted=max(0.0, undistorted - best_lo),
    )


def mismatch_benefit(
    u: PayoffMatrix, w: Channel, t: Distortion
) -> tuple[BinaryDist, float] | None:
    """Search for a commitment that strictly beats the undistorted optimum.

    Returns the best (lowest pessimistic payoff) candidate commitment whose
    lower selection improves on the undistorted equilibrium value by more
    than the tolerance, or None when no candidate does.
    """
    threshold = leader_equilibrium(u, w).value - EPS
    best: tuple[float, float] | None = None
    for x in _candidate_points(u, w, t):
        lo = v_tilde(u, w, t, BinaryDist.from_p1(x)).lo
        if lo < threshold and (best is None or lo < best[1]):
            best = (x, lo)
    if best is None:
        return None
    return (BinaryDist.from_p1(best[0]), best[1])


@dataclass(frozen=True, slots=True)
class _StepOption:
    p1: float
    policy: FollowerPolicy
    value: float


def _pure_policy_in(
    u: PayoffMatrix, w: Channel, t: Distortion, a: float, b: float
) -> FollowerPolicy | None:
    """The unique pure best-response policy on the open region (a, b), if any."""
    probe = BinaryDist.from_p1((a + b) / 2.0)
    comp1, comp2 = best_response(u, w, distort(t, probe))
    if BRComponent.ANY_MIXED in (comp1, comp2):
        return None
    return FollowerPolicy.pure(
        1 if comp1 is BRComponent.PURE_A1 else 2,
        1 if comp2 is BRComponent.PURE_A1 else 2,
    )


def _step_option(
    u: PayoffMatrix,
    w: Channel,
    t: Distortion,
    p_star: float,
    neighbor: float,
    target_lo: float,
    eps: float,
    direction: int,
) -> _StepOption | None:
    width = abs(neighbor - p_star)
    policy = _pure_policy_in(u, w, t, min(p_star, neighbor), max(p_star, neighbor))
    if policy is None:
        return None
    limit = payoff_v(u, w, policy, BinaryDist.from_p1(p_star))
    if limit > target_lo + _POINT_TOL:
        return None  # this side's branch does not continue the minimal selection
    # payoff is affine in the commitment; slope taken along the step direction
    slope = payoff_v(u, w, policy, BinaryDist(1.0, 0.0)) - payoff_v(
        u, w, policy, BinaryDist(0.0, 1.0)
    )
    directional = slope * direction
    if directional <= 0.0:
        delta = width / 2.0
    else:
        delta = min(eps / directional, width / 2.0)
    p_eps = p_star + direction * delta
    return _StepOption(
        p1=p_eps,
        policy=policy,
        value=payoff_v(u, w, policy, BinaryDist.from_p1(p_eps)),
    )


def epsilon_commitment(
    u: PayoffMatrix, w: Channel, t: Distortion, eps: float
) -> tuple[BinaryDist, FollowerPolicy, float]:
    """A near-optimal commitment with a unique (hence predictable) best response.

    Starts at the lower-envelope minimizer; if the best response there is
    already unique, that point is returned as-is.  Otherwise steps into the
    adjacent open region that continues the minimal selection, with the step
    size chosen from the branch slope so the value stays within eps of the
    infimum.  Falls back to the minimizer itself when its payoff interval is
    a single point (the value is predictable regardless of selection).
    """
    if not (eps > 0.0):
        raise ValueError(f"eps must be positive, got {eps!r}")
    report = equilibrium_analysis(u, w, t)
    p_star = report.omega_argmin.p1
    interval = report.vtilde_at_argmin
    comps = best_response(u, w, distort(t, report.omega_argmin))
    if BRComponent.ANY_MIXED not in comps:
        policy = FollowerPolicy.pure(
            1 if comps[0] is BRComponent.PURE_A1 else 2,
            1 if comps[1] is BRComponent.PURE_A1 else 2,
        )
        return (report.omega_argmin, policy, interval.lo)

    anchors = sorted({0.0, 1.0, *_feasible_pre_images(u, w, t), p_star})
    idx = anchors.index(p_star)
    options: list[_StepOption] = []
    if idx + 1 < len(anchors) and anchors[idx + 1] > p_star:
        option = _step_option(u, w, t, p_star, anchors[idx + 1], interval.lo, eps, +1)
        if option is not None:
            options.append(option)
    if idx > 0 and anchors[idx - 1] < p_star:
        option = _step_option(u, w, t, p_star, anchors[idx - 1], interval.lo, eps, -1)
        if option is not None:
            options.append(option)
    if options:
        best = min(options, key=lambda o: (o.value, o.p1))
        return (BinaryDist.from_p1(best.p1), best.policy, best.value)

    if interval.width <= _POINT_TOL:
        # no strict-response region nearby, but the value is already pinned;
        # prefer an interior commitment when one ties with the minimizer
        chosen = p_star
        if p_star in (0.0, 1.0):
            for x in _candidate_points(u, w, t):
                if 0.0 < x < 1.0:
                    tied = v_tilde(u, w, t, BinaryDist.from_p1(x))
                    if tied.lo <= interval.lo + _POINT_TOL and tied.width <= _POINT_TOL:
                        chosen = x
                        break
        commit = BinaryDist.from_p1(chosen)
        comp1, comp2 = best_response(u, w, distort(t, commit))
        policy = FollowerPolicy.pure(
            2 if comp1 is BRComponent.PURE_A2 else 1,
            2 if comp2 is BRComponent.PURE_A2 else 1,
        )
        return (commit, policy, v_tilde(u, w, t, commit).lo)

    raise InfeasibleEpsilon(
        "no adjacent commitment region yields a unique best response"
        " continuing the minimal selection"
    )
