"""Seeded Monte Carlo play of the repeated observation game.

Sampling uses the counter-based Philox (4x64) generator so runs are exactly
reproducible across platforms and may be re-derived by any implementation:
the stream for sampling site ``site`` under ``seed`` has Philox key
``(4*seed + site) mod 2**128``, with sites 0 = leader action, 1 = channel
observation, 2 = follower action, and round r consumes the r-th uniform of
each stream.  A round plays leader -> channel -> follower and pays the
matrix entry at (follower action, leader action).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .game import BinaryDist, PayoffMatrix
from .mismatch import Distortion, distort
from .observation import (
    BRComponent,
    Channel,
    FollowerPolicy,
    best_response,
    payoff_v,
    v_hat_policy,
)

__all__ = [
    "SITE_FOLLOWER",
    "SITE_LEADER",
    "SITE_OBSERVATION",
    "SimConfig",
    "SimResult",
    "TheoryIntervalAmbiguous",
    "ValidationReport",
    "json_record",
    "simulate",
    "validate_against_theory",
]

SITE_LEADER = 0
SITE_OBSERVATION = 1
SITE_FOLLOWER = 2


class TheoryIntervalAmbiguous(Exception):
    """The analytic payoff is an interval; validation needs a caller-fixed policy."""


@dataclass(frozen=True, slots=True)
class SimConfig:
    """One simulation setup.

    ``distortion`` is carried for provenance only: it never enters the
    sampling (realized play does not depend on how the commitment was
    perceived), but when present the ``follower_policy`` is expected to have
    been derived from the distorted commitment by the caller.
    """

    rounds: int
    seed: int
    leader_commitment: BinaryDist
    follower_policy: FollowerPolicy
    channel: Channel
    distortion: Distortion | None = None

    def __post_init__(self) -> None:
        if not isinstance(self.rounds, int) or isinstance(self.rounds, bool):
            raise ValueError(f"rounds must be an integer, got {self.rounds!r}")
        if self.rounds < 1:
            raise ValueError(f"rounds must be >= 1, got {self.rounds!r}")
        if not isinstance(self.seed, int) or isinstance(self.seed, bool):
            raise ValueError(f"seed must be an integer, got {self.seed!r}")


Counts = tuple[tuple[tuple[int, int], tuple[int, int]], tuple[tuple[int, int], tuple[int, int]]]


@dataclass(frozen=True, slots=True)
class SimResult:
    """Aggregated outcome; action_counts axes are (leader, observation, follower)."""

    mean_payoff: float
    std_error: float
    rounds: int
    action_counts: Counts

    def __post_init__(self) -> None:
        total = sum(c for plane in self.action_counts for row in plane for c in row)
        if total != self.rounds:
            raise ValueError(f"action_counts sums to {total}, expected {self.rounds}")


def _site_uniforms(seed: int, site: int, n: int) -> np.ndarray:
    key = (4 * seed + site) % (1 << 128)
    return np.random.Generator(np.random.Philox(key=key)).random(n)


def simulate(u: PayoffMatrix, cfg: SimConfig) -> SimResult:
    """Play ``cfg.rounds`` independent rounds; bit-identical for equal configs.

    The mean and standard error are computed exactly from the integer counts
    of the eight (leader, observation, follower) cells, so accumulation order
    cannot perturb them; a run visiting cells with a single payoff value
    reports that value exactly with zero error.
    """
    n = cfg.rounds
    w = cfg.channel
    policy = cfg.follower_policy

    leader_a1 = _site_uniforms(cfg.seed, SITE_LEADER, n) < cfg.leader_commitment.p1
    obs_a1 = _site_uniforms(cfg.seed, SITE_OBSERVATION, n) < np.where(
        leader_a1, w.w11, w.w12
    )
    follower_a1 = _site_uniforms(cfg.seed, SITE_FOLLOWER, n) < np.where(
        obs_a1, policy.on_obs_a1.p1, policy.on_obs_a2.p1
    )

    code = (
        np.where(leader_a1, 0, 4) + np.where(obs_a1, 0, 2) + np.where(follower_a1, 0, 1)
    )
    counts = np.bincount(code, minlength=8).reshape(2, 2, 2)

    rows = u.as_rows()
    occupied = [
        (int(counts[leader, obs, follower]), rows[follower][leader])
        for leader in (0, 1)
        for obs in (0, 1)
        for follower in (0, 1)
        if counts[leader, obs, follower]
    ]
    distinct = {value for _, value in occupied}
    if len(distinct) == 1:
        mean = float(distinct.pop())
        std_error = 0.0
    else:
        mean = math.fsum(c * value for c, value in occupied) / n
        variance = math.fsum(c * (value - mean) ** 2 for c, value in occupied) / (n - 1)
        std_error = math.sqrt(variance / n)

    action_counts = tuple(
        tuple(tuple(int(counts[leader, obs, follower]) for follower in (0, 1)) for obs in (0, 1))
        for leader in (0, 1)
    )
    return SimResult(mean, std_error, n, action_counts)


@dataclass(frozen=True, slots=True)
class ValidationReport:
    passed: bool
    theory_value: float
    deviation: float
    tolerance: float
    result: SimResult


def validate_against_theory(
    u: PayoffMatrix,
    w: Channel,
    p: BinaryDist,
    rounds: int,
    seed: int,
    *,
    policy: FollowerPolicy | None = None,
    t: Distortion | None = None,
) -> ValidationReport:
    """Simulate and compare the empirical mean against the analytic payoff.

    With no explicit policy the follower's play is derived from the (possibly
    distorted) commitment; under a distortion that derivation must be unique,
    otherwise the analytic payoff is a genuine interval and the comparison is
    refused.  The acceptance band is five standard errors plus a
    machine-precision allowance so exact zero-variance runs compare equal
    despite floating-point evaluation-order differences.
    """
    if policy is None:
        if t is not None:
            comps = best_response(u, w, distort(t, p))
            if BRComponent.ANY_MIXED in comps:
                raise TheoryIntervalAmbiguous(
                    "best response to the distorted commitment is not unique;"
                    " pass an explicit follower policy to validate"
                )
            policy = FollowerPolicy.pure(
                1 if comps[0] is BRComponent.PURE_A1 else 2,
                1 if comps[1] is BRComponent.PURE_A1 else 2,
            )
        else:
            policy = v_hat_policy(u, w, p)
    theory = payoff_v(u, w, policy, p)

    result = simulate(
        u,
        SimConfig(
            rounds=rounds,
            seed=seed,
            leader_commitment=p,
            follower_policy=policy,
            channel=w,
            distortion=t,
        ),
    )
    # Plain Python scalars regardless of the caller's numeric types: the
    # report is JSON-facing and declares float/bool fields.
    theory = float(theory)
    deviation = abs(result.mean_payoff - theory)
    tolerance = 5.0 * result.std_error + 1e-12 * max(1.0, abs(theory))
    return ValidationReport(
        passed=bool(deviation <= tolerance),
        theory_value=theory,
        deviation=deviation,
        tolerance=tolerance,
        result=result,
    )


def json_record(result: SimResult, seed: int) -> dict:
    """The documented JSON serialization of a simulation report."""
    return {
        "mean": result.mean_payoff,
        "std_error": result.std_error,
        "rounds": result.rounds,
        "seed": seed,
        "counts": [[list(row) for row in plane] for plane in result.action_counts],
    }
