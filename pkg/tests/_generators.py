"""Random-instance generators shared across the test modules.

All draws go through a caller-supplied numpy Generator so failures are
reproducible from the seed printed by the failing test.
"""

from __future__ import annotations

from noisyleader import (
    BinaryDist,
    Channel,
    Distortion,
    GameClass,
    PayoffMatrix,
    classify,
    indifference_point,
    u_hat,
)


def random_payoff(rng, scale: float = 10.0) -> PayoffMatrix:
    a, b, c, d = (float(x) for x in rng.uniform(-scale, scale, size=4))
    return PayoffMatrix(a, b, c, d)


def random_mixed_payoff(rng, scale: float = 10.0, margin: float = 1e-6) -> PayoffMatrix:
    """Rejection-sample a game with a unique interior mixed equilibrium,
    keeping a margin on the strict-inequality products so downstream
    tolerance-based checks are not sitting on the classification boundary."""
    while True:
        u = random_payoff(rng, scale)
        r = (u.u11 - u.u12) * (u.u22 - u.u21)
        c = (u.u11 - u.u21) * (u.u22 - u.u12)
        if r > margin and c > margin:
            return u


def random_degenerate_payoff(rng, scale: float = 10.0) -> PayoffMatrix:
    while True:
        u = random_payoff(rng, scale)
        if classify(u) is GameClass.DEGENERATE_NE:
            return u


def random_channel(rng) -> Channel:
    w11 = float(rng.uniform(0.0, 1.0))
    w12 = float(rng.uniform(0.0, 1.0))
    return Channel(w11, w12, 1.0 - w11, 1.0 - w12)


def random_informative_channel(rng, min_det: float = 0.05) -> Channel:
    while True:
        w = random_channel(rng)
        if abs(w.det) > min_det:
            return w


def random_uninformative_channel(rng) -> Channel:
    """det exactly 0: both columns identical."""
    w11 = float(rng.uniform(0.0, 1.0))
    return Channel(w11, w11, 1.0 - w11, 1.0 - w11)


def random_revealing_channel(rng) -> Channel:
    """|det| exactly 1: identity or the observation-swapping channel."""
    if rng.uniform() < 0.5:
        return Channel(1.0, 0.0, 0.0, 1.0)
    return Channel(0.0, 1.0, 1.0, 0.0)


def random_dist(rng) -> BinaryDist:
    return BinaryDist.from_p1(float(rng.uniform(0.0, 1.0)))


def random_distortion(rng, min_det: float = 0.05) -> Distortion:
    while True:
        t11 = float(rng.uniform(0.0, 1.0))
        t12 = float(rng.uniform(0.0, 1.0))
        if abs(t11 - t12) > min_det:
            return Distortion(t11, t12, 1.0 - t11, 1.0 - t12)


def random_distortion_signed(rng, sign: int, min_det: float = 0.05) -> Distortion:
    while True:
        t = random_distortion(rng, min_det)
        if sign * t.det > 0:
            return t


def random_channel_signed(rng, sign: int, min_det: float = 0.05) -> Channel:
    while True:
        w = random_informative_channel(rng, min_det)
        if sign * w.det > 0:
            return w


def random_benefit_instance(rng):
    """An instance satisfying the strict-benefit hypotheses: unique mixed
    equilibrium, distinct unobserved-payoff levels at the two indifference
    points, and a distortion determinant bounded away from both 0 and 1."""
    while True:
        u = random_mixed_payoff(rng, margin=1e-3)
        w = random_informative_channel(rng, min_det=0.05)
        p1 = indifference_point(u, w, 1)
        p2 = indifference_point(u, w, 2)
        if p1 is None or p2 is None:
            continue
        if not (0.0 <= p1 <= 1.0 and 0.0 <= p2 <= 1.0):
            continue
        gap = abs(u_hat(u, BinaryDist.from_p1(p1)) - u_hat(u, BinaryDist.from_p1(p2)))
        if gap < 1e-3:
            continue
        t = random_distortion(rng, min_det=0.05)
        if abs(t.det - 1.0) < 0.05:
            continue
        return u, w, t
