"""Closed forms for 2x2 zero-sum games with a committed (column) player.

The row player ("follower") receives the matrix entry and maximizes; the
column player ("leader") pays it and minimizes.  Everything here is exact
arithmetic on the four matrix entries -- no iterative solving.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

__all__ = [
    "EPS",
    "BinaryDist",
    "GameClass",
    "NESolution",
    "PayoffMatrix",
    "classify",
    "expected_payoff",
    "minmax_pure",
    "nash",
    "u_hat",
]

EPS = 1e-9
"""Sign-test tolerance: payoff differences within +/-EPS count as indifference."""

_SUM_TOL = 1e-12  # tolerance for "probabilities sum to one" style invariants


class GameClass(enum.Enum):
    """Equilibrium structure of a 2x2 zero-sum game."""

    UNIQUE_MIXED_NE = "UniqueMixedNE"
    DEGENERATE_NE = "DegenerateNE"


@dataclass(frozen=True, slots=True)
class PayoffMatrix:
    """Payoff u[i][j] to the row player when rows play a_i and columns a_j."""

    u11: float
    u12: float
    u21: float
    u22: float

    def __post_init__(self) -> None:
        for name in ("u11", "u12", "u21", "u22"):
            value = getattr(self, name)
            if not isinstance(value, (int, float)) or isinstance(value, bool):
                raise ValueError(f"{name} must be a real number, got {value!r}")
            if not math.isfinite(value):
                raise ValueError(f"{name} must be finite, got {value!r}")

    @classmethod
    def from_rows(cls, rows) -> "PayoffMatrix":
        """Build from a 2x2 row-major nested sequence."""
        (a, b), (c, d) = rows
        return cls(float(a), float(b), float(c), float(d))

    def as_rows(self) -> tuple[tuple[float, float], tuple[float, float]]:
        return ((self.u11, self.u12), (self.u21, self.u22))

    def entry(self, i: int, j: int) -> float:
        """u_{i,j} with 1-based action indices."""
        return self.as_rows()[i - 1][j - 1]

    @property
    def min_entry(self) -> float:
        return min(self.u11, self.u12, self.u21, self.u22)

    @property
    def max_entry(self) -> float:
        return max(self.u11, self.u12, self.u21, self.u22)


@dataclass(frozen=True, slots=True)
class BinaryDist:
    """A probability distribution over two actions (a1, a2)."""

    p1: float
    p2: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.p1) and math.isfinite(self.p2)):
            raise ValueError(f"probabilities must be finite, got ({self.p1!r}, {self.p2!r})")
        if self.p1 < 0 or self.p2 < 0:
            raise ValueError(f"probabilities must be non-negative, got ({self.p1!r}, {self.p2!r})")
        if abs(self.p1 + self.p2 - 1.0) > _SUM_TOL:
            raise ValueError(
                f"probabilities must sum to 1 within {_SUM_TOL}, got {self.p1 + self.p2!r}"
            )

    @classmethod
    def from_p1(cls, p1: float) -> "BinaryDist":
        return cls(float(p1), 1.0 - float(p1))

    def prob(self, i: int) -> float:
        """Probability of action a_i (1-based)."""
        if i == 1:
            return self.p1
        if i == 2:
            return self.p2
        raise ValueError(f"action index must be 1 or 2, got {i!r}")


PURE_A1 = BinaryDist(1.0, 0.0)
PURE_A2 = BinaryDist(0.0, 1.0)


@dataclass(frozen=True, slots=True)
class NESolution:
    """A Nash equilibrium profile with its (unique) game value."""

    follower_strategy: BinaryDist
    leader_strategy: BinaryDist
    value: float
    game_class: GameClass


def expected_payoff(u: PayoffMatrix, q: BinaryDist, p: BinaryDist) -> float:
    """Bilinear expected payoff sum_{i,j} q(a_i) p(a_j) u_{i,j}."""
    return (
        q.p1 * (p.p1 * u.u11 + p.p2 * u.u12)
        + q.p2 * (p.p1 * u.u21 + p.p2 * u.u22)
    )


def _same_sign(a: float, b: float) -> bool:
    """Whether a*b > 0, evaluated without the product (which can underflow
    to zero for tiny differences and silently flip a strict comparison)."""
    return (a > 0 and b > 0) or (a < 0 and b < 0)


def classify(u: PayoffMatrix) -> GameClass:
    """Classify the equilibrium structure.

    The game has a unique, fully mixed NE exactly when (u11-u12)(u22-u21)
    and (u11-u21)(u22-u12) are both strictly positive; the test is exact
    (no tolerance) so that boundary cases fall into the degenerate class.
    """
    if _same_sign(u.u11 - u.u12, u.u22 - u.u21) and _same_sign(
        u.u11 - u.u21, u.u22 - u.u12
    ):
        return GameClass.UNIQUE_MIXED_NE
    return GameClass.DEGENERATE_NE


def minmax_pure(u: PayoffMatrix) -> float:
    """min over leader pure actions of the follower's best reply payoff."""
    return min(max(u.u11, u.u21), max(u.u12, u.u22))


def _pure_saddle(u: PayoffMatrix) -> tuple[int, int] | None:
    """First pure saddle point in lexicographic order (1,1),(1,2),(2,1),(2,2)."""
    rows = u.as_rows()
    for i in (0, 1):
        for j in (0, 1):
            value = rows[i][j]
            # follower cannot improve by switching rows, leader by switching columns
            if value >= rows[1 - i][j] and value <= rows[i][1 - j]:
                return (i + 1, j + 1)
    return None


def nash(u: PayoffMatrix) -> NESolution:
    """Solve the unobserved game.

    Mixed-class games get the interior closed-form profile; degenerate games
    get a pure saddle profile (one always exists in that class) whose value is
    the pure min-max.
    """
    game_class = classify(u)
    if game_class is GameClass.UNIQUE_MIXED_NE:
        s = u.u11 - u.u12 - u.u21 + u.u22  # nonzero under the mixed condition
        follower = BinaryDist.from_p1((u.u22 - u.u21) / s)
        leader = BinaryDist.from_p1((u.u22 - u.u12) / s)
        value = (u.u11 * u.u22 - u.u12 * u.u21) / s
        return NESolution(follower, leader, value, game_class)

    saddle = _pure_saddle(u)
    if saddle is None:  # impossible for degenerate 2x2 games; guard anyway
        raise ArithmeticError("degenerate game without a pure saddle point")
    i, j = saddle
    follower = PURE_A1 if i == 1 else PURE_A2
    leader = PURE_A1 if j == 1 else PURE_A2
    return NESolution(follower, leader, minmax_pure(u), game_class)


def u_hat(u: PayoffMatrix, p: BinaryDist) -> float:
    """Follower's best-reply payoff against a known mixed commitment p.

    The inner maximization over the follower's mixed strategies is linear, so
    it reduces to the larger of the two pure-row payoffs.
    """
    row1 = u.u11 * p.p1 + u.u12 * p.p2
    row2 = u.u21 * p.p1 + u.u22 * p.p2
    return max(row1, row2)
