"""Finite two-player (bimatrix) games.

Player A picks a row, player B picks a column.  Payoffs are stored as two
equally shaped float matrices.  Everything here is a pure function.
"""
from dataclasses import dataclass
from itertools import combinations_with_replacement
from typing import NamedTuple, Optional, Sequence

import numpy as np

from ._validation import (
    check_mixed_strategy,
    check_nonnegative_scalar,
    check_payoff_matrix,
    check_player,
)
from .exceptions import (
    DegenerateGameError,
    NoInteriorEquilibriumError,
    ParameterError,
    ShapeError,
)

DEFAULT_TOLERANCE = 1e-9


@dataclass(frozen=True)
class BimatrixGame:
    """A pair of payoff matrices, ``payoff_a[j, k]`` and ``payoff_b[j, k]``."""

    payoff_a: np.ndarray
    payoff_b: np.ndarray
    row_labels: Optional[Sequence[str]] = None
    col_labels: Optional[Sequence[str]] = None

    def __post_init__(self):
        a = check_payoff_matrix(self.payoff_a, "payoff_A")
        b = check_payoff_matrix(self.payoff_b, "payoff_B")
        if a.shape != b.shape:
            raise ShapeError(
                f"payoff_A has shape {a.shape} but payoff_B has shape {b.shape}"
            )
        a.setflags(write=False)
        b.setflags(write=False)
        object.__setattr__(self, "payoff_a", a)
        object.__setattr__(self, "payoff_b", b)
        for name, labels, size in (
            ("row_labels", self.row_labels, a.shape[0]),
            ("col_labels", self.col_labels, a.shape[1]),
        ):
            if labels is not None:
                labels = tuple(str(x) for x in labels)
                if len(labels) != size:
                    raise ShapeError(f"{name} has {len(labels)} entries, expected {size}")
                object.__setattr__(self, name, labels)

    @property
    def shape(self):
        return self.payoff_a.shape

    @classmethod
    def from_dict(cls, data):
        """Build a game from the JSON game-file layout."""
        try:
            return cls(
                data["payoff_A"],
                data["payoff_B"],
                data.get("row_labels"),
                data.get("col_labels"),
            )
        except KeyError as exc:
            raise ShapeError(f"game definition lacks field {exc.args[0]!r}") from None

    def to_dict(self):
        out = {"payoff_A": self.payoff_a.tolist(), "payoff_B": self.payoff_b.tolist()}
        if self.row_labels is not None:
            out["row_labels"] = list(self.row_labels)
        if self.col_labels is not None:
            out["col_labels"] = list(self.col_labels)
        return out


class Profile(NamedTuple):
    """Mixed strategies of both players."""

    p: np.ndarray
    q: np.ndarray


class GainReport(NamedTuple):
    gain_a: float
    gain_b: float


@dataclass(frozen=True)
class EquilibriumVerdict:
    """Outcome of :func:`verify_equilibrium`.

    ``violation_a`` is how much A could gain by the best pure deviation,
    ``violation_b`` likewise for B (both clipped at zero).
    """

    passed: bool
    violation_a: float
    violation_b: float
    tolerance: float

    @property
    def worst_violation(self):
        return max(self.violation_a, self.violation_b)


def pure_strategy(index, size):
    """One-hot vector of length ``size``."""
    if not 0 <= index < size:
        raise ShapeError(f"strategy index {index} out of range for {size} strategies")
    e = np.zeros(size)
    e[index] = 1.0
    return e


def pure_profile(game, row, col):
    n, m = game.shape
    return Profile(pure_strategy(row, n), pure_strategy(col, m))


def _check_profile(game, profile):
    n, m = game.shape
    p = check_mixed_strategy(profile[0], n, "p")
    q = check_mixed_strategy(profile[1], m, "q")
    return p, q


def expected_payoff(game, profile):
    """Average gains ``sum_jk a_jk p_j q_k`` and ``sum_jk b_jk p_j q_k``."""
    p, q = _check_profile(game, profile)
    return GainReport(float(p @ game.payoff_a @ q), float(p @ game.payoff_b @ q))


def find_dominant_strategy(matrix, player="A"):
    """Index of a dominant strategy of ``player``, or ``None``.

    Rows are compared for player A, columns for player B.  Strategy ``i``
    dominates when it is weakly better than every other strategy and strictly
    better somewhere against each of them.  Strategies that are exact copies
    of ``i`` are skipped; among such copies the lowest index is returned.
    """
    m = check_payoff_matrix(matrix)
    player = check_player(player)
    options = m if player == "A" else m.T
    for i, row in enumerate(options):
        dominant = True
        for k, other in enumerate(options):
            if k == i or np.array_equal(row, other):
                continue
            if not (np.all(row >= other) and np.any(row > other)):
                dominant = False
                break
        if dominant:
            return i
    return None


def find_pure_equilibria(game):
    """All pure Nash equilibria ``(row, col)`` in row-major order.

    A cell qualifies when ``a_jk`` is maximal in its column of ``payoff_a``
    and ``b_jk`` is maximal in its row of ``payoff_b``.
    """
    a, b = game.payoff_a, game.payoff_b
    best_a = a >= a.max(axis=0, keepdims=True)
    best_b = b >= b.max(axis=1, keepdims=True)
    return [(int(j), int(k)) for j, k in np.argwhere(best_a & best_b)]


def mixed_equilibrium_2x2(game):
    """Fully mixed equilibrium of a 2x2 game via the indifference equations.

    ``p`` makes B indifferent between its columns and ``q`` makes A
    indifferent between its rows::

        p1 = (b22 - b21) / (b11 + b22 - b12 - b21)
        q1 = (a22 - a12) / (a11 + a22 - a12 - a21)

    Raises
    ------
    ShapeError
        The game is not 2x2.
    DegenerateGameError
        A denominator vanishes.
    NoInteriorEquilibriumError
        ``p1`` or ``q1`` falls outside ``[0, 1]``.  Values are never clamped.
    """
    if game.shape != (2, 2):
        raise ShapeError(f"expected a 2x2 game, got {game.shape}")
    (a11, a12), (a21, a22) = game.payoff_a
    (b11, b12), (b21, b22) = game.payoff_b
    den_p = b11 + b22 - b12 - b21
    den_q = a11 + a22 - a12 - a21
    scale_b = max(np.abs(game.payoff_b).max(), 1.0)
    scale_a = max(np.abs(game.payoff_a).max(), 1.0)
    if abs(den_p) <= 1e-12 * scale_b or abs(den_q) <= 1e-12 * scale_a:
        raise DegenerateGameError(
            f"indifference denominators vanish (B: {den_p:g}, A: {den_q:g})"
        )
    p1 = (b22 - b21) / den_p
    q1 = (a22 - a12) / den_q
    if not (0.0 <= p1 <= 1.0 and 0.0 <= q1 <= 1.0):
        raise NoInteriorEquilibriumError(
            f"indifference solution p1={p1:.12g}, q1={q1:.12g} is not a probability",
            p1=p1,
            q1=q1,
        )
    return Profile(np.array([p1, 1.0 - p1]), np.array([q1, 1.0 - q1]))


def verify_equilibrium(game, profile, tolerance=DEFAULT_TOLERANCE):
    """Check the Nash inequalities against every pure deviation.

    Pure deviations suffice because the gains are bilinear: the best mixed
    deviation is never better than the best pure one.
    """
    tolerance = check_nonnegative_scalar(tolerance, "tolerance")
    p, q = _check_profile(game, profile)
    a, b = game.payoff_a, game.payoff_b
    row_gains = a @ q
    col_gains = p @ b
    violation_a = max(0.0, float(row_gains.max() - p @ row_gains))
    violation_b = max(0.0, float(col_gains.max() - col_gains @ q))
    passed = violation_a <= tolerance and violation_b <= tolerance
    return EquilibriumVerdict(passed, violation_a, violation_b, tolerance)


def _simplex_grid(size, steps):
    """Every point of the simplex with coordinates in multiples of 1/steps."""
    for combo in combinations_with_replacement(range(size), steps):
        point = np.bincount(combo, minlength=size) / steps
        yield point


def best_response_oracle(game, opponent_strategy, player="A", grid_steps=1):
    """Best response of ``player`` to a fixed opponent strategy.

    Pure strategies are tried first, lowest index first, so ties resolve to
    the lowest pure index.  With ``grid_steps > 1`` the mixed strategies on
    the simplex grid of that resolution are also scanned; a grid point only
    replaces the incumbent when it is strictly better, which by bilinearity
    never happens.  The scan exists as a brute-force check.
    """
    player = check_player(player)
    if isinstance(grid_steps, bool) or int(grid_steps) != grid_steps or grid_steps < 1:
        raise ParameterError(f"grid_steps must be an integer >= 1, got {grid_steps!r}")
    n, m = game.shape
    if player == "A":
        other = check_mixed_strategy(opponent_strategy, m, "opponent strategy")
        values = game.payoff_a @ other
    else:
        other = check_mixed_strategy(opponent_strategy, n, "opponent strategy")
        values = other @ game.payoff_b
    size = values.size
    best_index = int(np.argmax(values))
    best = pure_strategy(best_index, size)
    best_value = values[best_index]
    if grid_steps > 1:
        slack = 1e-12 * max(1.0, abs(best_value))
        for point in _simplex_grid(size, int(grid_steps)):
            value = point @ values
            if value > best_value + slack:
                best, best_value = point, value
    return best
