"""The Alpha model: a bimatrix game with diagonal payoff matrices.

Question ``j`` of the user side (player A) is only rewarded by answer ``j``
of the provider side (player B).  ``a[j]`` is the user's bonus for a matched
pair and ``b[j]`` the provider's.  The model has a unique fully mixed
equilibrium in closed form, which also makes the inverse problem (bonuses
from observed frequencies) solvable in closed form.
"""
from dataclasses import dataclass, field
from typing import NamedTuple, Optional, Sequence

import numpy as np

from ._validation import check_mixed_strategy, check_positive_scalar, check_positive_vector
from .exceptions import DomainError, ShapeError
from .game import BimatrixGame

BUDGET_RTOL = 1e-9


@dataclass(frozen=True)
class AlphaModel:
    """Diagonal bonuses of both players and an optional provider budget.

    Parameters
    ----------
    a : array-like of shape (n,)
        Positive user-side bonuses.
    b : array-like of shape (n,)
        Positive provider-side bonuses.
    budget : float, optional
        Fixed total of ``b``.  When given, ``sum(b)`` must match it.
    labels : sequence of str, optional
        Names of the ``n`` strategies.
    """

    a: np.ndarray
    b: np.ndarray
    budget: Optional[float] = None
    labels: Optional[Sequence[str]] = field(default=None, compare=False)

    def __post_init__(self):
        a = check_positive_vector(self.a, "a").copy()
        b = check_positive_vector(self.b, "b").copy()
        if a.size != b.size:
            raise ShapeError(f"a has {a.size} entries but b has {b.size}")
        a.setflags(write=False)
        b.setflags(write=False)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        if self.budget is not None:
            budget = check_positive_scalar(self.budget, "budget")
            if abs(b.sum() - budget) > BUDGET_RTOL * budget:
                raise DomainError(f"sum(b) = {b.sum():.12g} differs from budget {budget:.12g}")
            object.__setattr__(self, "budget", budget)
        if self.labels is not None:
            labels = tuple(str(x) for x in self.labels)
            if len(labels) != a.size:
                raise ShapeError(f"{len(labels)} labels for {a.size} strategies")
            object.__setattr__(self, "labels", labels)

    @property
    def n(self):
        return self.a.size

    @property
    def effective_budget(self):
        """``budget`` if fixed, otherwise the current total of ``b``."""
        return self.budget if self.budget is not None else float(self.b.sum())

    @classmethod
    def from_dict(cls, data):
        try:
            return cls(data["a"], data["b"], data.get("budget"), data.get("labels"))
        except KeyError as exc:
            raise ShapeError(f"model definition lacks field {exc.args[0]!r}") from None

    def to_dict(self):
        return {
            "a": self.a.tolist(),
            "b": self.b.tolist(),
            "budget": self.budget,
            "labels": None if self.labels is None else list(self.labels),
        }


class EquilibriumProfile(NamedTuple):
    """Query distribution ``p`` (user side) and answer distribution ``q``."""

    p: np.ndarray
    q: np.ndarray


@dataclass(frozen=True)
class ScaleConstants:
    """The two free positive multipliers of the inverse solution."""

    a_scale: float = 1.0
    b_scale: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "a_scale", check_positive_scalar(self.a_scale, "a_scale"))
        object.__setattr__(self, "b_scale", check_positive_scalar(self.b_scale, "b_scale"))


def _harmonic_weights(values):
    inv = 1.0 / values
    return inv / inv.sum()


def forward_equilibrium(model):
    """Fully mixed equilibrium of the Alpha model.

    ``p[j]`` is proportional to ``1 / b[j]`` and ``q[k]`` to ``1 / a[k]``:
    each side's mix is fixed by the *other* side's bonuses, since it is the
    mix that leaves the opponent indifferent.
    """
    return EquilibriumProfile(_harmonic_weights(model.b), _harmonic_weights(model.a))


def expand_to_bimatrix(model):
    """The full ``n x n`` game with ``diag(a)`` and ``diag(b)`` as payoffs."""
    return BimatrixGame(np.diag(model.a), np.diag(model.b), model.labels, model.labels)


def scales_for_budget(p, budget, a_scale=1.0):
    """Scales whose inverse solution has provider bonuses summing to ``budget``."""
    p = check_positive_vector(p, "p")
    budget = check_positive_scalar(budget, "budget")
    return ScaleConstants(a_scale, budget / float(np.sum(1.0 / p)))


def invert_from_equilibrium(profile, scales=None, labels=None, budget=None):
    """Reconstruct bonuses from an observed equilibrium.

    ``a[j] = a_scale / q[j]`` and ``b[k] = b_scale / p[k]``.  Any positive
    scales are consistent with the same equilibrium.  Passing ``budget``
    replaces ``b_scale`` by the value that makes ``sum(b) == budget`` and
    records the budget on the returned model.

    Raises
    ------
    DomainError
        Some probability is zero or negative.  Smooth the counts first.
    """
    if scales is None:
        scales = ScaleConstants()
    p, q = profile
    n = np.asarray(p).size
    p = check_mixed_strategy(p, name="p")
    q = check_mixed_strategy(q, n, name="q")
    if np.any(p <= 0) or np.any(q <= 0):
        raise DomainError("every observed frequency must be > 0; smooth zero counts first")
    if budget is not None:
        scales = scales_for_budget(p, budget, scales.a_scale)
    a = scales.a_scale / q
    b = scales.b_scale / p
    return AlphaModel(a, b, budget, labels)


def normalize_to_budget(model, budget):
    """Rescale ``b`` so that it sums to ``budget``; ``a`` is untouched.

    The equilibrium does not depend on the scale of ``b``, so this changes the
    provider's accounting unit and nothing else.
    """
    budget = check_positive_scalar(budget, "budget")
    total = float(model.b.sum())
    b = model.b if total == budget else model.b * budget / total
    return AlphaModel(model.a, b, budget, model.labels)


def provider_gain_at_equilibrium(model):
    """Provider's equilibrium gain ``1 / sum_j (1 / b_j)``."""
    return 1.0 / float(np.sum(1.0 / model.b))


def user_gain_at_equilibrium(model):
    """User's equilibrium gain ``1 / sum_k (1 / a_k)``."""
    return 1.0 / float(np.sum(1.0 / model.a))


def equilibrium_scales(model):
    """The scales that reproduce ``model`` exactly from its own equilibrium."""
    return ScaleConstants(user_gain_at_equilibrium(model), provider_gain_at_equilibrium(model))
