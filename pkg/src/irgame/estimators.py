"""scikit-learn style wrappers.

:class:`AlphaModelEstimator` fits an Alpha model to query and answer logs;
:class:`BonusShifter` transforms a fitted model by shifting its provider
bonuses.  Both inherit ``get_params``/``set_params`` from ``BaseEstimator``
so they work with ``clone`` and parameter grids.
"""
from collections.abc import Mapping

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .alpha import (
    AlphaModel,
    ScaleConstants,
    forward_equilibrium,
    invert_from_equilibrium,
    provider_gain_at_equilibrium,
)
from .exceptions import ShapeError
from .logs import DEFAULT_SMOOTHING, FrequencyTable, align
from .shifting import DEFAULT_EPSILON, DEFAULT_STOP_TOLERANCE, shift_loop


def _as_table(data, name):
    if isinstance(data, FrequencyTable):
        return data
    if isinstance(data, Mapping):
        return FrequencyTable.from_mapping(data)
    counts = np.asarray(data)
    if counts.ndim != 1:
        raise ShapeError(f"{name} must be a 1-D array of counts, got {counts.ndim}-D")
    return FrequencyTable.from_pairs((f"s{i}", c) for i, c in enumerate(counts.tolist()))


class AlphaModelEstimator(BaseEstimator):
    """Reconstruct Alpha-model bonuses from observed query/answer frequencies.

    Parameters
    ----------
    smoothing_alpha : float, default=0.5
        Additive smoothing applied to the counts of both sides.
    target_n : int, optional
        Number of strategies after alignment; defaults to the smaller side.
    budget : float, optional
        Total provider bonus.  Overrides ``b_scale`` when set.
    a_scale, b_scale : float, default=1.0
        Free multipliers of the inverse solution.

    Attributes
    ----------
    aligned_ : AlignedLog
    model_ : AlphaModel
    a_, b_ : ndarray of shape (n_strategies_,)
    labels_ : tuple of str
        Query-side label of each strategy.
    """

    def __init__(self, smoothing_alpha=DEFAULT_SMOOTHING, target_n=None, budget=None,
                 a_scale=1.0, b_scale=1.0):
        self.smoothing_alpha = smoothing_alpha
        self.target_n = target_n
        self.budget = budget
        self.a_scale = a_scale
        self.b_scale = b_scale

    def fit(self, queries, answers):
        """Fit from two count collections.

        Each argument may be a :class:`FrequencyTable`, a ``{label: count}``
        mapping, or a 1-D array of counts (index ``i`` becomes label ``s{i}``,
        so two arrays are paired position by position).
        """
        aligned = align(
            _as_table(queries, "queries"),
            _as_table(answers, "answers"),
            target_n=self.target_n,
            smoothing_alpha=self.smoothing_alpha,
        )
        self.aligned_ = aligned
        self.model_ = invert_from_equilibrium(
            (aligned.p, aligned.q),
            ScaleConstants(self.a_scale, self.b_scale),
            labels=aligned.labels,
            budget=self.budget,
        )
        self.a_ = self.model_.a
        self.b_ = self.model_.b
        self.labels_ = aligned.labels
        self.n_strategies_ = aligned.n
        return self

    def predict(self):
        """Equilibrium ``(p, q)`` of the fitted model."""
        check_is_fitted(self, "model_")
        return forward_equilibrium(self.model_)

    def score(self):
        """Provider's equilibrium gain under the fitted bonuses."""
        check_is_fitted(self, "model_")
        return provider_gain_at_equilibrium(self.model_)


class BonusShifter(TransformerMixin, BaseEstimator):
    """Shift the provider bonuses of an :class:`AlphaModel`.

    ``transform`` runs ``steps`` shifting steps of size ``epsilon`` and
    returns the final model.  Shifting is stateless, so ``fit`` only
    validates its input.
    """

    def __init__(self, epsilon=DEFAULT_EPSILON, steps=1, stop_tolerance=DEFAULT_STOP_TOLERANCE):
        self.epsilon = epsilon
        self.steps = steps
        self.stop_tolerance = stop_tolerance

    def fit(self, model, y=None):
        if not isinstance(model, AlphaModel):
            raise TypeError(f"expected an AlphaModel, got {type(model).__name__}")
        self.n_strategies_ = model.n
        return self

    def transform(self, model):
        check_is_fitted(self, "n_strategies_")
        outcomes = shift_loop(model, self.epsilon, self.steps, self.stop_tolerance)
        self.outcomes_ = outcomes
        return outcomes[-1].model_after if outcomes else model
