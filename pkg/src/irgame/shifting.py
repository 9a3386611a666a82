"""Budget-neutral reallocation of provider bonuses.

The provider cannot order users around, but it can change its own bonuses
``b``.  Because the users' query mix ``p`` is fixed by ``b`` alone, moving
bonus mass along the constrained gradient of the equilibrium gain raises
that gain while keeping ``sum(b)`` at the budget.
"""
import logging
from dataclasses import dataclass

import numpy as np

from ._validation import check_mixed_strategy, check_nonnegative_scalar, check_positive_scalar
from .alpha import AlphaModel, forward_equilibrium, provider_gain_at_equilibrium
from .exceptions import ParameterError, StepTooLargeError

logger = logging.getLogger(__name__)

#: Bonuses must stay above this fraction of the mean bonus ``budget / n``.
POSITIVITY_FLOOR = 1e-9
DEFAULT_EPSILON = 0.01
DEFAULT_STOP_TOLERANCE = 1e-15


@dataclass(frozen=True)
class ShiftPlan:
    """Direction of one shift step.

    ``delta_b`` is the unscaled direction; the step applied is
    ``epsilon * delta_b``.  ``predicted_gain_delta`` is the first-order gain
    change for that step.
    """

    epsilon: float
    delta_b: np.ndarray
    threshold: float
    predicted_gain_delta: float


@dataclass(frozen=True)
class ShiftOutcome:
    model_before: AlphaModel
    model_after: AlphaModel
    gain_before: float
    gain_after: float
    predicted_delta: float
    actual_delta: float
    plan: ShiftPlan


def gain_gradient(model):
    """Gradient of the equilibrium provider gain with respect to ``b``.

    Differentiating ``1 / sum(1 / b)`` gives ``gain**2 / b_k**2``, which is
    ``p_k**2``.
    """
    p = forward_equilibrium(model).p
    return p * p


def shift_direction(model, epsilon=DEFAULT_EPSILON):
    """Project the gain gradient onto the budget hyperplane ``sum(db) = 0``.

    ``delta_b[k] = p_k**2 - w`` with threshold ``w = mean(p**2)``, so bonus
    moves toward queries whose squared frequency exceeds ``w``.
    """
    epsilon = check_positive_scalar(epsilon, "epsilon")
    grad = gain_gradient(model)
    if np.all(grad == grad[0]):
        # exact zero for uniform p; np.mean may round otherwise
        threshold = float(grad[0])
        delta_b = np.zeros_like(grad)
    else:
        threshold = float(grad.mean())
        delta_b = grad - threshold
    predicted = epsilon * float(grad @ delta_b)
    return ShiftPlan(epsilon, delta_b, threshold, predicted)


def positivity_floor(model):
    return POSITIVITY_FLOOR * model.effective_budget / model.n


def max_admissible_epsilon(model, delta_b=None):
    """Largest step keeping every ``b_k + eps * delta_b_k`` at or above the floor."""
    if delta_b is None:
        delta_b = shift_direction(model).delta_b
    shrinking = delta_b < 0
    if not np.any(shrinking):
        return float("inf")
    room = model.b[shrinking] - positivity_floor(model)
    return float(np.min(room / -delta_b[shrinking]))


def apply_shift(model, epsilon=DEFAULT_EPSILON):
    """Take one shift step and recompute the equilibrium gain.

    Models without a fixed budget adopt ``sum(b)`` as the budget.  After the
    additive step ``b`` is rescaled onto the budget exactly.

    Raises
    ------
    StepTooLargeError
        ``epsilon`` would push a bonus below the positivity floor.  The error
        carries the maximal admissible step.
    """
    plan = shift_direction(model, epsilon)
    limit = max_admissible_epsilon(model, plan.delta_b)
    if plan.epsilon > limit:
        raise StepTooLargeError(plan.epsilon, limit)
    budget = model.effective_budget
    if model.budget is None:
        model = AlphaModel(model.a, model.b, budget, model.labels)
    if np.any(plan.delta_b):
        raw = model.b + plan.epsilon * plan.delta_b
        b_after = raw * budget / raw.sum()
    else:
        b_after = model.b
    after = AlphaModel(model.a, b_after, budget, model.labels)
    gain_before = provider_gain_at_equilibrium(model)
    gain_after = provider_gain_at_equilibrium(after)
    return ShiftOutcome(
        model_before=model,
        model_after=after,
        gain_before=gain_before,
        gain_after=gain_after,
        predicted_delta=plan.predicted_gain_delta,
        actual_delta=gain_after - gain_before,
        plan=plan,
    )


def shift_loop(model, epsilon=DEFAULT_EPSILON, steps=1, stop_tolerance=DEFAULT_STOP_TOLERANCE):
    """Repeat :func:`apply_shift`, letting the equilibrium adjust between steps.

    Stops after ``steps`` steps, as soon as a step changes the gain by less
    than ``stop_tolerance``, or when the next step would be too large.  In
    the last case the outcomes gathered so far are returned; an empty list
    means the very first step was rejected.
    """
    if isinstance(steps, bool) or int(steps) != steps or steps < 1:
        raise ParameterError(f"steps must be an integer >= 1, got {steps!r}")
    stop_tolerance = check_nonnegative_scalar(stop_tolerance, "stop_tolerance")
    outcomes = []
    current = model
    for step in range(int(steps)):
        try:
            outcome = apply_shift(current, epsilon)
        except StepTooLargeError as exc:
            logger.info("shift loop stopped before step %d: %s", step + 1, exc)
            break
        outcomes.append(outcome)
        if abs(outcome.actual_delta) < stop_tolerance:
            break
        current = outcome.model_after
    return outcomes


def eq16_gain_estimate(plan, q):
    """Gain change estimated as ``epsilon * sum_j delta_b_j * q_j``.

    Kept for comparison only.  It weights the direction by the answer mix
    ``q`` instead of the gradient ``p**2`` and can disagree with the exact
    change (it is zero whenever ``q`` is uniform).
    """
    q = check_mixed_strategy(q, plan.delta_b.size, "q")
    return plan.epsilon * float(plan.delta_b @ q)
