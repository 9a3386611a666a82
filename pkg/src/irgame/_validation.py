"""Input validation helpers.

These mirror the ``check_array`` family from scikit-learn but are tailored
to payoff matrices and probability vectors.
"""
import numbers

import numpy as np

from .exceptions import DomainError, ParameterError, ShapeError

#: Slack allowed on the unit-sum constraint of a mixed strategy.
PROBABILITY_ATOL = 1e-9

PLAYERS = ("A", "B")


def check_payoff_matrix(matrix, name="payoff matrix"):
    """Return ``matrix`` as a finite 2-D float array with at least one cell."""
    try:
        arr = np.asarray(matrix, dtype=float)
    except (TypeError, ValueError) as exc:
        raise ShapeError(f"{name} is not a rectangular numeric array") from exc
    if arr.ndim != 2:
        raise ShapeError(f"{name} must be 2-D, got {arr.ndim}-D")
    if arr.shape[0] < 1 or arr.shape[1] < 1:
        raise ShapeError(f"{name} must be nonempty, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise DomainError(f"{name} contains non-finite entries")
    return arr


def check_mixed_strategy(probs, length=None, name="strategy", atol=PROBABILITY_ATOL):
    """Validate a probability vector.

    Parameters
    ----------
    probs : array-like of shape (k,)
    length : int, optional
        Required length ``k``.
    atol : float
        Tolerance on ``|sum(probs) - 1|``.

    Returns
    -------
    ndarray of float
    """
    try:
        arr = np.asarray(probs, dtype=float)
    except (TypeError, ValueError) as exc:
        raise ShapeError(f"{name} is not a numeric vector") from exc
    if arr.ndim != 1 or arr.size == 0:
        raise ShapeError(f"{name} must be a nonempty 1-D vector")
    if length is not None and arr.size != length:
        raise ShapeError(f"{name} has length {arr.size}, expected {length}")
    if not np.all(np.isfinite(arr)):
        raise DomainError(f"{name} contains non-finite entries")
    if np.any(arr < 0):
        raise DomainError(f"{name} has negative entries")
    if abs(arr.sum() - 1.0) > atol:
        raise DomainError(f"{name} sums to {arr.sum()!r}, not 1")
    return arr


def check_positive_vector(values, name="vector"):
    arr = np.asarray(values, dtype=float)
    if arr.ndim != 1 or arr.size == 0:
        raise ShapeError(f"{name} must be a nonempty 1-D vector")
    if not np.all(np.isfinite(arr)) or np.any(arr <= 0):
        raise DomainError(f"every entry of {name} must be finite and > 0")
    return arr


def check_player(player):
    key = str(player).upper()
    if key not in PLAYERS:
        raise ParameterError(f"player must be 'A' or 'B', got {player!r}")
    return key


def check_positive_scalar(value, name):
    """Reject non-numbers, nonfinite values and values <= 0."""
    if isinstance(value, bool) or not isinstance(value, numbers.Real):
        raise ParameterError(f"{name} must be a real number, got {value!r}")
    value = float(value)
    if not np.isfinite(value) or value <= 0:
        raise ParameterError(f"{name} must be > 0, got {value!r}")
    return value


def check_nonnegative_scalar(value, name):
    if isinstance(value, bool) or not isinstance(value, numbers.Real):
        raise ParameterError(f"{name} must be a real number, got {value!r}")
    value = float(value)
    if not np.isfinite(value) or value < 0:
        raise ParameterError(f"{name} must be >= 0, got {value!r}")
    return value
