"""Exception hierarchy shared by every module."""


class IRGameError(Exception):
    """Base class for all errors raised by this package."""


class ShapeError(IRGameError, ValueError):
    """Array dimensions do not match what the operation expects."""


class DomainError(IRGameError, ValueError):
    """A value lies outside the domain of the model (e.g. a nonpositive bonus)."""


class ParameterError(IRGameError, ValueError):
    """An algorithm parameter is out of range."""


class DegenerateGameError(IRGameError):
    """The 2x2 indifference equations have a zero denominator."""


class NoInteriorEquilibriumError(IRGameError):
    """The indifference solution is not a probability vector."""

    def __init__(self, message, p1=None, q1=None):
        super().__init__(message)
        self.p1 = p1
        self.q1 = q1


class ZeroFrequencyError(DomainError):
    """A zero observed frequency would make the inverse problem divide by zero."""


class ParseError(IRGameError, ValueError):
    """Malformed frequency-table input."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class StepTooLargeError(IRGameError):
    """A shift step would push some bonus below the positivity floor."""

    def __init__(self, epsilon, max_epsilon):
        super().__init__(
            f"epsilon={epsilon:g} exceeds the maximal admissible step {max_epsilon:.12g}"
        )
        self.epsilon = epsilon
        self.max_epsilon = max_epsilon
