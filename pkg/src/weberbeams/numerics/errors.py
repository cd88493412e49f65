"""Exception types shared across the library."""


class DomainError(ValueError):
    """Argument outside the domain of a function (pole, singular point)."""


class AccuracyError(ArithmeticError):
    """A numerical routine could not reach the requested tolerance.

    Attributes
    ----------
    estimate : float
        The achieved (absolute) error estimate.
    """

    def __init__(self, message, estimate):
        super().__init__(message)
        self.estimate = estimate
