"""Exception types shared across the package."""


class InputError(ValueError):
    """An argument violates a documented precondition."""


class ParseError(InputError):
    """A text-format file could not be parsed. Carries a line number."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class CapacityError(RuntimeError):
    """Instance exceeds the configured size bound of an exact solver."""


class SolverTimeout(RuntimeError):
    """An exact search ran out of time.

    ``best_upper_bound`` is a verified bound (a witness of that size was
    constructed greedily); it may be None when not even the greedy pass ran.
    """

    def __init__(self, message, best_upper_bound=None):
        super().__init__(message)
        self.best_upper_bound = best_upper_bound


class InternalConsistencyError(AssertionError):
    """A condition that is mathematically guaranteed failed; a bug, not bad input."""
