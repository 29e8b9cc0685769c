"""Exception types shared across the package."""


class PrecisionError(ArithmeticError):
    """A certified computation stayed indeterminate at the allowed precision.

    Recoverable in principle: callers that own a precision budget catch this
    and retry with more bits / a larger lattice scale.  Reaching the hard cap
    turns it into a final failure.
    """


class ReductionError(RuntimeError):
    """A bound-reduction loop failed to converge within its round cap."""


class FactorizationTimeout(RuntimeError):
    """Factoring exceeded its work budget; the result is indeterminate, not wrong."""
