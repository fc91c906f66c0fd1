"""Exception hierarchy shared by all modules."""


class TraceboundError(ValueError):
    """Base class for all errors raised by this package."""


class NonHermitianInput(TraceboundError):
    pass


class ConvergenceFailure(TraceboundError, ArithmeticError):
    pass


class NotPositiveSemidefinite(TraceboundError):
    pass


class DimensionMismatch(TraceboundError):
    pass


class InvalidMatrix(TraceboundError):
    """Matrix is not square, is empty, or has non-finite entries."""


class ZeroVector(TraceboundError):
    pass


class BlochNormExceeded(TraceboundError):
    pass


class ParameterOutOfRange(TraceboundError):
    pass


class RankOutOfRange(TraceboundError):
    pass


class InvalidSpec(TraceboundError):
    """Bad configuration passed to a batch verification routine."""


class StateValidationError(TraceboundError):
    """A matrix failed one of the density-matrix invariants.

    ``invariant`` names the failed check (``"hermitian"``, ``"psd"``,
    ``"unit_trace"``, ``"shape"``, ``"finite"``).
    """

    def __init__(self, invariant: str, message: str):
        super().__init__(f"{invariant}: {message}")
        self.invariant = invariant
