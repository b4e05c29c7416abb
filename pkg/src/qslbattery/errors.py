"""Exception hierarchy.

Every error raised on purpose by the package derives from
:class:`QslBatteryError`, so callers (and the CLI) can separate numerical
failures from programming errors.
"""


class QslBatteryError(Exception):
    """Base class for all package errors."""


class ConfigError(QslBatteryError, ValueError):
    def __init__(self, key, reason):
        self.key = key
        self.reason = reason
        super().__init__(f"{key}: {reason}" if key else reason)


class UsageError(QslBatteryError, ValueError):
    pass


class NumericalError(QslBatteryError, ArithmeticError):
    """Base for failures of the numerical routines."""


class NotHermitian(NumericalError):
    pass


class NegativeEigenvalue(NumericalError):
    pass


class InvalidState(NumericalError):
    pass


class NotAState(InvalidState):
    pass


class SingularReference(NumericalError):
    pass


class RateSingular(NumericalError):
    pass


class StepSizeTooCoarse(NumericalError):
    pass


class GridDegenerate(NumericalError):
    pass


class GridTooShort(NumericalError):
    pass


class DomainError(NumericalError):
    pass


class NumericalDomain(DomainError):
    pass


class ZeroGenerator(NumericalError):
    pass


class FloorTooSmall(NumericalError):
    pass


class SweepFailure(NumericalError):
    """A sweep stage produced a non-finite value where none is allowed."""

    def __init__(self, operation, t):
        self.operation = operation
        self.t = t
        super().__init__(f"{operation} failed at t={t!r}")
