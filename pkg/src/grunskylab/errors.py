"""Exception hierarchy shared by all grunskylab modules."""


class GrunskyLabError(Exception):
    """Base class for every error raised by this package."""


class DomainError(GrunskyLabError, ValueError):
    """Input lies outside the mathematical domain of an operation
    (e.g. a series whose constant term is not 1 passed to ``log``)."""


class UsageError(GrunskyLabError, ValueError):
    """Operation called with incompatible or insufficient arguments."""


class PreconditionError(GrunskyLabError, ValueError):
    """A numerical side condition (such as ``a2 == 0``) does not hold."""


class EvaluationError(GrunskyLabError, ArithmeticError):
    """An objective produced a non-finite value."""

    def __init__(self, message: str, abscissa: float):
        super().__init__(message)
        self.abscissa = abscissa
