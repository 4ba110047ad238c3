"""Exception hierarchy shared by every module."""


class MdistError(Exception):
    """Base class for all package errors."""


class NumericFailure(MdistError):
    """A numeric routine could not deliver the requested accuracy."""


class UsageError(MdistError, ValueError):
    """Invalid arguments or preconditions."""


class ZeroPolynomial(UsageError):
    pass


class NonFiniteCoefficient(UsageError):
    pass


class ToleranceNotReached(NumericFailure):
    pass


class NotReciprocal(UsageError):
    pass


class OddDegree(UsageError):
    pass


class DivisionByZeroFunction(UsageError, ZeroDivisionError):
    pass


class NonIntegerPole(UsageError):
    pass


class RepeatedPole(UsageError):
    pass


class OddSize(UsageError):
    pass


class NotAntisymmetric(UsageError):
    pass


class PatternViolation(UsageError):
    pass


class ConvergenceViolation(UsageError):
    pass


class DegenerateForm(NumericFailure):
    pass


class SymmetryViolation(UsageError):
    pass


class ZeroNotBracketed(NumericFailure):
    pass


class BudgetExceeded(MdistError):
    pass
