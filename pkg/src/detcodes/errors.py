"""Exception types shared across the package."""


class DetcodeError(Exception):
    """Base class for all errors raised by this package."""


class NotPrime(DetcodeError):
    pass


class DegreeZero(DetcodeError):
    pass


class FieldTooLarge(DetcodeError):
    pass


class FieldMismatch(DetcodeError):
    """An element index does not belong to the field it was used with."""


class DivisionByZero(DetcodeError):
    pass


class BadParameters(DetcodeError):
    pass


class EmptyVariety(BadParameters):
    """Projective domain requested with t = 0 (no points)."""


class BudgetExceeded(DetcodeError):
    """An exhaustive enumeration would exceed the configured budget."""


class IndexOutOfRange(DetcodeError):
    pass


class ShapeMismatch(DetcodeError):
    pass


class NotRankOne(DetcodeError):
    pass


class EquationViolated(DetcodeError):
    """Inputs to the rank-1 sum check do not satisfy the matrix equation."""


class NonIntegerDivision(DetcodeError):
    """An exact division failed; signals a formula or implementation bug."""


class InternalFormulaMismatch(DetcodeError):
    """Two closed forms that must agree produced different values."""
