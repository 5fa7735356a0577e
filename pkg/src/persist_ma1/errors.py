"""Exception hierarchy."""


class PersistError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(PersistError, ValueError):
    """Parameters outside the domain of an operation."""


class NonInvertibleConstantTerm(PersistError, ZeroDivisionError):
    pass


class NonzeroConstantTerm(PersistError, ValueError):
    pass


class ConstantTermNotOne(PersistError, ValueError):
    pass


class InexactDivision(PersistError, ArithmeticError):
    pass


class DivisionByZeroTheta(DomainError):
    pass


class LengthError(PersistError, IndexError):
    pass


class CapExceeded(PersistError, ValueError):
    """The exact DP oracle was asked for more steps than its configured cap."""


class Unreachable(PersistError, RuntimeError):
    """No region formula applies; indicates a classification bug."""
