"""Exception types raised by the numerical routines."""


class DomainError(ValueError):
    """Argument outside the supported domain of a function."""


class AccuracyError(ArithmeticError):
    """A series or quadrature failed to reach its requested tolerance."""


class RangeError(OverflowError):
    """Result exceeds the double precision floating range."""
