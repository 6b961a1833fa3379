"""Exception types raised by choikit."""


class ChoikitError(Exception):
    """Base class for all library errors."""


class DimensionMismatch(ChoikitError, ValueError):
    pass


class NotHermitian(ChoikitError, ValueError):
    pass


class NotSymmetric(ChoikitError, ValueError):
    pass


class NotPSD(ChoikitError, ValueError):
    pass


class SingularBasis(ChoikitError, ValueError):
    pass


class SingularForm(ChoikitError, ValueError):
    pass


class SingularIsomorphism(ChoikitError, ValueError):
    pass


class SingularS(ChoikitError, ValueError):
    pass


class InvalidK(ChoikitError, ValueError):
    pass


class NumericalBreakdown(ChoikitError, ArithmeticError):
    """No vector with usable self-pairing left in the complement."""
