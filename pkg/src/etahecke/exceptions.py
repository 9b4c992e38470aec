"""Exception hierarchy shared by every module of the package."""


class EtaHeckeError(Exception):
    """Base class for all errors raised by etahecke."""


class InsufficientTruncation(EtaHeckeError, ValueError):
    """A coefficient beyond the known window of a series was requested."""


class NonInvertibleSeries(EtaHeckeError, ZeroDivisionError):
    """Inversion of a series that vanishes to its known order."""


class ParameterError(EtaHeckeError, ValueError):
    """Parameters violate a hypothesis (parity, primality, integrality...)."""


class DecompositionError(EtaHeckeError, ArithmeticError):
    """A series is not a polynomial in the requested basis."""

    def __init__(self, message, exponent=None):
        super().__init__(message)
        self.exponent = exponent


class VerificationError(EtaHeckeError, AssertionError):
    """A computed object contradicts a structural prediction (pole order...)."""
