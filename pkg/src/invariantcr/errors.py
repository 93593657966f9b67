"""Exception hierarchy shared by all modules."""


class InvariantCRError(Exception):
    """Base class for all errors raised by this package."""


class BadParameters(InvariantCRError, ValueError):
    pass


class DimensionMismatch(InvariantCRError, ValueError):
    pass


class NotUnitary(InvariantCRError, ValueError):
    pass


class OrderExceeded(InvariantCRError):
    """Group closure grew past the configured bound."""


class EnumerationInvalid(InvariantCRError):
    """The B^j A^k enumeration of a metacyclic group has collisions."""


class NotDiagonalSupport(InvariantCRError, ValueError):
    pass


class NonRationalCoefficient(InvariantCRError, ValueError):
    pass


class NonIntegerCoefficient(InvariantCRError, ValueError):
    pass


class NotHermitian(InvariantCRError, ValueError):
    pass


class PrecisionExhausted(InvariantCRError, ArithmeticError):
    """Interval arithmetic could not separate a nonzero quantity from 0."""


class StructureViolation(InvariantCRError):
    pass


class DomainViolation(InvariantCRError, ValueError):
    pass


class OddPowerPresent(InvariantCRError):
    pass


class VerificationFailed(InvariantCRError):
    pass
