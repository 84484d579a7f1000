"""Exception hierarchy shared across the package."""


class EntmatError(Exception):
    """Base class for all package errors."""


class InvalidSizeError(EntmatError, ValueError):
    pass


class GraphValidationError(EntmatError, ValueError):
    pass


class InvalidBipartitionError(EntmatError, ValueError):
    pass


class SizeLimitError(EntmatError):
    """Requested size is beyond what a backend or enumerator supports."""


class CoincidenceAmbiguityError(EntmatError):
    """Two geometric features sit too close to call at the working tolerance."""


class UnsupportedParityError(EntmatError, ValueError):
    pass


class DomainError(EntmatError, ValueError):
    pass


class AttributionError(EntmatError):
    pass


class NumericalError(EntmatError):
    """A floating-point result is too far from the exact value it should round to."""
