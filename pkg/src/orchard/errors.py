"""Exception types shared across the package."""


class OrchardError(Exception):
    """Base class for all package-specific errors."""


class NonGenericError(OrchardError):
    """A configuration violates genericity (collinear triple or duplicate point).

    ``detail`` carries the offending indices: a pair for duplicates, a
    triple for collinearities.
    """

    def __init__(self, message: str, detail: tuple[int, ...] | None = None):
        super().__init__(message)
        self.detail = detail


class IndexOutOfRangeError(OrchardError, IndexError):
    """A point index does not exist in the configuration."""


class InvalidChirotopeError(OrchardError):
    """A sign map is not the chirotope of any generic planar configuration."""


class IllegalFlipError(OrchardError):
    """The requested triple cannot be flipped (combinatorially or geometrically)."""


class NotClosePairError(OrchardError):
    """The two points are not infinitesimally close (separating count is nonzero)."""


class ConeOutOfRangeError(OrchardError, IndexError):
    """Cone index outside ``[0, n-1)`` for point doubling."""


class PlacementFailedError(OrchardError):
    """No point placement satisfying the construction's postcondition was found."""


class PrecisionExhaustedError(OrchardError):
    """A rational approximation could not be certified within the precision budget."""


class MalformedFileError(OrchardError):
    """An input file does not match its declared format."""


class BudgetExceededError(OrchardError):
    """The census enumeration exceeded its configured wall-clock budget."""


class PointFormatError(OrchardError, ValueError):
    """A points or chirotope text file could not be parsed."""
