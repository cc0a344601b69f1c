"""Exception types shared across the package."""


class RemsDenoiseError(Exception):
    """Base class for errors raised by this package."""


class EmptyInputError(RemsDenoiseError, ValueError):
    """An operation received an empty series."""


class InputTooShortError(RemsDenoiseError, ValueError):
    """The series is shorter than the operation requires."""


class AlignmentError(RemsDenoiseError, ValueError):
    """Two series that must be aligned have mismatched lengths/timestamps."""


class UnsupportedWaveletError(RemsDenoiseError, ValueError):
    """Requested wavelet family/order is not in the shipped filter set."""


class ConfigurationError(RemsDenoiseError, ValueError):
    """Invalid pipeline or method configuration."""


class IngestionError(RemsDenoiseError, ValueError):
    """Input file could not be ingested (missing, unmapped, or no valid rows)."""
