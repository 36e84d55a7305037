"""Exception types shared across the package."""


class SdepthError(Exception):
    """Base class for all errors raised by this package."""


class EmptySetError(SdepthError):
    """A circular set that must be nonempty is empty."""


class DensityOutOfRangeError(SdepthError):
    """A density is below 1 or too large for the given set and universe."""


class UniverseMismatchError(SdepthError):
    """Two values that must live on the same circle have different universes."""


class SizeMismatchError(SdepthError):
    """A set does not have the cardinality required by the operation."""


class SOutOfRangeError(SdepthError):
    """The lift multiplicity s exceeds its admissible maximum."""


class PreconditionViolatedError(SdepthError):
    """An operation hypothesis does not hold; the operation refuses to guess."""


class InvalidPartitionError(SdepthError):
    """A claimed interval partition failed verification."""


class InternalCheckError(SdepthError):
    """A self-check that must hold by construction failed (a bug, not bad input)."""


class PartitionFileError(SdepthError):
    """A partition certificate file is malformed."""

    def __init__(self, message: str, lineno: int | None = None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)
