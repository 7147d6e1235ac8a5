"""Exception types shared across the package."""


class HolohideError(Exception):
    """Base class for all package errors."""


class ParameterError(HolohideError, ValueError):
    """Invalid physical parameter or malformed operand."""


class FormatError(HolohideError, ValueError):
    """Malformed on-disk data (IDX files, manifests, image files).

    Carries ``offset`` when the problem is tied to a byte position.
    """

    def __init__(self, message, offset=None):
        if offset is not None:
            message = f"{message} (at byte offset {offset})"
        super().__init__(message)
        self.offset = offset


class UndefinedMetricError(HolohideError, ValueError):
    """Metric is mathematically undefined for the given inputs."""
