"""Exception types shared across the package."""


class InvalidInput(ValueError):
    """A tuple, content, or parameter violates its domain."""


class DegenerateOrbit(RuntimeError):
    """Two cyclic shifts of a content coincide, so its orbit is not full-size."""


class ResourceBoundExceeded(RuntimeError):
    """An exhaustive run was refused because it exceeds the configured bound."""
