"""Exception types raised across the package."""


class PerceptionDomainError(ValueError):
    """A value lies outside the domain an operation is defined on."""


class GridError(PerceptionDomainError):
    """Samples do not cover, or do not lie on, the dyadic grid of a resolution.

    ``missing`` holds absent centers, ``off_grid`` the offending x values.
    """

    def __init__(self, message, missing=(), off_grid=()):
        super().__init__(message)
        self.missing = list(missing)
        self.off_grid = list(off_grid)


class ModelFormatError(ValueError):
    """A serialized model document is malformed or unsupported."""
