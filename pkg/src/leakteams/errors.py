"""Exception types shared across the package."""


class ValidationError(ValueError):
    """Input data violates a structural constraint (range, duplicate, unknown member...)."""


class MatrixKindError(ValueError):
    """A matrix of the wrong kind (direct/closure/symmetrized) was supplied."""


class NoChannelError(ValueError):
    """No directed propagation channel exists between the requested members."""
