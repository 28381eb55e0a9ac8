"""Exception types shared across the package."""


class BallCollisionError(Exception):
    """Base class for errors raised by this package."""


class CapExceededError(BallCollisionError, RuntimeError):
    """A configured size cap (field table, oracle enumeration) was exceeded."""


class DegenerateMatrixError(BallCollisionError, ValueError):
    """The parity-check matrix does not have full row rank."""


class InfeasibleParametersError(BallCollisionError, ValueError):
    """Algorithm parameters violate their feasibility constraints."""


class ParseError(BallCollisionError, ValueError):
    """An instance document is malformed."""
