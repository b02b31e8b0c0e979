"""Exception types shared across the package."""


class InvalidInput(ValueError):
    """Raised when an argument violates an operation's precondition."""


class NoPath(ValueError):
    """Raised when two vertices lie in different connected components."""


class SearchLimit(RuntimeError):
    """Raised when an exhaustive search exceeds its configured bound."""
