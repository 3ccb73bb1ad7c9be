"""Exception types shared across the package."""


class InvalidArgument(ValueError):
    """Input violates an operation's preconditions."""


class NotFound(LookupError):
    """Requested item is not in a built-in library."""


class VerificationError(RuntimeError):
    """A numerical property that must hold did not hold.

    ``worst`` carries whatever locates the failure (an angle, a lag) when the
    raiser knows it.
    """

    def __init__(self, message, worst=None):
        super().__init__(message)
        self.worst = worst
