"""Exception hierarchy shared by all modules."""


class AlgebraError(Exception):
    """Base class for every error raised by this package."""


class InputError(AlgebraError):
    """Malformed input: bad field spec, duplicate variables, unknown names."""


class ParseError(InputError):
    """Text that does not conform to the polynomial or form grammar."""

    def __init__(self, message: str, position: int | None = None):
        if position is not None:
            message = f"{message} (at offset {position})"
        super().__init__(message)
        self.position = position


class PreconditionError(AlgebraError):
    """A mathematical precondition is violated (non-homogeneous input,
    infinite quotient, d < 2r, ...)."""


class InconclusiveError(AlgebraError):
    """A randomized procedure exhausted its sampling budget without a
    certificate either way; the caller must not treat this as a verdict."""
