"""Exception types shared across the package."""


class Lin2Error(ValueError):
    """Base class for all errors raised by maxlin2."""


class DimensionError(Lin2Error):
    """Operands disagree on the number of variables or columns."""


class PreconditionError(Lin2Error):
    """An input violates an algorithm's precondition.

    ``condition`` names the violated inequality or property, e.g. ``"n < (k-1)r+1"``.
    """

    def __init__(self, condition: str, message: str | None = None):
        self.condition = condition
        super().__init__(message or condition)


class ParseError(Lin2Error):
    """Malformed instance file; ``lineno`` is 1-based (0 when unknown)."""

    def __init__(self, message: str, lineno: int = 0):
        self.lineno = lineno
        super().__init__(f"line {lineno}: {message}" if lineno else message)
