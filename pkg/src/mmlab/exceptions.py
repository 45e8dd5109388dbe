class MMLabError(Exception):
    """Base class for all errors raised by mmlab."""


class RingMismatchError(MMLabError, ValueError):
    """Operands live in different polynomial rings."""


class NotHomogeneousError(MMLabError, ValueError):
    """A polynomial is not homogeneous with respect to the requested grading."""


class ParseError(MMLabError, ValueError):
    """Malformed polynomial or session text.

    The offending position is kept on the instance so callers can point at it.
    """

    def __init__(self, message, line=1, column=1):
        self.message = message
        self.line = line
        self.column = column
        super().__init__(f"{message} (line {line}, column {column})")


class UnsupportedClaimError(MMLabError, ValueError):
    """A verification was requested for a (claim, mode, field) combination that cannot run."""
