"""Exception types shared across the package."""


class CologicError(Exception):
    """Base class for every error this package raises deliberately."""


class ParseError(CologicError):
    """Syntax error; carries a 1-based line/column inside the offending token."""

    def __init__(self, message: str, line: int, column: int, origin: str = "<string>"):
        super().__init__(f"{origin}:{line}:{column}: {message}")
        self.message = message
        self.line = line
        self.column = column
        self.origin = origin


class InstantiationError(CologicError):
    """An arithmetic or comparison argument did not resolve to an integer."""


class EvaluationError(CologicError):
    """Integer arithmetic failed on otherwise well-formed input (division by zero)."""


class ResourceLimitError(CologicError):
    """The configured step budget ran out before the search finished.

    Distinct from failure: the query may still have answers that were not
    reached.
    """


class UnsupportedProgramError(CologicError):
    """The declarative-semantics oracle only accepts constants-and-variables programs."""


class InternalError(CologicError):
    """Invariant violation inside the package; always a bug, never user error."""
