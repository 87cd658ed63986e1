"""Exception hierarchy shared by all modules."""


class OrientdError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(OrientdError, ValueError):
    def __init__(self, message, lineno=None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)


class RangeError(ParseError):
    """A numeric value (capacity, label, vertex id) lies outside its range."""


class ValidationError(OrientdError, ValueError):
    """Structurally invalid input: self-loops, duplicate edges, bad ids."""


class DecompositionError(OrientdError, ValueError):
    """A tree decomposition or clique-width expression is invalid."""


class SolverError(OrientdError, RuntimeError):
    pass


class GuardError(SolverError):
    """Refusal to run an exponential routine on an instance above its guard."""
