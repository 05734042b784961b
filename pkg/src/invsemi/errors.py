"""Exception hierarchy. The CLI maps each family to a distinct exit status."""


class InvSemiError(Exception):
    """Base class for every error raised by this package."""


class ParseError(InvSemiError):
    """Malformed input document; ``path`` is a JSON pointer into it."""

    def __init__(self, message, path=""):
        self.path = path or "/"
        super().__init__(f"{self.path}: {message}")


class PreconditionError(InvSemiError, ValueError):
    """An operation was called outside its domain."""


class IllFormedError(PreconditionError):
    """Structurally invalid value (degree mismatch, index out of range, ...)."""


class StructuralError(PreconditionError):
    """Input lacks the algebraic structure an operation needs."""

    def __init__(self, message, witness=None):
        self.witness = witness
        super().__init__(message)


class CertificationError(InvSemiError):
    """A bounded computation could not certify its answer; raise the bound."""

    def __init__(self, message, bound=None, cap=None):
        self.bound = bound
        self.cap = cap
        super().__init__(message)


class UndecidedError(CertificationError):
    """Capped saturation neither joined nor separated two elements."""
