class RPlusError(Exception):
    """Base class for every error raised by the package."""


class PreconditionError(RPlusError, ValueError):
    pass


class InternalInconsistency(RPlusError, AssertionError):
    """Raised when an exact identity that must hold is violated."""


class PrecisionCapExceeded(RPlusError):
    pass


class SearchBudgetExhausted(RPlusError):
    pass
