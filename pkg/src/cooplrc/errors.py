"""Exception types shared across the package."""


class CoopLRCError(Exception):
    """Base class for library-specific failures."""


class UncorrectableErasure(CoopLRCError):
    """Raised when an erasure pattern cannot be completed to a codeword."""


class BudgetExceeded(CoopLRCError):
    """Raised when an enumeration exceeds its configured budget."""


class RepairFailure(CoopLRCError):
    """Raised when a repair algorithm cannot make progress.

    Carries optional diagnostic payload (e.g. a stopping set) in ``details``.
    """

    def __init__(self, message, details=None):
        super().__init__(message)
        self.details = details or {}
