"""Exception types shared across the package."""


class FolkmanError(Exception):
    """Base class for all errors raised by this package."""


class RejectedInput(FolkmanError, ValueError):
    """Input violates an operation's stated precondition."""


class AdvisoryRejection(RejectedInput):
    """Request is well formed but outside the supported scale; the message
    says what would be needed."""


class PrecisionLimitError(FolkmanError):
    """Exact evaluation was requested beyond the supported precision range."""


class BudgetExceeded(FolkmanError):
    """A search used up its node or constraint budget before reaching a
    conclusive answer."""

    def __init__(self, message: str, nodes: int = 0):
        super().__init__(message)
        self.nodes = nodes
