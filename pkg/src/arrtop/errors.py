"""Exception hierarchy shared across the package.

The CLI maps these onto exit codes: ValidationError -> 1,
BudgetError -> 2, ConsistencyError -> 3.
"""


class ArrtopError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(ArrtopError):
    """Bad input: malformed files, invalid arrangements, ill-defined characters."""


class BudgetError(ArrtopError):
    """A search or scan would exceed its configured budget; never truncated silently."""

    def __init__(self, message: str, required: int | None = None, budget: int | None = None):
        super().__init__(message)
        self.required = required
        self.budget = budget


class ConsistencyError(ArrtopError):
    """Two routes that must agree did not; indicates a bug, not bad input."""
