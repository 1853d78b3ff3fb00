"""Exception types shared across the package."""


class CFPrimeError(Exception):
    """Base class for all package-specific errors."""


class SquareInputError(CFPrimeError, ValueError):
    """The radicand is a perfect square, so sqrt(D) has no periodic expansion."""


class BudgetExceededError(CFPrimeError, RuntimeError):
    """A period budget or memory budget ran out before the computation finished."""


class DomainError(CFPrimeError, ValueError):
    """Family parameters violate the family's stated domain constraints."""


class InvariantViolationError(CFPrimeError, RuntimeError):
    """An exact-arithmetic internal invariant failed (corrupted state or bug)."""
