class BudgetError(ValueError):
    """A requested computation exceeds the supported desk-scale size."""


class PreconditionError(ValueError):
    """Inputs violate a documented precondition of the operation."""


class VanishingPatternError(ArithmeticError):
    """A characteristic polynomial coefficient that must vanish did not."""
