class InvalidGroupError(ValueError):
    """A Cayley table or group spec that does not describe a group."""


class SpecParseError(ValueError):
    pass


class BudgetExceeded(RuntimeError):
    """A brute-force computation was refused because it exceeds its cap.

    Callers that produce reports turn this into a ``skip`` status; it is never
    swallowed into a partial answer.
    """


class CriterionInapplicable(ValueError):
    """The order-p criterion only holds for odd primes and non-abelian groups."""


class TheoremViolation(AssertionError):
    """A construction that the theory guarantees has failed."""
