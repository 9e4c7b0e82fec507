"""Shared exception types."""


class DimensionError(ValueError):
    """Operands have incompatible shapes."""


class DomainError(ValueError):
    """Input entries violate a domain restriction (e.g. non-integer matrix)."""


class InputError(ValueError):
    """Caller-supplied data violates a documented precondition."""


class InfeasibleError(RuntimeError):
    """The feasible region is empty."""


class UnboundedError(RuntimeError):
    """The feasible region is unbounded where boundedness is required."""


class RepresentationMismatch(RuntimeError):
    """The two conic representations of a point do not agree."""


class ClaimViolation(AssertionError):
    """A runtime-checked intermediate claim failed.

    Each failure names the claim so a violation pinpoints which internal
    guarantee broke.
    """

    def __init__(self, claim: str, message: str = ""):
        self.claim = claim
        super().__init__(f"claim {claim} violated" + (f": {message}" if message else ""))
