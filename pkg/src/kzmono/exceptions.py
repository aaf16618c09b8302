"""Exception types shared across the package."""


class ContextMismatch(ValueError):
    """Operands live in different cyclotomic fields or belong to different weights."""


class DegenerateWeight(ValueError):
    """sin(theta) vanishes, so C = csc(theta) is undefined."""


class StillerGateError(ValueError):
    """The pair (y1, y3) is not a fundamental system for this weight."""


class ResonantWeight(ValueError):
    """Indicial exponents at the cusp differ by a nonzero integer (logarithmic case)."""


class CriterionInapplicable(ValueError):
    pass


class VerificationFailure(RuntimeError):
    """An internally constructed certificate failed its own re-verification."""


class GammaPole(ValueError):
    """Gamma evaluated at a non-positive integer."""

    def __init__(self, n: int):
        super().__init__(f"Gamma has a pole at {n}")
        self.n = n
