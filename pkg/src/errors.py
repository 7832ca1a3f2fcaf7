"""Exception hierarchy shared by every package in ``src``."""


class TorsionGrowthError(Exception):
    """Base class for all library errors."""


class DomainError(TorsionGrowthError, ValueError):
    """An argument lies outside the domain of the operation."""


class SingularCurveError(DomainError):
    """The Weierstrass coefficients give a singular model."""


class DependentGeneratorError(DomainError):
    """A requested tower generator is a square times existing generators."""


class FixtureError(DomainError):
    """A fixture file could not be parsed or violates a row invariant."""


class InconsistencyError(TorsionGrowthError, RuntimeError):
    """An internal consistency check failed; this signals a bug upstream."""


class VerificationError(TorsionGrowthError):
    """A report violates one of the classification constraints."""

    def __init__(self, message: str, failures: list[str]):
        super().__init__(message)
        self.failures = failures
