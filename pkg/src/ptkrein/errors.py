"""Exception hierarchy shared by all analysis modules."""


class PTKreinError(Exception):
    """Base class for every error raised by the package."""


class DimensionError(PTKreinError, ValueError):
    """Operands have incompatible or non-square shapes."""


class PreconditionError(PTKreinError, ValueError):
    """An input violates an operation's documented precondition."""


class NumericalError(PTKreinError, ArithmeticError):
    """A numerical step failed or produced an untrustworthy result.

    ``diagnostics`` carries whatever quantities explain the failure
    (residuals, ranks, condition estimates).
    """

    def __init__(self, message, **diagnostics):
        super().__init__(message)
        self.diagnostics = diagnostics


class IllConditionedError(NumericalError):
    """Tolerance-dependent decisions could not be made consistently."""


class TheoremViolationError(PTKreinError):
    """The matrix is not similar to its complex conjugate, so no metric exists."""

    def __init__(self, message, evidence=None):
        super().__init__(message)
        self.evidence = evidence


class PairingError(NumericalError):
    """Conjugate eigenvalue clusters carry different Jordan block sizes."""
