"""Exception types shared across the package.

CLI mapping: InputError and its subclasses exit with code 2 (bad input or a
failed hypothesis). Refutation outcomes are ordinary return values, except
where an operation cannot proceed at all (for example factoring a matrix
that is not positive semidefinite).
"""


class InputError(ValueError):
    """Malformed input or violated invariant."""


class DomainError(InputError):
    """Point outside the open unit ball or disk."""


class IrreducibilityError(InputError):
    """A kernel entry that must be nonzero is zero."""


class PreconditionError(InputError):
    """An operation's stated precondition does not hold."""


class NotPsdError(PreconditionError):
    """Matrix failed the positive-semidefiniteness check.

    Carries the offending smallest eigenvalue.
    """

    def __init__(self, message: str, min_eig: float):
        super().__init__(message)
        self.min_eig = min_eig


class NotCnpError(NotPsdError):
    """Sample refutes the complete Nevanlinna-Pick property."""


class InconsistentSampleError(InputError):
    """Embedding produced points outside the open unit ball."""


class HypothesisError(PreconditionError):
    """A classification hypothesis failed; names which one."""

    def __init__(self, message: str, hypothesis: str):
        super().__init__(message)
        self.hypothesis = hypothesis


class ClassificationError(PreconditionError):
    """Operation requires a different classification outcome."""


class WindowOverflowError(InputError):
    """Requested computation does not fit the degree window."""
