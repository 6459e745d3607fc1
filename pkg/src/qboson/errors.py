"""Exception types shared across the package."""


class QbosonError(Exception):
    """Base class for package-specific errors."""


class CapExceededError(QbosonError):
    """A size/cost cap was exceeded (matrix dimension, qubit count, ...)."""


class SpecFileError(QbosonError):
    """A Hamiltonian spec file could not be parsed or validated."""


class VerificationError(QbosonError):
    """A numerical verification exceeded its tolerance."""
