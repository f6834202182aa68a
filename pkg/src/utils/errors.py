"""Exception hierarchy shared by every qgase package.

Validation problems (bad graphs, words, flags) derive from ``ValidationError``;
solver breakdowns derive from ``NumericalError``. The CLI turns the
``exit_code`` attribute into the process exit status.
"""


class QgaseError(Exception):
    """Base class for all qgase errors."""

    exit_code = 1


class ValidationError(QgaseError, ValueError):
    """Input rejected before any computation."""

    exit_code = 2


class NumericalError(QgaseError, ArithmeticError):
    """Numerical failure during a scattering or quadrature computation."""

    exit_code = 3


# Graph structure

class SelfLoopError(ValidationError):
    pass


class DuplicateEdgeError(ValidationError):
    pass


class IndexOutOfRangeError(ValidationError, IndexError):
    pass


class InvalidLengthError(ValidationError):
    pass


class InvalidChannelError(ValidationError):
    pass


class DirichletOnInteriorVertexError(ValidationError):
    pass


class DisconnectedChannelError(ValidationError):
    pass


class FractionOutOfRangeError(ValidationError):
    pass


class NonPositiveFactorError(ValidationError):
    pass


class GraphFileError(ValidationError):
    pass


# Entropy / families / ensemble

class NotEquilateralError(ValidationError):
    pass


class EmptyWordError(ValidationError):
    pass


class WordTooShortError(ValidationError):
    pass


class TooFewSamplesError(ValidationError):
    pass


# Command line

class UsageError(ValidationError):
    pass


class UnknownFlagError(UsageError):
    pass


class MissingRequiredError(UsageError):
    pass


class ConflictingFlagsError(UsageError):
    pass


# Numerics

class SingularSystemError(NumericalError):
    """Path system (near-)singular at a resonant wave number."""

    def __init__(self, k: float, pivot: float):
        super().__init__(k, pivot)
        self.k = k
        self.pivot = pivot

    def __str__(self) -> str:
        return f"Path system singular at k={self.k!r} (smallest pivot {self.pivot:.3e})"


class NoConvergenceError(NumericalError):
    pass


class NormalizationFailureError(NumericalError):
    pass


class EnsembleSampleError(QgaseError):
    """A single ensemble sample failed; carries where it happened."""

    def __init__(self, size: int, sample_index: int, message: str, exit_code: int = 1):
        super().__init__(size, sample_index, message, exit_code)
        self.size = size
        self.sample_index = sample_index
        self.message = message
        self.exit_code = exit_code

    def __str__(self) -> str:
        return f"Sample {self.sample_index} of size {self.size} failed: {self.message}"
