""" Error hierarchy raised by the SDK. """

from typing import Sequence, Tuple


class EvolutionAlgebraError(Exception):
    """Root of every error raised by the SDK."""


class InvalidInputError(EvolutionAlgebraError, ValueError):
    """Malformed matrices, vectors, labels or parameters."""


class NotNaturalError(EvolutionAlgebraError):
    """A basis change does not keep the basis elements pairwise annihilating."""


class SingularChangeError(EvolutionAlgebraError):
    """A basis change matrix is not invertible within tolerance."""


class RankNotOneError(EvolutionAlgebraError):
    """The derived subalgebra is not one-dimensional."""


class DivisionByNearZeroError(EvolutionAlgebraError):
    """A closed-form prediction divides by a fixed-point coordinate that is numerically zero."""


class NoFixedPointError(EvolutionAlgebraError):
    """The requested canonical form has no non-zero fixed point."""


class ToleranceViolationError(EvolutionAlgebraError):
    """A witness failed independent re-verification."""


class ClassificationFailedError(EvolutionAlgebraError):
    """
    No verified witness was found.

    Attributes
    ----------
    trace: Tuple[str, ...]
        The case labels visited before giving up.
    """

    def __init__(self, message: str, trace: Sequence[str] = ()):
        super().__init__(message)
        self.trace: Tuple[str, ...] = tuple(trace)

    def __str__(self) -> str:
        message: str = super().__str__()
        if not self.trace:
            return message
        return f"{message} (trace: {' > '.join(self.trace)})"
