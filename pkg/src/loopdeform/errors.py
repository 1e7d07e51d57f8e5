"""Exception types shared across the package."""


class PoleError(ArithmeticError):
    """A limit, series expansion, or substitution hit a genuine pole."""


class MixedWeightError(ValueError):
    """An operation required a homogeneous-weight element but got a mix."""


class AlphabetMismatchError(ValueError):
    """Two elements over different alphabets were combined."""


class ArityMismatchError(ValueError):
    """Tensor factors of different arity were combined."""


class DegreeBoundExceeded(RuntimeError):
    """Normal-form rewriting produced a word longer than the configured bound."""


class NoSolutionError(ValueError):
    """A linear solve for representation corrections has no solution."""


class UnsupportedAlgebraError(ValueError):
    """An algebra name outside the supported families was requested."""


class InvalidCartanError(ValueError):
    """Cartan data failed validation (symmetrizability, rank, labels)."""


class UnknownGeneratorError(KeyError):
    """A generator name is not part of the alphabet in use."""


class RepValidationError(ValueError):
    """A representation failed to annihilate some defining relation."""


class NotUnitLeadingError(ValueError):
    """A series inverse was requested for a series whose order-0 term is not 1."""
