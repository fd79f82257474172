"""Exception types shared across the package."""


class PenneyError(Exception):
    """Base class for every error raised by this package."""


class InvalidPatternError(PenneyError, ValueError):
    """A pattern string or pattern length violates the pattern contract."""


class InvalidGameError(PenneyError, ValueError):
    """A game specification is unplayable: equal patterns, mismatched lengths, or a bad coin."""


class DimensionError(PenneyError, ValueError):
    """Matrix or vector dimensions are incompatible with the requested operation."""


class SingularMatrixError(PenneyError, ArithmeticError):
    """Gauss-Jordan elimination found no usable pivot; the matrix is not invertible."""


class NonAbsorbingChainError(PenneyError, ValueError):
    """A chain contains a transient state from which no absorbing state is reachable."""
