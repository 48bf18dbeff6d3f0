"""Exception types raised by weylkit operations."""


class WeylkitError(Exception):
    """Base class for all weylkit domain errors."""


class EmptyInput(WeylkitError):
    """A spectrum was constructed from an empty value sequence."""


class NegativeWeight(WeylkitError):
    """A weight was below the negative tolerance (-1e-12)."""


class NotNormalized(WeylkitError):
    """Weights do not sum to 1 (and normalization was not requested)."""


class ZeroSum(WeylkitError):
    """Normalization was requested but the weights sum to <= 0."""


class InvalidDimension(WeylkitError):
    """A dimension argument was not a positive integer."""


class UndefinedForZeroWeights(WeylkitError):
    """An order-<=0 entropy was requested for a spectrum with zero weights."""


class MuOutOfRange(WeylkitError):
    """Stretch parameter outside [0, 1]."""


class KOutOfRange(WeylkitError):
    """Uniform-family index k outside 1..d."""


class QOutOfRange(WeylkitError):
    """Depolarization parameter outside [0, 1]."""


class SolverDidNotConverge(WeylkitError):
    """A projection solver hit its iteration cap before reaching tolerance."""


class DimensionTooLargeForExact(WeylkitError):
    """Exact volume requested above the supported affine dimension."""
