"""Exception types shared across the package."""


class OvermomentsError(Exception):
    """Base class for all package-specific errors."""


class NonUnitConstantTerm(OvermomentsError):
    """Series inversion requires constant coefficient +1 or -1."""


class OversizeRequest(OvermomentsError):
    """A resource guard tripped (enumeration budget, quadrature size cap)."""


class OutOfRange(OvermomentsError):
    """Requested index lies outside the computed table or series range."""


class NonConvergent(OvermomentsError):
    """Numeric evaluation requested outside the domain of convergence."""


class PrecisionLoss(OvermomentsError):
    """Cancellation exceeded the available guard precision."""


class QuadratureFailure(OvermomentsError):
    """Adaptive quadrature failed to reach the requested tolerance."""


class Inconclusive(OvermomentsError):
    """A numeric model-selection fit could not separate the candidates."""
