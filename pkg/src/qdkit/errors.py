"""Exception hierarchy shared by all qdkit modules."""


class QdkitError(Exception):
    """Base class for all qdkit-specific errors."""


class GeometryError(QdkitError):
    """Invalid curve or domain geometry (non-immersed, self-intersecting,
    wrong orientation, point outside the domain, ...)."""


class ProximityError(QdkitError):
    """Requested evaluation point is too close to the boundary for the
    quadrature resolution at hand."""


class NumericalError(QdkitError):
    """A numerical process failed to certify its result (singular system,
    zero-count mismatch, Dirichlet residual above tolerance, ...)."""


class CapacityError(QdkitError):
    """A configured desk-scale degree/size cap was exceeded."""


class AlgebraError(QdkitError):
    """Degenerate exact-algebra result (zero resultant, common factors)."""


class ConsistencyError(QdkitError):
    """Two independent computations of the same quantity disagree."""


class SpecFormatError(QdkitError):
    """Malformed domain-specification or configuration file."""
