"""Exception types raised across the package."""


class QrlabError(ValueError):
    """Base class for domain errors."""


class DomainError(QrlabError):
    """A parameter lies outside the range where a result is defined."""


class DegeneratePointError(QrlabError):
    """The analytic part g has (numerically) vanishing derivative at a point."""

    def __init__(self, point, message=None):
        self.point = point
        super().__init__(message or f"|g'(z)| < 1e-14 at z = {point!r}")


class NotQuasiregularError(QrlabError):
    """Sampled dilatation reaches 1."""


class SingularMatrixError(QrlabError):
    pass


class CoincidentPointsError(QrlabError):
    pass


class BranchError(QrlabError):
    """Principal power requested on the closed negative real axis or at 0."""


class QuadratureError(QrlabError):
    """Non-finite integrand value at a quadrature node."""

    def __init__(self, index, value, message=None):
        self.index = index
        self.value = value
        super().__init__(message or f"non-finite integrand value {value!r} at node {index}")


class NearZeroError(QrlabError):
    """A formula with a negative power of |f| or |u| was evaluated where it nearly vanishes."""
