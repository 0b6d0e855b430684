"""Exception and warning types shared across the package."""


class HsBubblesError(Exception):
    """Base class for all package errors."""


class BadRadius(HsBubblesError):
    """A circle radius is not strictly positive."""


class OutsideError(HsBubblesError):
    """An inner disk is not strictly inside the unit disk."""


class OverlapError(HsBubblesError):
    """Two boundary circles intersect or violate the minimum gap."""


class BadN(HsBubblesError):
    """Node count is too small, odd, or not divisible by 4 where required."""


class AlphaOutside(HsBubblesError):
    """The base point alpha is not strictly interior to the domain."""


class DifferentComponent(HsBubblesError):
    """A same-component kernel was requested for a cross-component pair."""


class LengthMismatch(HsBubblesError):
    """A vector does not match the sampling size."""


class OddN(HsBubblesError):
    """The spectral singular operator requires an even node count."""


class ZeroDimension(HsBubblesError):
    """The linear system has dimension zero."""


class BreakdownError(HsBubblesError):
    """Arnoldi breakdown occurred before the residual tolerance was met."""

    def __init__(self, iterations: int, residual: float):
        self.iterations = iterations
        self.residual = residual
        super().__init__(
            f"Arnoldi breakdown after {iterations} iterations "
            f"with relative residual {residual:.3e}"
        )


class NonConvergence(HsBubblesError):
    """The iterative solver did not reach its tolerance."""

    def __init__(self, iterations: int, residual: float):
        self.iterations = iterations
        self.residual = residual
        super().__init__(
            f"no convergence after {iterations} iterations "
            f"(relative residual {residual:.3e})"
        )


class PointOutside(HsBubblesError):
    """An evaluation point is not strictly interior to the domain."""


class PoleProximity(HsBubblesError):
    """An evaluation point is too close to the pole of the free-space map."""


class ScaleNotAllowed(HsBubblesError):
    """Rescaling is not available for the channel geometry."""


class BadIndex(HsBubblesError):
    """A bubble index is out of range."""


class EmptyGrid(HsBubblesError):
    """The streamline grid has no interior points left after masking."""


class ConvergenceWarning(UserWarning):
    """The iterative solver returned its best iterate above tolerance."""


class SelfIntersectionWarning(UserWarning):
    """A computed bubble boundary intersects itself."""
