"""Exception taxonomy shared by all modules.

Every failure mode that a caller can sensibly catch gets its own class.
Programming errors (wrong argument types, impossible shapes created by the
caller) stay plain ValueError/TypeError.
"""


class BlochwaveError(Exception):
    """Base class for all package-specific errors."""


class DimensionMismatch(BlochwaveError):
    """Operands have incompatible shapes for the requested operation."""


class ConvergenceFailure(BlochwaveError):
    """An iterative dense kernel (eigensolver) failed to converge."""


class NotPositiveDefinite(BlochwaveError):
    """Matrix square root requested for a matrix with a nonpositive eigenvalue."""

    def __init__(self, message: str, eigenvalue: float | None = None):
        super().__init__(message)
        self.eigenvalue = eigenvalue


class SpectraOverlap(BlochwaveError):
    """Sylvester equation has no unique solution: spectra of the two
    coefficient matrices (nearly) intersect."""

    def __init__(self, message: str, closest_pair: tuple[complex, complex] | None = None):
        super().__init__(message)
        self.closest_pair = closest_pair


class DeltaSingular(BlochwaveError):
    """Fast block is singular or too close to singular to invert."""


class DeltaZero(BlochwaveError):
    """Two-photon detuning is zero; the manifold coefficients are undefined."""


class NotConverged(BlochwaveError):
    """Fixed-point iteration exhausted its budget above tolerance."""

    def __init__(self, message: str, last_residual: float | None = None):
        super().__init__(message)
        self.last_residual = last_residual


class BadTargets(BlochwaveError):
    """Requested scale targets for a random instance are unreachable."""


class NotASolution(BlochwaveError):
    """Operation requires an (approximate) embedding-equation solution and the
    supplied candidate's residual is too large."""


class NotUnitary(BlochwaveError):
    """Supplied transformation deviates from unitarity beyond tolerance."""


class SlowSectorEmpty(BlochwaveError):
    """Density matrix has (numerically) no weight in the dressed slow sector."""


class GridMismatch(BlochwaveError):
    """Two trajectories do not share the same time grid."""
