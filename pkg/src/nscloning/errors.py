"""Exception types raised across the package."""


class DomainError(ValueError):
    """An index or parameter lies outside its mathematical domain."""


class FidelityOutOfRangeError(ValueError):
    """Requested fidelity is not attainable by any cloner in the family."""

    def __init__(self, fidelity, lo, hi):
        self.fidelity = fidelity
        self.lo = lo
        self.hi = hi
        super().__init__(f"fidelity {fidelity} outside allowed interval [{lo}, {hi}]")


class OracleSizeError(ValueError):
    """Full-space oracle requested beyond the supported qubit count."""


class DensityValidationError(ValueError):
    """Input matrix is not a valid density matrix."""


class DegenerateGeometryError(ValueError):
    """Mixture geometry with vanishing sin(theta) + sin(theta')."""


class SpectralGapError(RuntimeError):
    """Eigenvalue count is ill-posed because the spectral gap is too small."""
