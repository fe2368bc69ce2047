"""Exception types shared across the package."""


class WeylsysError(Exception):
    """Base class for all package-specific errors."""


class NumericsError(WeylsysError):
    pass


class StepUnderflow(NumericsError):
    """Adaptive integrator needed a step below the machine-representable
    threshold; usually signals a near-singularity of the solution."""


class NonFinite(NumericsError):
    """State left the finite range during integration."""


class Divergent(NumericsError):
    """Extrapolated limit grows without bound (genuine infinite limit)."""


class EmptyTable(WeylsysError):
    pass


class UnsortedTable(WeylsysError):
    pass


class OnSpectrum(WeylsysError):
    """Evaluation point lies on [0, +inf), the essential spectrum."""


class RiccatiBlowup(WeylsysError):
    """Riccati integration hit a singularity; for potentials below a
    non-negative operator this should not occur off the real axis."""


class PoleHit(WeylsysError):
    """Evaluation landed on a pole of a linear-fractional transform.
    Poles are genuine spectral points, reported distinctly from errors."""


class InvalidBase(WeylsysError):
    """Extension classification requested over a non-accretive base operator."""


class OutOfRange(WeylsysError):
    """Parameter outside the admissible range of a classification formula."""


class DegeneratePoints(WeylsysError):
    """Two sampling points coincide where distinct points are required."""


class NotInverseStieltjes(WeylsysError):
    """Measure extraction requested for a function that fails the
    inverse Stieltjes sampling test."""
