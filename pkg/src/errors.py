"""Domain exceptions raised by the toolkit.

Every exception derives from ``ToolkitError``. The CLI prints ``<name>: <message>``
on stderr and maps ``exit_code`` to the process status.
"""

from typing import Optional


class ToolkitError(Exception):
    """Base class for all domain errors."""

    exit_code: int = 1

    @property
    def name(self) -> str:
        return type(self).__name__


class InvalidInput(ToolkitError):
    """Malformed polynomial, polytope or parameter input."""


class DegenerateHull(ToolkitError):
    """Affine hull has lower dimension than required."""


class DegenerateSupport(ToolkitError):
    """Support spans a point or a segment instead of a polygon."""


class UnsupportedDimension(ToolkitError):
    """Ambient dimension is above the exact-geometry limit."""


class BudgetExceeded(ToolkitError):
    """Enumeration would exceed the configured budget."""

    def __init__(self, estimated: int, budget: int, what: str = "enumeration"):
        self.estimated = estimated
        self.budget = budget
        super().__init__(f"{what} needs ~{estimated} cells, budget is {budget}")


class NegativeMultiplicity(ToolkitError):
    """A curve weight came out negative."""


class MethodDisagreement(ToolkitError):
    """The slope and strata curve-weight methods disagree."""


class InvalidFaceData(ToolkitError):
    """Face volumes inconsistent with a convex lattice polytope."""


class UnsupportedCornerConfiguration(ToolkitError):
    """A boundary corner falls outside the handled stratum cases."""


class NegativeAssembledWeight(ToolkitError):
    """Assembled surface weights contain a negative multiplicity."""


class AssemblyMismatch(ToolkitError):
    """Assembled surface weights do not sum to the normalized volume."""


class NegativeHodgeNumber(ToolkitError):
    """Residue-class Hodge number is negative (non-generic class or modulus too small)."""


class UnsupportedN(ToolkitError):
    """Requested n is outside the limits of the chosen distribution mode."""


class InsufficientMultiplicity(ToolkitError):
    """T_G asked for more weights than the adjoint vector holds."""


class InvalidHodgeVector(ToolkitError):
    """Hodge vector has negative entries or lacks the symmetry a group requires."""


class VerificationFailed(ToolkitError):
    """Re-running a recorded command produced a different digest."""


class BoundViolated(ToolkitError):
    """A finite-field point count falls outside the predicted Weil window."""

    exit_code = 3

    def __init__(self, message: str, degree: Optional[int] = None):
        self.degree = degree
        super().__init__(message)
