"""Exception hierarchy for the coupling library.

Configuration-type errors (bad geometry, non-divisible lengths, unknown
names) are distinguished from numerical failures so the CLI can map them
to different exit codes.
"""


class CouplingError(Exception):
    """Base class for all library errors."""


class ConfigurationError(CouplingError):
    """Invalid parameter combination, e.g. a length not divisible by a grid size."""


class GeometryError(CouplingError):
    """Geometry violates a model assumption (interfaces too close to the boundary)."""


class RangeError(CouplingError):
    """Coordinate lies outside the span it must belong to."""


class SupportError(CouplingError):
    """No admissible interpolation support contains the target point."""


class DegenerateSupportError(CouplingError):
    """Interpolation nodes are not distinct."""


class StencilRangeError(CouplingError):
    """A finite-difference or nonlocal stencil reaches outside the grid."""


class AssemblyError(CouplingError):
    """Internal consistency failure during system assembly (row census mismatch)."""


class SingularSystemError(CouplingError):
    """The assembled matrix is numerically singular."""
