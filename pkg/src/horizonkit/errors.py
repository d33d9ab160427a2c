"""Exception types shared across the package."""


class HorizonKitError(Exception):
    """Base class for all package errors."""


class DimensionMismatchError(HorizonKitError):
    """Two points with different spatial dimensions were combined."""


class EmptySliceError(HorizonKitError):
    """A past cone was sliced by a plane at or above the apex."""


class OutsideRegionError(HorizonKitError):
    """A query point was required to lie in the open region but does not."""


class NonDifferentiableError(HorizonKitError):
    """Gradient requested at a point with more than one nearest boundary point."""


class CornerError(HorizonKitError):
    """Boundary point has no well-defined inward normal."""


class CreaseExhaustionError(HorizonKitError):
    """No crease point could be found inside the requested window."""


class CreaseSaturatedError(HorizonKitError):
    """Too few multiplicity-1 probes around a point to classify it."""


class StructureViolationError(HorizonKitError):
    """A generator profile violates the monotone label structure."""


class ParamError(HorizonKitError):
    """Harness or classifier parameters are infeasible (ordering, margins, P2)."""


class SceneParseError(HorizonKitError):
    """A scene file is malformed or contains unknown keys."""
