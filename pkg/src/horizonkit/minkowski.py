"""Causal primitives of flat d+1 Minkowski space.

Points carry a spatial vector and a time coordinate; the speed of light
is 1.  All predicates are closed-form and exact up to floating point.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionMismatchError, EmptySliceError


def _as_spatial(x) -> np.ndarray:
    v = np.asarray(x, dtype=float)
    if v.ndim == 0:
        v = v.reshape(1)
    if v.ndim != 1:
        raise ValueError("spatial position must be a flat vector")
    if not np.all(np.isfinite(v)):
        raise ValueError("spatial coordinates must be finite")
    return v


@dataclass(frozen=True)
class SpacetimePoint:
    """Event with spatial position ``x`` (length d) and time ``t``."""

    x: np.ndarray
    t: float

    def __post_init__(self):
        object.__setattr__(self, "x", _as_spatial(self.x))
        object.__setattr__(self, "t", float(self.t))
        if not np.isfinite(self.t):
            raise ValueError("time coordinate must be finite")

    @property
    def dim(self) -> int:
        return self.x.shape[0]


@dataclass(frozen=True)
class SphereSlice:
    """Boundary of a past cone cut by a constant-time plane.

    The slice of J^-(p) by {t = plane_time} is the closed ball of radius
    p.t - plane_time around p.x; this object is its spherical boundary.
    Every normal curvature of the sphere equals 1/radius.
    """

    center: np.ndarray = field()
    radius: float = field()
    plane_time: float = field()

    def __post_init__(self):
        object.__setattr__(self, "center", _as_spatial(self.center))
        object.__setattr__(self, "radius", float(self.radius))
        object.__setattr__(self, "plane_time", float(self.plane_time))
        if self.radius < 0:
            raise ValueError("radius must be nonnegative")

    @property
    def curvature(self) -> float:
        return 1.0 / self.radius

    def contains(self, y, tol: float = 1e-12) -> bool:
        """True if the spatial point y lies on the sphere within tol."""
        y = _as_spatial(y)
        return abs(float(np.linalg.norm(y - self.center)) - self.radius) <= tol


def _check_dims(q: SpacetimePoint, p: SpacetimePoint):
    if q.dim != p.dim:
        raise DimensionMismatchError(
            f"spatial dimensions differ: {q.dim} vs {p.dim}"
        )


def causally_precedes(q: SpacetimePoint, p: SpacetimePoint) -> bool:
    """q is in the causal past J^-(p): |x_q - x_p| <= t_p - t_q."""
    _check_dims(q, p)
    return float(np.linalg.norm(q.x - p.x)) <= p.t - q.t


def chronologically_precedes(q: SpacetimePoint, p: SpacetimePoint) -> bool:
    """q is in the timelike past I^-(p): |x_q - x_p| < t_p - t_q."""
    _check_dims(q, p)
    return float(np.linalg.norm(q.x - p.x)) < p.t - q.t


def past_cone_slice(p: SpacetimePoint, plane_time: float) -> SphereSlice:
    """Slice the past cone of p by the plane {t = plane_time}.

    The interior of the returned sphere equals I^-(p) on that plane.
    """
    plane_time = float(plane_time)
    if plane_time >= p.t:
        raise EmptySliceError(
            f"plane at t={plane_time} does not cut the past cone of a point "
            f"at t={p.t}"
        )
    return SphereSlice(center=p.x.copy(), radius=p.t - plane_time,
                       plane_time=plane_time)
