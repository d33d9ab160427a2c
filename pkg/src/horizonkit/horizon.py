"""Cauchy development and horizon of a planar region in flat spacetime.

For an open set S in the initial plane {t = 0}, the future development
D+(S) consists of events whose every past-directed causal curve lands in
S, and the horizon H+(S) is the graph of the distance-to-complement
function rho over S.  Generators are the lifted straight segments from a
boundary footpoint to the cut point where the nearest boundary point
stops being unique.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import OutsideRegionError, ParamError
from .minkowski import SpacetimePoint
from .region import Region

OPEN_END = math.inf


@dataclass(frozen=True)
class HorizonPoint:
    """Point of H+(S): spatial base in S lifted to height rho(base)."""

    base: np.ndarray
    height: float

    def event(self) -> SpacetimePoint:
        return SpacetimePoint(self.base, self.height)


@dataclass(frozen=True)
class Multiplicity:
    """Number of generators through a horizon point; may be unbounded."""

    count: Optional[int]
    unbounded: bool = False

    def __ge__(self, k: int) -> bool:
        return self.unbounded or (self.count is not None and self.count >= k)


@dataclass(frozen=True)
class Generator:
    """Past-directed null generator of the horizon.

    The spatial track runs from the footpoint on the region boundary to
    the base of the cut point; its lift (footpoint + s*direction, s) lies
    on the horizon for 0 < s <= cut height.  domain_kind is
    "half-open-at-future" when the cut point is attained on the horizon
    and "open" when the generator never leaves the interior regime
    (infinite cut parameter).
    """

    footpoint: np.ndarray
    direction: np.ndarray
    cut_height: float
    cut_multiplicity: Multiplicity
    domain_kind: str

    @property
    def cut_point(self) -> Optional[HorizonPoint]:
        if not math.isfinite(self.cut_height):
            return None
        return HorizonPoint(self.footpoint + self.cut_height * self.direction,
                            self.cut_height)

    def point_at(self, s: float) -> HorizonPoint:
        """Horizon point at generator parameter s (height above the plane)."""
        return HorizonPoint(self.footpoint + s * self.direction, float(s))

    def point_from_cut(self, u: float) -> HorizonPoint:
        """Horizon point at parameter u measured from the cut point toward
        the footpoint (pastward)."""
        if not math.isfinite(self.cut_height):
            raise ParamError("generator has no cut point")
        return self.point_at(self.cut_height - u)


def in_development(region: Region, p: SpacetimePoint) -> bool:
    """Membership in D+(S), closed form.

    The past cone of p meets the initial plane in the closed ball of
    radius p.t around p.x, which lies in the open set S exactly when
    p.t < rho(p.x).
    """
    if p.t < 0:
        raise ParamError("development membership is defined for t >= 0")
    if not region.inside(p.x):
        return False
    return p.t < region.distance_to_complement(p.x)


def development_oracle(region: Region, p: SpacetimePoint, n_curves: int = 200,
                       seed: int = 0) -> bool:
    """Definition-level membership check by causal-curve sampling.

    Draws past-directed piecewise-linear causal curves from p (segments
    with |dx| <= |dt|) until they cross the initial plane and reports
    False as soon as one lands outside S.  Half of the budget goes to
    straight null rays on an even direction fan, half to random walkers.
    One-sided: may return True falsely; converges as n_curves grows.
    """
    if p.t <= 0:
        raise ParamError("oracle needs t > 0")
    if n_curves < 1:
        raise ParamError("need at least one curve")
    d = p.dim
    rng = np.random.default_rng(seed)

    n_rays = n_curves // 2
    if d == 2 and n_rays > 0:
        # straight null rays, evenly fanned: land on the sphere |z-x| = t
        angles = 2 * np.pi * (np.arange(n_rays) + 0.5) / n_rays
        for a in angles:
            z = p.x + p.t * np.array([np.cos(a), np.sin(a)])
            if not region.inside(z):
                return False
    else:
        for _ in range(n_rays):
            u = rng.normal(size=d)
            u /= np.linalg.norm(u)
            z = p.x + p.t * u
            if not region.inside(z):
                return False

    for _ in range(n_curves - n_rays):
        t = p.t
        x = p.x.copy()
        while t > 0:
            dt = t * rng.uniform(0.3, 1.0)
            speed = rng.uniform(0.0, 1.0)
            u = rng.normal(size=d)
            u /= np.linalg.norm(u)
            x = x + speed * dt * u
            t -= dt
            if t <= 1e-15:
                t = 0.0
        if not region.inside(x):
            return False
    return True


def horizon_point(region: Region, x) -> HorizonPoint:
    """Lift a base point of S to the horizon."""
    x = np.asarray(x, dtype=float)
    if not region.inside(x):
        raise OutsideRegionError(f"{x} is not in the open region")
    return HorizonPoint(x, region.distance_to_complement(x))


def _on_generator(region: Region, footpoint, direction, s, tol_near) -> bool:
    """True while the lifted point (footpoint + s*direction, s) stays on the
    generator: rho equals s and the footpoint is the unique nearest point."""
    x = footpoint + s * direction
    if not region.inside(x):
        return False
    ns = region.nearest_boundary_set(x, tol_near)
    if ns.continuum or len(ns.points) != 1:
        return False
    if abs(ns.distance - s) > max(1e-9, 1e-9 * s):
        return False
    return bool(np.linalg.norm(ns.points[0] - footpoint) <= max(100 * tol_near, 1e-7))


def trace_generator(region: Region, footpoint, tol: float = 1e-10,
                    tol_near: float = 1e-8,
                    s_max: Optional[float] = None) -> Generator:
    """March along the inward normal from a boundary footpoint to the cut.

    The cut parameter is the supremum of s with rho(foot + s n) = s and
    unique nearest point equal to the footpoint, located by bisection to
    tolerance tol.  When the march survives past s_max (default 1e6 times
    the scene scale) the generator is reported with an open future end.
    """
    footpoint = np.asarray(footpoint, dtype=float)
    direction = region.inward_normal_at(footpoint)
    scale = region.scene_scale
    if s_max is None:
        s_max = 1e6 * scale

    s = 1e-9 * scale
    if not _on_generator(region, footpoint, direction, s, tol_near):
        raise ParamError(
            f"no generator grows from footpoint {footpoint}; boundary may be "
            "locally concave or the footpoint misplaced"
        )
    lo = s
    hi = s
    while hi < s_max:
        nxt = min(hi * 2 if hi > 0 else 1e-6, s_max)
        if _on_generator(region, footpoint, direction, nxt, tol_near):
            lo = hi = nxt
        else:
            hi = nxt
            break
    else:
        pass
    if hi >= s_max and _on_generator(region, footpoint, direction, s_max, tol_near):
        return Generator(footpoint=footpoint, direction=direction,
                         cut_height=OPEN_END,
                         cut_multiplicity=Multiplicity(count=1),
                         domain_kind="open")
    while hi - lo > tol * max(1.0, lo):
        mid = 0.5 * (lo + hi)
        if _on_generator(region, footpoint, direction, mid, tol_near):
            lo = mid
        else:
            hi = mid
    s_cut = lo
    mult = _cut_multiplicity(region, footpoint, direction, s_cut, tol_near)
    return Generator(footpoint=footpoint, direction=direction,
                     cut_height=float(s_cut), cut_multiplicity=mult,
                     domain_kind="half-open-at-future")


def _feet_diameter(points):
    if len(points) < 2:
        return 0.0
    return max(float(np.linalg.norm(a - b))
               for i, a in enumerate(points) for b in points[i + 1:])


def _cluster_count(points, radius):
    clusters = []
    for p in points:
        placed = False
        for cl in clusters:
            if any(np.linalg.norm(p - q) <= radius for q in cl):
                cl.append(p)
                placed = True
                break
        if not placed:
            clusters.append([p])
    return len(clusters)


def _cut_multiplicity(region: Region, footpoint, direction, s_cut,
                      tol_near) -> Multiplicity:
    """Limit multiplicity at a cut point.

    The generators through the cut are the limit feet from just past it.
    A continuum at the cut base means unbounded.  Otherwise feet are
    collected at offsets past the cut with a tie window of 2.5*offset
    (distance gaps past a cut grow at most twice the offset, so the true
    competitors are always captured); a feet spread that decays with the
    offset is a coalescing family (focal endpoint, one generator), while
    a stable spread counts distinct feet.
    """
    cut_base = footpoint + s_cut * direction
    ns0 = region.nearest_boundary_set(cut_base, max(4 * tol_near, 1e-7))
    if ns0.continuum:
        return Multiplicity(count=None, unbounded=True)
    fallback = Multiplicity(count=max(len(ns0.points), 1))
    scale = region.scene_scale
    deltas = (1e-2 * scale, 1e-3 * scale)
    spreads = []
    feet_sets = []
    for delta in deltas:
        z = footpoint + (s_cut + delta) * direction
        if not region.inside(z):
            return fallback
        ns = region.nearest_boundary_set(z, 2.5 * delta)
        if ns.continuum:
            return Multiplicity(count=None, unbounded=True)
        spreads.append(_feet_diameter(ns.points))
        feet_sets.append(ns.points)
    sp1, sp2 = spreads
    if sp1 <= 10 * tol_near and sp2 <= 10 * tol_near:
        return Multiplicity(count=1)
    slope = math.log(max(sp1, 1e-300) / max(sp2, 1e-300)) / math.log(
        deltas[0] / deltas[1])
    if slope >= 0.25:
        return Multiplicity(count=1)
    n = _cluster_count(feet_sets[1], max(0.2 * sp2, 10 * tol_near))
    return Multiplicity(count=max(n, len(ns0.points), 1))


def generator_multiplicity(region: Region, p: HorizonPoint,
                           tol_near: float = 1e-8) -> Multiplicity:
    """Number of generators through a horizon point: the cardinality of its
    nearest boundary set, unbounded on a continuum."""
    rho = region.distance_to_complement(p.base)
    if abs(rho - p.height) > max(1e-7, 1e-7 * region.scene_scale):
        raise ParamError(
            f"point at height {p.height} is not on the horizon (rho={rho})"
        )
    ns = region.nearest_boundary_set(p.base, tol_near)
    if ns.continuum:
        return Multiplicity(count=None, unbounded=True)
    return Multiplicity(count=len(ns.points))


def generators_through(region: Region, p: HorizonPoint,
                       tol_near: float = 1e-8) -> list[Generator]:
    """The generators ending at a horizon point, one per nearest foot.

    Each nearest boundary point y spans the null segment from (y, 0) up
    to p; the returned generators carry p as their cut point.
    """
    ns = region.nearest_boundary_set(p.base, tol_near)
    if ns.continuum:
        raise ParamError("infinitely many generators through this point")
    gens = []
    for y in ns.points:
        direction = (p.base - y) / ns.distance
        gens.append(Generator(footpoint=y, direction=direction,
                              cut_height=p.height,
                              cut_multiplicity=Multiplicity(count=len(ns.points)),
                              domain_kind="half-open-at-future"))
    return gens
