"""Open planar regions with exact distance-to-complement kernels.

A Region is composed from signed primitives (half-planes, disks and
anti-disks, convex polygons, axis-aligned ellipses, graph domains
{y < B(x)}) combined as an intersection or a union of their open sides.
Every primitive enumerates the critical feet of the distance from a
query point to its full boundary; the region filters those candidates
(plus pairwise boundary corners) down to points actually on the composed
boundary.  This makes rho(x) = dist(x, complement) and the full nearest
set exact up to root-finding tolerance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    CornerError,
    NonDifferentiableError,
    OutsideRegionError,
)

_FOOT_TOL = 1e-13


def _v(p) -> np.ndarray:
    return np.asarray(p, dtype=float)


# ---------------------------------------------------------------------------
# primitives
# ---------------------------------------------------------------------------

class HalfPlane:
    """Open half-space {n.x < c} with unit normal n pointing out of S."""

    def __init__(self, normal, offset):
        n = _v(normal)
        self.normal = n / np.linalg.norm(n)
        self.offset = float(offset)

    def side_margin(self, p):
        return self.offset - float(self.normal @ _v(p))

    def inside(self, p):
        return self.side_margin(p) > 0.0

    def feet(self, p):
        p = _v(p)
        return [p - (float(self.normal @ p) - self.offset) * self.normal]

    def continuum(self, p, tol=0.0):
        return None

    def lower_bound(self, p):
        return abs(self.side_margin(p))

    def on_boundary(self, y, tol):
        return abs(self.side_margin(y)) <= tol

    def inward_normal(self, y):
        return -self.normal

    def scale(self):
        return max(1.0, abs(self.offset))


class Disk:
    """Open ball; S-side is the inside."""

    def __init__(self, center, radius):
        self.center = _v(center)
        self.radius = float(radius)
        if self.radius <= 0:
            raise ValueError("radius must be positive")

    def side_margin(self, p):
        return self.radius - float(np.linalg.norm(_v(p) - self.center))

    def inside(self, p):
        return self.side_margin(p) > 0.0

    def _unit_from_center(self, p):
        d = _v(p) - self.center
        r = float(np.linalg.norm(d))
        if r <= _FOOT_TOL * self.radius:
            return None
        return d / r

    def feet(self, p):
        u = self._unit_from_center(p)
        if u is None:
            return []
        return [self.center + self.radius * u]

    def continuum(self, p, tol=0.0):
        # the whole circle is a minimizer set once the distance variation
        # over it (2|p - center|) falls inside the tie tolerance
        off = float(np.linalg.norm(_v(p) - self.center))
        if 2.0 * off <= max(tol, _FOOT_TOL * self.radius):
            return self.radius - off
        return None

    def lower_bound(self, p):
        return abs(self.side_margin(p))

    def on_boundary(self, y, tol):
        return abs(self.side_margin(y)) <= tol

    def inward_normal(self, y):
        u = (_v(y) - self.center) / self.radius
        return -u

    def scale(self):
        return self.radius + float(np.linalg.norm(self.center))


class AntiDisk(Disk):
    """Complement side of a closed ball; S-side is the outside."""

    def side_margin(self, p):
        return float(np.linalg.norm(_v(p) - self.center)) - self.radius

    def inward_normal(self, y):
        return (_v(y) - self.center) / self.radius


class ConvexPolygon:
    """Open interior of a convex polygon with counterclockwise vertices."""

    def __init__(self, vertices):
        vs = _v(vertices)
        if vs.ndim != 2 or vs.shape[1] != 2 or vs.shape[0] < 3:
            raise ValueError("need at least 3 planar vertices")
        self.vertices = vs
        d = np.roll(vs, -1, axis=0) - vs
        lens = np.linalg.norm(d, axis=1)
        self._dirs = d / lens[:, None]
        self._lens = lens
        # interior lies to the left of each directed edge
        self._inward = np.stack([-self._dirs[:, 1], self._dirs[:, 0]], axis=1)

    def side_margin(self, p):
        rel = _v(p)[None, :] - self.vertices
        return float(np.min(np.sum(rel * self._inward, axis=1)))

    def inside(self, p):
        return self.side_margin(p) > 0.0

    def feet(self, p):
        p = _v(p)
        rel = p[None, :] - self.vertices
        t = np.clip(np.sum(rel * self._dirs, axis=1), 0.0, self._lens)
        pts = self.vertices + t[:, None] * self._dirs
        out = []
        for q in pts:
            if not any(np.linalg.norm(q - r) < 1e-12 for r in out):
                out.append(q)
        return out

    def continuum(self, p, tol=0.0):
        return None

    def lower_bound(self, p):
        p = _v(p)
        return min(float(np.linalg.norm(p - q)) for q in self.feet(p))

    def on_boundary(self, y, tol):
        return self.lower_bound(y) <= tol

    def inward_normal(self, y):
        y = _v(y)
        rel = y[None, :] - self.vertices
        along = np.sum(rel * self._dirs, axis=1)
        perp = np.sum(rel * self._inward, axis=1)
        hits = [i for i in range(len(self.vertices))
                if abs(perp[i]) <= 1e-9 and -1e-9 <= along[i] <= self._lens[i] + 1e-9]
        if len(hits) != 1:
            raise CornerError("point is a polygon vertex or off the boundary")
        return self._inward[hits[0]]

    def scale(self):
        return float(np.max(np.linalg.norm(self.vertices, axis=1)))


class EllipseRegion:
    """Open interior of an axis-aligned ellipse x^2/a^2 + y^2/b^2 < 1."""

    def __init__(self, center, a, b):
        self.center = _v(center)
        self.a = float(a)
        self.b = float(b)
        if self.a <= 0 or self.b <= 0:
            raise ValueError("semi-axes must be positive")

    def side_margin(self, p):
        d = _v(p) - self.center
        return 1.0 - (d[0] / self.a) ** 2 - (d[1] / self.b) ** 2

    def inside(self, p):
        return self.side_margin(p) > 0.0

    def _boundary_point(self, theta):
        return self.center + np.array([self.a * math.cos(theta),
                                       self.b * math.sin(theta)])

    def feet(self, p):
        """All critical feet of the distance to the ellipse boundary.

        The foot condition g(theta) = (a^2-b^2) sin cos - a dx sin
        + b dy cos = 0 becomes a quartic in u = tan(theta/2), solved by
        companion matrix so that clustered roots near the focal points
        still split cleanly; theta = pi (u at infinity) is checked
        separately.  Each root gets a Newton polish.
        """
        d = _v(p) - self.center
        a, b = self.a, self.b
        if abs(a - b) < 1e-15 and np.linalg.norm(d) <= _FOOT_TOL * a:
            return []

        def g(th):
            s, c = math.sin(th), math.cos(th)
            return (a * a - b * b) * s * c - a * d[0] * s + b * d[1] * c

        def g1(th):
            s, c = math.sin(th), math.cos(th)
            return ((a * a - b * b) * (c * c - s * s) - a * d[0] * c
                    - b * d[1] * s)

        m = a * a - b * b
        coeffs = np.array([-b * d[1], -2 * m - 2 * a * d[0], 0.0,
                           2 * m - 2 * a * d[0], b * d[1]])
        tiny = 1e-14 * float(np.max(np.abs(coeffs)))
        nz = np.nonzero(np.abs(coeffs) > tiny)[0]
        thetas = [math.pi]
        if nz.size >= 2:
            for r in np.roots(coeffs[nz[0]:nz[-1] + 1]):
                if abs(r.imag) <= 1e-9 * (1.0 + abs(r.real)):
                    thetas.append(2.0 * math.atan(float(r.real)))
        if abs(coeffs[0]) <= tiny or abs(coeffs[-1]) <= tiny:
            thetas.append(0.0)
        feet = []
        for th in thetas:
            for _ in range(3):
                d1 = g1(th)
                if abs(d1) < 1e-300:
                    break
                step = g(th) / d1
                if abs(step) > 0.1:
                    break
                th -= step
            if abs(g(th)) > 1e-7 * (1 + a * a):
                continue
            q = self._boundary_point(th)
            if not any(np.linalg.norm(q - r) < 1e-10 for r in feet):
                feet.append(q)
        return feet

    def continuum(self, p, tol=0.0):
        d = _v(p) - self.center
        if abs(self.a - self.b) < 1e-15:
            off = float(np.linalg.norm(d))
            if 2.0 * off <= max(tol, _FOOT_TOL * self.a):
                return self.a - off
        return None

    def lower_bound(self, p):
        return 0.0

    def on_boundary(self, y, tol):
        # margin is quadratic; convert tolerance through the gradient scale
        d = _v(y) - self.center
        grad = 2 * math.hypot(d[0] / self.a ** 2, d[1] / self.b ** 2)
        return abs(self.side_margin(y)) <= tol * max(grad, 1e-12)

    def inward_normal(self, y):
        d = _v(y) - self.center
        u = np.array([d[0] / self.a ** 2, d[1] / self.b ** 2])
        return -u / np.linalg.norm(u)

    def scale(self):
        return max(self.a, self.b) + float(np.linalg.norm(self.center))


# ---------------------------------------------------------------------------
# graph domains {y < B(x)} with a dip-family boundary
# ---------------------------------------------------------------------------

def _bump(u):
    """Smooth compactly supported profile with bump(0)=1, support (-1, 1)."""
    v = 1.0 - u * u
    if v <= 1e-12:
        return 0.0
    return math.exp(1.0 - 1.0 / v)


def _bump_d1(u):
    v = 1.0 - u * u
    if v <= 1e-12:
        return 0.0
    return _bump(u) * (-2.0 * u / (v * v))


def _bump_d2(u):
    v = 1.0 - u * u
    if v <= 1e-12:
        return 0.0
    w = -2.0 * u / (v * v)
    dw = -2.0 * (1.0 + 3.0 * u * u) / (v * v * v)
    return _bump(u) * (w * w + dw)


@dataclass(frozen=True)
class BumpBoundary:
    """Boundary y = B(x): a flat line carrying smooth dips, optionally with a
    one-sided quadratic base for x < 0.

    B(x) = height + (kappa_left/2) x^2 * [x < 0] - sum_k depth_k *
           bump((x - x_k)/w_k), with pairwise disjoint dip supports.
    """

    height: float = 1.0
    kappa_left: float = 0.0
    dips: tuple = ()  # tuples (x_k, w_k, depth_k)

    def __post_init__(self):
        supports = sorted((x - w, x + w) for x, w, _ in self.dips)
        for (l1, r1), (l2, r2) in zip(supports, supports[1:]):
            if r1 > l2 + 1e-15:
                raise ValueError("dip supports must be disjoint")

    def _base(self, t):
        if t < 0.0 and self.kappa_left != 0.0:
            return self.height + 0.5 * self.kappa_left * t * t
        return self.height

    def _base_d1(self, t):
        if t < 0.0 and self.kappa_left != 0.0:
            return self.kappa_left * t
        return 0.0

    def _base_d2(self, t):
        if t < 0.0 and self.kappa_left != 0.0:
            return self.kappa_left
        return 0.0

    def value(self, t):
        t = float(t)
        y = self._base(t)
        for x_k, w_k, d_k in self.dips:
            u = (t - x_k) / w_k
            if -1.0 < u < 1.0:
                y -= d_k * _bump(u)
        return y

    def d1(self, t):
        t = float(t)
        y = self._base_d1(t)
        for x_k, w_k, d_k in self.dips:
            u = (t - x_k) / w_k
            if -1.0 < u < 1.0:
                y -= d_k / w_k * _bump_d1(u)
        return y

    def d2(self, t):
        t = float(t)
        y = self._base_d2(t)
        for x_k, w_k, d_k in self.dips:
            u = (t - x_k) / w_k
            if -1.0 < u < 1.0:
                y -= d_k / (w_k * w_k) * _bump_d2(u)
        return y


class GraphDomain:
    """Open region below a graph boundary: S = {(x, y) : y < B(x)}."""

    def __init__(self, boundary: BumpBoundary):
        self.boundary = boundary

    def side_margin(self, p):
        p = _v(p)
        return self.boundary.value(p[0]) - p[1]

    def inside(self, p):
        return self.side_margin(p) > 0.0

    def _foot_fn(self, p):
        bd = self.boundary

        def g(t):
            bt = bd.value(t)
            return (t - p[0]) + bd.d1(t) * (bt - p[1])

        return g

    def _refine(self, g, lo, hi):
        flo, fhi = g(lo), g(hi)
        if flo == 0.0:
            return lo
        if fhi == 0.0:
            return hi
        if flo * fhi > 0:
            return None
        for _ in range(80):
            mid = 0.5 * (lo + hi)
            fm = g(mid)
            if fm == 0.0:
                return mid
            if flo * fm < 0:
                hi, fhi = mid, fm
            else:
                lo, flo = mid, fm
        return 0.5 * (lo + hi)

    def feet(self, p):
        """Critical feet of the distance to the graph curve.

        Only genuine roots of the foot equation g(t) = (t - px)
        + B'(t)(B(t) - py) are returned: spurious near-tie candidates
        would inflate nearest-set multiplicities for deep queries.
        """
        p = _v(p)
        bd = self.boundary
        g = self._foot_fn(p)
        cands = []
        if bd.d1(p[0]) == 0.0:
            cands.append(p[0])  # flat stretch: the vertical foot is exact
        # quadratic base piece: the foot equation is a cubic in t
        if bd.kappa_left != 0.0:
            k = bd.kappa_left
            coeffs = [0.5 * k * k, 0.0, 1.0 + k * (bd.height - p[1]), -p[0]]
            for r in np.roots(coeffs):
                if abs(r.imag) < 1e-9 and r.real < 0.0:
                    cands.append(float(r.real))
        # dip pieces, pruned by distance to the dip bounding box
        best_sq = min(((t - p[0]) ** 2 + (bd.value(t) - p[1]) ** 2
                       for t in cands), default=math.inf)
        order = sorted(range(len(bd.dips)), key=lambda i: abs(p[0] - bd.dips[i][0]))
        for i in order:
            x_k, w_k, d_k = bd.dips[i]
            lo, hi = x_k - w_k, x_k + w_k
            dx = max(lo - p[0], p[0] - hi, 0.0)
            dy = max(p[1] - bd.height, (bd.height - d_k) - p[1], 0.0)
            if dx * dx + dy * dy > best_sq + 1e-12:
                continue
            ts = np.linspace(lo, hi, 33)
            gv = [g(t) for t in ts]
            for j in range(32):
                if gv[j] == 0.0 or gv[j] * gv[j + 1] < 0:
                    root = self._refine(g, ts[j], ts[j + 1])
                    if root is not None:
                        cands.append(root)
                        dsq = (root - p[0]) ** 2 + (bd.value(root) - p[1]) ** 2
                        best_sq = min(best_sq, dsq)
        feet = []
        for t in cands:
            q = np.array([t, bd.value(t)])
            if not any(abs(t - r[0]) < 1e-12 for r in feet):
                feet.append(q)
        return feet

    def continuum(self, p, tol=0.0):
        return None

    def lower_bound(self, p):
        return 0.0

    def on_boundary(self, y, tol):
        y = _v(y)
        slope = abs(self.boundary.d1(y[0]))
        return abs(self.side_margin(y)) <= tol * math.sqrt(1.0 + slope * slope)

    def inward_normal(self, y):
        y = _v(y)
        s = self.boundary.d1(y[0])
        n = np.array([s, -1.0])
        return n / np.linalg.norm(n)

    def scale(self):
        ext = abs(self.boundary.height)
        for x_k, w_k, d_k in self.boundary.dips:
            ext = max(ext, abs(x_k) + w_k, abs(d_k))
        return max(1.0, ext)


# ---------------------------------------------------------------------------
# pairwise boundary corners
# ---------------------------------------------------------------------------

def _pair_corners(p1, p2):
    """Intersection points of two primitive boundaries (2D lines/circles)."""
    def is_line(p):
        return isinstance(p, HalfPlane)

    def is_circle(p):
        return isinstance(p, Disk)  # includes AntiDisk

    if is_line(p1) and is_line(p2):
        n1, c1 = p1.normal, p1.offset
        n2, c2 = p2.normal, p2.offset
        if n1.shape[0] != 2:
            return []
        det = n1[0] * n2[1] - n1[1] * n2[0]
        if abs(det) < 1e-14:
            return []
        x = (c1 * n2[1] - c2 * n1[1]) / det
        y = (n1[0] * c2 - n2[0] * c1) / det
        return [np.array([x, y])]
    if is_line(p1) and is_circle(p2):
        p1, p2 = p2, p1
    if is_circle(p1) and is_line(p2):
        if p1.center.shape[0] != 2:
            return []
        h = float(p2.normal @ p1.center) - p2.offset
        if abs(h) > p1.radius:
            return []
        foot = p1.center - h * p2.normal
        half = math.sqrt(max(p1.radius ** 2 - h * h, 0.0))
        tang = np.array([-p2.normal[1], p2.normal[0]])
        return [foot + half * tang, foot - half * tang]
    if is_circle(p1) and is_circle(p2):
        if p1.center.shape[0] != 2:
            return []
        d = p2.center - p1.center
        dist = float(np.linalg.norm(d))
        if dist < 1e-14 or dist > p1.radius + p2.radius or \
                dist < abs(p1.radius - p2.radius):
            return []
        a = (p1.radius ** 2 - p2.radius ** 2 + dist * dist) / (2 * dist)
        h_sq = p1.radius ** 2 - a * a
        if h_sq < 0:
            return []
        u = d / dist
        mid = p1.center + a * u
        half = math.sqrt(h_sq)
        tang = np.array([-u[1], u[0]])
        return [mid + half * tang, mid - half * tang]
    return []


# ---------------------------------------------------------------------------
# composed regions
# ---------------------------------------------------------------------------

@dataclass
class NearestSet:
    """Global minimizers of the distance from a query to the boundary."""

    distance: float
    points: list
    continuum: bool = False


@dataclass
class CreaseSet:
    """Sampled points with at least two nearest boundary points."""

    samples: list
    window: tuple
    step: float


class Region:
    """Open set composed from primitive open sides.

    mode "intersection" takes the common interior of all primitive sides;
    mode "union" takes their union (used for reconstructed disk unions).
    """

    def __init__(self, primitives, mode="intersection", name=""):
        if not primitives:
            raise ValueError("region needs at least one primitive")
        if mode not in ("intersection", "union"):
            raise ValueError(f"unknown mode {mode!r}")
        self.primitives = list(primitives)
        self.mode = mode
        self.name = name

    @property
    def scene_scale(self):
        return max(1.0, max(p.scale() for p in self.primitives))

    def inside(self, x):
        if self.mode == "intersection":
            return all(p.inside(x) for p in self.primitives)
        return any(p.inside(x) for p in self.primitives)

    def _tol_geo(self):
        return 1e-9 * self.scene_scale

    def _candidate_on_boundary(self, z, skip, tol):
        """z (on the boundary of primitives in skip) lies on the composed
        boundary iff every other primitive keeps it on the closed S-side
        (intersection) or outside its open side (union)."""
        for j, p in enumerate(self.primitives):
            if j in skip:
                continue
            m = p.side_margin(z)
            if self.mode == "intersection":
                if m < -tol:
                    return False
            else:
                if m > tol:
                    return False
        return True

    def _gather_candidates(self, x, tie_tol=0.0):
        """All feet on the composed boundary, as (distance, point) pairs,
        plus the best continuum-marker distance if any."""
        x = _v(x)
        tol = self._tol_geo()
        n = len(self.primitives)
        order = sorted(range(n), key=lambda i: self.primitives[i].lower_bound(x))
        best = math.inf
        cands = []
        cont_best = math.inf
        margin = max(10 * tol, 2 * tie_tol, 1e-12)
        active = []
        for i in order:
            p = self.primitives[i]
            if p.lower_bound(x) > best + margin:
                break
            active.append(i)
            for z in p.feet(x):
                if self._candidate_on_boundary(z, {i}, tol):
                    d = float(np.linalg.norm(x - z))
                    cands.append((d, z))
                    best = min(best, d)
            c = p.continuum(x, tie_tol)
            if c is not None and self._candidate_on_boundary(x, {i}, tol):
                cont_best = min(cont_best, c)
                best = min(best, c)
        if n > 1 and x.shape[0] == 2:
            for ii in range(len(active)):
                for jj in range(ii + 1, len(active)):
                    i, j = active[ii], active[jj]
                    for z in _pair_corners(self.primitives[i], self.primitives[j]):
                        if self._candidate_on_boundary(z, {i, j}, tol):
                            d = float(np.linalg.norm(x - z))
                            cands.append((d, z))
                            best = min(best, d)
        return cands, cont_best

    def distance_to_complement(self, x):
        """rho(x) = dist(x, complement of S); zero outside S."""
        if not self.inside(x):
            return 0.0
        cands, cont = self._gather_candidates(x)
        best = min((d for d, _ in cands), default=math.inf)
        return float(min(best, cont))

    def nearest_boundary_set(self, x, tol_near=1e-8) -> NearestSet:
        """All global minimizers of the distance from x to the boundary.

        Points within tol_near of the minimal distance are kept and
        deduplicated at tol_near; an infinite minimizer family (disk
        center) is reported with the continuum flag.
        """
        if not self.inside(x):
            raise OutsideRegionError(f"point {x} is not in the open region")
        cands, cont = self._gather_candidates(x, tie_tol=tol_near)
        best = min((d for d, _ in cands), default=math.inf)
        best = min(best, cont)
        if cont <= best + tol_near:
            return NearestSet(distance=float(best), points=[], continuum=True)
        pts = []
        for d, z in sorted(cands, key=lambda c: c[0]):
            if d > best + tol_near:
                break
            if not any(np.linalg.norm(z - q) <= tol_near for q in pts):
                pts.append(z)
        return NearestSet(distance=float(best), points=pts, continuum=False)

    def gradient(self, x):
        """Unit gradient (x - y)/rho(x) of the distance at a point with a
        unique nearest boundary point y."""
        ns = self.nearest_boundary_set(x)
        if ns.continuum or len(ns.points) != 1:
            raise NonDifferentiableError(
                f"distance not differentiable at {x}: {len(ns.points)} feet"
            )
        return (_v(x) - ns.points[0]) / ns.distance

    def inward_normal_at(self, y, tol=None):
        """Inward normal at a boundary point; CornerError when ambiguous."""
        tol = tol if tol is not None else 1e-9 * self.scene_scale
        owners = [p for p in self.primitives if p.on_boundary(y, tol)]
        if not owners:
            raise CornerError(f"{y} is not on the region boundary")
        if len(owners) > 1:
            raise CornerError(f"{y} lies on several primitive boundaries")
        return owners[0].inward_normal(y)

    # -- crease extraction --------------------------------------------------

    def _foot_of(self, x, tol_near):
        try:
            ns = self.nearest_boundary_set(x, tol_near)
        except OutsideRegionError:
            return None, None
        if ns.continuum:
            return "continuum", ns
        return ns.points[0], ns

    def _polish_crease(self, za, zb, tol_near):
        """Refine a bracketing segment to an equidistant point.

        Intersects the segment with the perpendicular bisector of the two
        competing feet, re-evaluating feet until the point is equidistant
        to machine precision.
        """
        za = _v(za)
        zb = _v(zb)
        fa, _ = self._foot_of(za, tol_near)
        fb, _ = self._foot_of(zb, tol_near)
        if fa is None or fb is None:
            return None
        if isinstance(fa, str) or isinstance(fb, str):
            return 0.5 * (za + zb)
        y1, y2 = fa, fb
        z = 0.5 * (za + zb)
        seg = zb - za
        for _ in range(40):
            if np.linalg.norm(y1 - y2) < 1e-14:
                return None
            diff = y1 - y2
            rhs = 0.5 * (float(y1 @ y1) - float(y2 @ y2)) - float(za @ diff)
            den = float(seg @ diff)
            if abs(den) < 1e-300:
                return None
            s = rhs / den
            s = min(max(s, -0.5), 1.5)
            z_new = za + s * seg
            d1 = float(np.linalg.norm(z_new - y1))
            d2 = float(np.linalg.norm(z_new - y2))
            z = z_new
            if abs(d1 - d2) <= 1e-14 * max(d1, 1.0):
                break
            f, _ = self._foot_of(z, tol_near)
            if f is None or isinstance(f, str):
                break
            # keep the two competing feet: replace whichever side f matches
            if np.linalg.norm(f - y1) <= np.linalg.norm(f - y2):
                y1 = f
            else:
                y2 = f
        return z

    def crease_sample(self, window, step, tol_near=1e-8) -> CreaseSet:
        """Grid scan for points with >= 2 nearest boundary points.

        window is ((xmin, xmax), (ymin, ymax)).  Cells whose corners have
        different nearest feet are refined by bisection on the
        foot-identity change, then polished to an equidistant point and
        validated against nearest_boundary_set.
        """
        (x0, x1), (y0, y1) = window
        if not (x1 > x0 and y1 > y0):
            raise ValueError("window must have positive extent")
        if step <= 0:
            raise ValueError("step must be positive")
        xs = np.arange(x0, x1 + 0.5 * step, step)
        ys = np.arange(y0, y1 + 0.5 * step, step)
        nodes = {}
        for i, xv in enumerate(xs):
            for j, yv in enumerate(ys):
                z = np.array([xv, yv])
                foot, ns = self._foot_of(z, tol_near)
                nodes[(i, j)] = (z, foot, ns)
        id_tol = max(8 * step, 100 * tol_near)
        samples = []

        def differs(fa, fb):
            if fa is None or fb is None:
                return False
            if isinstance(fa, str) or isinstance(fb, str):
                return True
            return float(np.linalg.norm(fa - fb)) > id_tol

        def locate(za, fa, zb, fb):
            lo, lo_f, hi = za, fa, zb
            width = float(np.linalg.norm(zb - za))
            target = step * 1e-3
            while width > target:
                mid = 0.5 * (lo + hi)
                fm, _ = self._foot_of(mid, tol_near)
                if fm is None:
                    return None
                if differs(lo_f, fm):
                    hi = mid
                else:
                    lo, lo_f = mid, fm
                width *= 0.5
            return self._polish_crease(lo, hi, tol_near)

        for (i, j), (z, foot, _) in nodes.items():
            if foot is None:
                continue
            if isinstance(foot, str):
                samples.append(z)
                continue
            for nb in ((i + 1, j), (i, j + 1)):
                if nb not in nodes:
                    continue
                z2, foot2, _ = nodes[nb]
                if foot2 is None or not differs(foot, foot2):
                    continue
                hit = locate(z, foot, z2, foot2)
                if hit is None:
                    continue
                ns = None
                try:
                    ns = self.nearest_boundary_set(hit, tol_near)
                except OutsideRegionError:
                    pass
                if ns is not None and (ns.continuum or len(ns.points) >= 2):
                    samples.append(hit)
        dedup = []
        for z in samples:
            if not any(np.linalg.norm(z - q) < step * 1e-3 for q in dedup):
                dedup.append(z)
        return CreaseSet(samples=dedup, window=window, step=step)
