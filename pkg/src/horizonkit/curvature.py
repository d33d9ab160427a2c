"""Curvature tools for plane curves given as function graphs.

The central objects are graphs y = f(t) whose second derivative exists
pointwise but need not be continuous.  The formal curvature

    kappa_f(t) = f''(t) / (1 + f'(t)^2)^(3/2)

is evaluated pointwise, and the tangent-circle estimator

    2 <n, dP> / |dP|^2,   n = (-f'(t0), 1)/sqrt(1 + f'(t0)^2)

recovers it in the limit using first derivatives only, which is what
makes it usable on curves sampled from horizon slices.  Positive sign
means bending toward n.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .errors import ParamError
from .minkowski import SphereSlice


@dataclass
class PlaneGraph:
    """Function graph over an interval with pointwise derivative evaluators.

    provenance is "closed-form" when the derivative callables are exact,
    or "sampled-from-slice" when they come from finite differences on a
    sampled curve (step records the sample spacing).
    """

    domain: tuple[float, float]
    eval: Callable[[float], float]
    deriv1: Callable[[float], float]
    deriv2: Callable[[float], float]
    provenance: str = "closed-form"
    step: float = 0.0

    def f(self, t: float) -> float:
        return float(self.eval(t))

    def d1(self, t: float) -> float:
        return float(self.deriv1(t))

    def d2(self, t: float) -> float:
        return float(self.deriv2(t))

    def contains(self, t: float, tol: float = 1e-12) -> bool:
        a, b = self.domain
        return a - tol <= t <= b + tol

    def derivative_consistency(self, n_points: int = 20, seed: int = 0):
        """Max finite-difference residual of deriv1/deriv2 at interior points.

        Returns (err1, err2); the expected tolerance is 1e-5 for
        closed-form graphs and 10*step for sampled ones.
        """
        a, b = self.domain
        rng = np.random.default_rng(seed)
        margin = 0.05 * (b - a)
        ts = rng.uniform(a + margin, b - margin, size=n_points)
        h = max(1e-6 * (b - a), self.step or 0.0, 1e-9)
        err1 = 0.0
        err2 = 0.0
        for t in ts:
            fd1 = (self.f(t + h) - self.f(t - h)) / (2 * h)
            fd2 = (self.d1(t + h) - self.d1(t - h)) / (2 * h)
            err1 = max(err1, abs(fd1 - self.d1(t)))
            err2 = max(err2, abs(fd2 - self.d2(t)))
        return err1, err2


def graph_from_callable(domain, f, d1, d2) -> PlaneGraph:
    return PlaneGraph(domain=(float(domain[0]), float(domain[1])),
                      eval=f, deriv1=d1, deriv2=d2)


def graph_from_samples(ts: np.ndarray, ys: np.ndarray) -> PlaneGraph:
    """Build a graph from uniform samples of a slice curve.

    Values are interpolated with a local quadratic; first derivatives use
    Richardson-extrapolated central differences, second derivatives plain
    central differences.  Queries snap to the nearest grid node for the
    derivative evaluators.
    """
    ts = np.asarray(ts, dtype=float)
    ys = np.asarray(ys, dtype=float)
    if ts.ndim != 1 or ts.shape != ys.shape or ts.size < 5:
        raise ValueError("need at least 5 matching samples")
    h = float(ts[1] - ts[0])
    if not np.allclose(np.diff(ts), h, rtol=0, atol=1e-9 * max(abs(h), 1)):
        raise ValueError("samples must be uniform")
    n = ts.size

    def _idx(t: float) -> int:
        i = int(round((t - ts[0]) / h))
        return min(max(i, 2), n - 3)

    def f(t: float) -> float:
        i = min(max(int((t - ts[0]) / h), 1), n - 2)
        # quadratic through nodes i-1, i, i+1
        u = (t - ts[i]) / h
        return float(ys[i] + 0.5 * u * (ys[i + 1] - ys[i - 1])
                     + 0.5 * u * u * (ys[i + 1] - 2 * ys[i] + ys[i - 1]))

    def d1(t: float) -> float:
        i = _idx(t)
        d_h = (ys[i + 1] - ys[i - 1]) / (2 * h)
        d_2h = (ys[i + 2] - ys[i - 2]) / (4 * h)
        return float((4 * d_h - d_2h) / 3.0)

    def d2(t: float) -> float:
        i = _idx(t)
        return float((ys[i + 1] - 2 * ys[i] + ys[i - 1]) / (h * h))

    return PlaneGraph(domain=(float(ts[0]), float(ts[-1])), eval=f,
                      deriv1=d1, deriv2=d2,
                      provenance="sampled-from-slice", step=h)


def formal_curvature(graph: PlaneGraph, t0: float) -> float:
    """Pointwise curvature f''/(1+f'^2)^(3/2); positive toward (-f', 1)."""
    if not graph.contains(t0):
        raise ValueError(f"t0={t0} outside domain {graph.domain}")
    d1 = graph.d1(t0)
    return graph.d2(t0) / (1.0 + d1 * d1) ** 1.5


def tangent_circle_curvature(graph: PlaneGraph, t0: float, t: float) -> float:
    """Curvature 1/r of the circle tangent at t0 through (t, f(t)).

    Needs only the value pair and the first derivative at t0, so it is
    usable on sampled slice data where second derivatives are unreliable.
    Converges to formal_curvature(graph, t0) as t -> t0.
    """
    if t == t0:
        raise ValueError("tangent-circle estimator needs two distinct points")
    if not (graph.contains(t0) and graph.contains(t)):
        raise ValueError("both parameters must lie in the domain")
    fp = graph.d1(t0)
    dx = t - t0
    dy = graph.f(t) - graph.f(t0)
    norm = math.sqrt(1.0 + fp * fp)
    dot = (-fp * dx + dy) / norm
    return 2.0 * dot / (dx * dx + dy * dy)


def curvature_estimate(graph: PlaneGraph, t0: float, h: Optional[float] = None) -> float:
    """Two-sided tangent-circle curvature at t0 with probe offset h.

    Averages the two one-sided estimates; on sampled graphs h defaults to
    twice the sample step.
    """
    if h is None:
        h = 2 * graph.step if graph.step else 1e-6 * (graph.domain[1] - graph.domain[0])
    a, b = graph.domain
    vals = []
    if t0 + h <= b:
        vals.append(tangent_circle_curvature(graph, t0, t0 + h))
    if t0 - h >= a:
        vals.append(tangent_circle_curvature(graph, t0, t0 - h))
    if not vals:
        raise ValueError("probe offset exceeds the domain on both sides")
    return float(np.mean(vals))


def separation_point(f: PlaneGraph, g: PlaneGraph, t0: float,
                     radius: float) -> Optional[float]:
    """First parameter t* near t0 with f(t*) < g(t*) - 1e-12.

    Preconditions: the graphs are tangent at t0 (values and first
    derivatives agree to 1e-9) and formal curvature of f at t0 is
    strictly below that of g.  Scans t0 +- radius geometrically toward
    t0; the curvature gap guarantees a witness exists.
    """
    if abs(f.f(t0) - g.f(t0)) > 1e-9 or abs(f.d1(t0) - g.d1(t0)) > 1e-9:
        raise ParamError("graphs are not tangent at t0")
    if not formal_curvature(f, t0) < formal_curvature(g, t0):
        raise ParamError("curvature of f must be strictly below that of g at t0")
    offs = radius * np.geomspace(1.0, 1e-8, 60)
    for off in offs:
        for t_star in (t0 + off, t0 - off):
            if f.contains(t_star) and g.contains(t_star):
                if f.f(t_star) < g.f(t_star) - 1e-12:
                    return float(t_star)
    return None


def high_curvature_point(f: PlaneGraph, g: PlaneGraph,
                         tangency_tol: float = 1e-6,
                         order_tol: float = 1e-9,
                         n_grid: int = 512) -> tuple[float, float]:
    """Point t* maximizing f - g, and the curvature of g there.

    For graphs on a shared domain with g <= f pointwise and tangency at
    both endpoints, lifting f down by the largest constant that keeps
    contact pins a touching parameter t*, and there

        min over [a,b] of kappa_f  <=  kappa_g(t*).

    Returns (t*, kappa_g(t*)).  On sampled graphs the curvature comes
    from the tangent-circle estimator.
    """
    a, b = f.domain
    if abs(a - g.domain[0]) > 1e-12 or abs(b - g.domain[1]) > 1e-12:
        raise ParamError("graphs must share a domain")
    for t_end in (a, b):
        if abs(f.f(t_end) - g.f(t_end)) > tangency_tol:
            raise ParamError(f"graphs not tangent at endpoint t={t_end}")
    ts = np.linspace(a, b, n_grid)
    gap = np.array([f.f(t) - g.f(t) for t in ts])
    if np.min(gap) < -order_tol:
        raise ParamError("g exceeds f inside the domain")
    i = int(np.argmax(gap))
    # golden-section refine around the grid argmax
    lo = ts[max(i - 1, 0)]
    hi = ts[min(i + 1, n_grid - 1)]
    phi = (math.sqrt(5) - 1) / 2
    c = hi - phi * (hi - lo)
    d = lo + phi * (hi - lo)
    fc = f.f(c) - g.f(c)
    fd = f.f(d) - g.f(d)
    for _ in range(60):
        if fc > fd:
            hi, d, fd = d, c, fc
            c = hi - phi * (hi - lo)
            fc = f.f(c) - g.f(c)
        else:
            lo, c, fc = c, d, fd
            d = lo + phi * (hi - lo)
            fd = f.f(d) - g.f(d)
        if hi - lo < 1e-12 * max(1.0, abs(b - a)):
            break
    t_star = 0.5 * (lo + hi)
    if g.provenance == "sampled-from-slice":
        kappa = curvature_estimate(g, t_star)
    else:
        kappa = formal_curvature(g, t_star)
    return float(t_star), float(kappa)


def min_formal_curvature(graph: PlaneGraph, n_grid: int = 2048) -> float:
    """Grid minimum of the formal curvature over the domain."""
    a, b = graph.domain
    ts = np.linspace(a, b, n_grid)
    return float(min(formal_curvature(graph, t) for t in ts))


def meusnier_section_curvature(sphere: SphereSlice, y, u, v,
                               tol: float = 1e-9) -> float:
    """Curvature of the circle cut from a sphere by a 2-plane through y.

    The plane is spanned by orthonormal u, v at the sphere point y.  The
    section is a circle of radius sqrt(R^2 - dist(center, plane)^2) =
    R cos(theta), so its curvature is 1/(R cos theta) >= 1/R, the normal
    curvature of the sphere.
    """
    y = np.asarray(y, dtype=float)
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    if not sphere.contains(y, tol=1e-9):
        raise ParamError("y must lie on the sphere")
    basis = np.stack([u, v])
    gram = basis @ basis.T
    if not np.allclose(gram, np.eye(2), atol=1e-9):
        raise ParamError("u, v must be orthonormal")
    w = sphere.center - y
    w_in_plane = (w @ u) * u + (w @ v) * v
    d = float(np.linalg.norm(w - w_in_plane))
    r_sq = sphere.radius ** 2 - d * d
    if r_sq <= tol * sphere.radius ** 2:
        raise ParamError("plane is tangent to the sphere")
    return 1.0 / math.sqrt(r_sq)
