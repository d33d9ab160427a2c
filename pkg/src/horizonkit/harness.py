"""Curvature-comparison harness on a horizon slice plane.

Given a generator carrying a label jump at parameter u0, three parameters
are picked around it: u_f < u_p < u0 < u_minus (pastward-increasing, so
the event times satisfy t_f > t_p > t_R).  The slice plane R sits at the
time of the u_minus point.  Crease points q_n converging toward the u_p
point carry two generators each; their hits p_n^1, p_n^2 on R span a
chord over which the horizon slice theta_n and the cone-slice arc phi_n
of q_n are extracted as function graphs.  The two curves are tangent at
the chord ends with phi_n above theta_n, so the comparison lemma yields a
point r_n where the slice curvature is at least kappa_n = 1/(q_n.t -
t_R).  The summary checks that these curvatures pile up above kappa_p,
that second-order estimates of the slice at the u_minus point do not
stabilize below kappa_p, and that no sampled slice point is chronological
with the u_f point.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .curvature import (
    PlaneGraph,
    graph_from_callable,
    graph_from_samples,
    high_curvature_point,
    tangent_circle_curvature,
)
from .errors import CreaseExhaustionError, ParamError
from .horizon import Generator, HorizonPoint, generators_through, horizon_point
from .minkowski import SpacetimePoint, chronologically_precedes
from .region import Disk, Region


@dataclass
class HarnessParams:
    """Slice-plane setup around a differentiability jump."""

    generator: Generator
    u_f: float
    u_p: float
    u_minus: float
    jump: float
    kappa: float
    anchor: np.ndarray
    n_terms: int = 12

    @property
    def cut_height(self):
        return self.generator.cut_height

    @property
    def t_f(self):
        return self.cut_height - self.u_f

    @property
    def t_p(self):
        return self.cut_height - self.u_p

    @property
    def time_r(self):
        return self.cut_height - self.u_minus

    @property
    def kappa_f(self):
        return 1.0 / (self.t_f - self.time_r)

    @property
    def kappa_p(self):
        return 1.0 / (self.t_p - self.time_r)

    def base_at(self, t):
        g = self.generator
        return g.footpoint + t * g.direction

    def validate(self):
        """Ordering and curvature-gap (P1/P2) feasibility checks."""
        if not (0.0 < self.u_f < self.u_p < self.jump < self.u_minus
                < self.cut_height):
            raise ParamError(
                f"parameters must satisfy 0 < u_f < u_p < jump < u_minus < cut "
                f"(got {self.u_f}, {self.u_p}, {self.jump}, {self.u_minus})")
        if not (self.t_f > self.t_p > self.time_r >= 0.0):
            raise ParamError("slice plane must lie below both cone apexes")
        # P1 in flat space: cone slices on R are exact circles
        if not (self.t_f - self.time_r > 0 and self.t_p - self.time_r > 0):
            raise ParamError("cone slices on R are empty")
        # P2: 0 < kappa_f < kappa < kappa+1 < kappa_p
        if not (0 < self.kappa_f < self.kappa < self.kappa + 1 < self.kappa_p):
            raise ParamError(
                f"curvature comparison fails: kappa_f={self.kappa_f:.6g}, "
                f"kappa={self.kappa:.6g}, kappa_p={self.kappa_p:.6g}")


def select_params(region: Region, gen: Generator, jump: float,
                  margins=(0.05, 0.3, 9.0), n_terms: int = 12) -> HarnessParams:
    """Pick slice parameters straddling the jump.

    margins = (m_f, m_p, m_minus): u_p = (1 - m_p) * jump, u_f = m_f * u_p,
    u_minus = (1 + m_minus) * jump.  The anchor sits at the center of the
    u_p cone slice, which is on the normal line of that circle at the
    u_minus point.  Fails when the ordering or the curvature gap (P2) is
    infeasible.
    """
    m_f, m_p, m_minus = margins
    if not (0 < m_f < 1 and 0 < m_p < 1 and m_minus > 0):
        raise ParamError(f"degenerate margins {margins}")
    if not math.isfinite(gen.cut_height):
        raise ParamError("generator has no cut point")
    if not 0 < jump < gen.cut_height:
        raise ParamError("jump parameter must be interior to the generator")
    u_p = (1.0 - m_p) * jump
    u_f = m_f * u_p
    u_minus = (1.0 + m_minus) * jump
    kappa_f = 1.0 / (u_minus - u_f)
    kappa_p = 1.0 / (u_minus - u_p)
    if kappa_p - kappa_f <= 1.0:
        raise ParamError(
            f"P2 infeasible with margins {margins}: kappa gap "
            f"{kappa_p - kappa_f:.6g} <= 1")
    kappa = 0.5 * (kappa_f + kappa_p - 1.0)
    anchor = gen.footpoint + (gen.cut_height - u_p) * gen.direction
    params = HarnessParams(generator=gen, u_f=u_f, u_p=u_p, u_minus=u_minus,
                           jump=jump, kappa=kappa, anchor=anchor,
                           n_terms=n_terms)
    params.validate()
    return params


@dataclass
class HarnessRecord:
    n: int
    window: float
    q: HorizonPoint
    p1: np.ndarray
    p2: np.ndarray
    tangency_res: tuple
    r_point: np.ndarray
    kappa_theta_rn: float
    kappa_n: float
    slice_gap: float       # (E4): center offset + radius offset of the cones
    p_gap: float           # (E3): max distance of p_n^i from the u_minus point
    plane_angle: float = 0.0  # chord planes coincide with R in two dimensions


@dataclass
class HarnessReport:
    params: HarnessParams
    records: list
    exhausted_at: Optional[int]
    theta_last: Optional[PlaneGraph] = None
    notes: list = field(default_factory=list)


def _slice_graph(region: Region, p1, e1, e2, length, level, n_pts=129):
    """Horizon slice {rho = level} as a graph over the chord frame."""
    taus = np.linspace(0.0, length, n_pts)

    def solve(tau):
        def f(eta):
            z = p1 + tau * e1 + eta * e2
            return region.distance_to_complement(z) - level

        lo, hi = -0.25 * length - 1e-9, 0.5 * length + 1e-9
        flo, fhi = f(lo), f(hi)
        grow_lo = grow_hi = 0
        while flo > 0 and grow_lo < 40:
            lo -= 0.5 * length
            flo = f(lo)
            grow_lo += 1
        while fhi < 0 and grow_hi < 40:
            hi += 0.5 * length
            fhi = f(hi)
            grow_hi += 1
        if flo > 0 or fhi < 0:
            raise ParamError("could not bracket the horizon slice")
        for _ in range(60):
            mid = 0.5 * (lo + hi)
            if f(mid) > 0:
                hi = mid
            else:
                lo = mid
        return 0.5 * (lo + hi)

    etas = np.array([solve(t) for t in taus])
    return graph_from_samples(taus, etas)


def _endpoint_residual(theta: PlaneGraph, phi: PlaneGraph, at_start: bool):
    """First-derivative mismatch at a chord endpoint.

    Uses a one-sided second-order stencil on the sampled slice so the
    residual is not polluted by the curvature difference over an interior
    offset.
    """
    h = theta.step
    a, b = theta.domain
    if at_start:
        t0, s = a, 1.0
    else:
        t0, s = b, -1.0
    d_theta = s * (-3 * theta.f(t0) + 4 * theta.f(t0 + s * h)
                   - theta.f(t0 + 2 * s * h)) / (2 * h)
    return abs(d_theta - phi.d1(t0))


def _arc_graph(center_2d, radius, length):
    """Cone-slice circle as a graph over the chord frame (lower branch)."""
    c_tau, c_eta = center_2d

    def val(t):
        s = radius * radius - (t - c_tau) ** 2
        return c_eta - math.sqrt(max(s, 0.0))

    def d1(t):
        s = radius * radius - (t - c_tau) ** 2
        return (t - c_tau) / math.sqrt(max(s, 1e-300))

    def d2(t):
        s = radius * radius - (t - c_tau) ** 2
        return radius * radius / max(s, 1e-300) ** 1.5

    return graph_from_callable((0.0, length), val, d1, d2)


def _pick_crease_point(region, crease, base_p, min_feet_sep, tol_near=1e-8):
    """Nearest crease sample with well-separated feet (degenerate-chord
    candidates are thinned out, mirroring the subsequence selection)."""
    best = None
    best_d = math.inf
    for z in crease.samples:
        try:
            ns = region.nearest_boundary_set(z, tol_near)
        except Exception:
            continue
        if ns.continuum or len(ns.points) < 2:
            continue
        sep = max(np.linalg.norm(a - b) for i, a in enumerate(ns.points)
                  for b in ns.points[i + 1:])
        if sep < min_feet_sep:
            continue
        d = float(np.linalg.norm(z - base_p))
        if d < best_d:
            best_d = d
            best = z
    return best


def run_harness(region: Region, params: HarnessParams,
                n_slice_pts: int = 129) -> HarnessReport:
    """Replay the curvature comparison for a ladder of crease points.

    Crease points are searched in windows of radius 2^-n * scale around
    the u_p point; each yields two generators, their chord on R, the
    horizon-slice and cone-slice graphs, tangency residuals, and the
    extracted high-curvature point r_n with kappa_theta(r_n) >= kappa_n.
    Windows that contain no usable crease point end the ladder
    (exhaustion); processed records are returned either way.
    """
    params.validate()
    gen = params.generator
    scale = region.scene_scale
    base_p = params.base_at(params.t_p)
    base_minus = params.base_at(params.time_r)
    t_r = params.time_r
    min_sep = 1e-3 * scale

    records = []
    exhausted_at = None
    notes = []
    theta_last = None
    last_q = None
    n = 0
    misses = 0
    while len(records) < params.n_terms:
        n += 1
        w = scale * 2.0 ** (-n)
        if w < 1e-9 * scale:
            exhausted_at = n
            break
        window = ((base_p[0] - w, base_p[0] + w), (base_p[1] - w, base_p[1] + w))
        crease = region.crease_sample(window, step=w / 6.0)
        z = _pick_crease_point(region, crease, base_p, min_sep)
        if z is None:
            misses += 1
            if misses >= 3 and records:
                exhausted_at = n
                break
            if misses >= 8:
                exhausted_at = n
                break
            continue
        misses = 0
        if last_q is not None and np.linalg.norm(z - last_q) < 1e-11 * scale:
            # the crease ladder has stalled on the same point: keep the
            # bookkeeping per window without redoing identical geometry
            prev = records[-1]
            records.append(HarnessRecord(
                n=n, window=w, q=prev.q, p1=prev.p1, p2=prev.p2,
                tangency_res=prev.tangency_res, r_point=prev.r_point,
                kappa_theta_rn=prev.kappa_theta_rn, kappa_n=prev.kappa_n,
                slice_gap=prev.slice_gap, p_gap=prev.p_gap))
            continue
        q = horizon_point(region, z)
        if q.height <= t_r + 1e-12:
            notes.append(f"n={n}: crease point below the slice plane, thinned")
            continue
        gens = generators_through(region, q)
        if len(gens) < 2:
            notes.append(f"n={n}: multiplicity fell below 2 at q, thinned")
            continue
        # take the two best-separated feet
        if len(gens) > 2:
            best_pair, best_sep = None, -1.0
            for i in range(len(gens)):
                for j in range(i + 1, len(gens)):
                    sep = np.linalg.norm(gens[i].footpoint - gens[j].footpoint)
                    if sep > best_sep:
                        best_sep, best_pair = sep, (gens[i], gens[j])
            gens = list(best_pair)
        # generator directions run from the footpoint toward the cut, so
        # descending to the slice time walks backward along them
        r_q = q.height - t_r
        p_hits = [q.base - r_q * g.direction for g in gens]
        chord = p_hits[1] - p_hits[0]
        length = float(np.linalg.norm(chord))
        if length < 1e-9 * scale:
            notes.append(f"n={n}: degenerate chord, thinned")
            continue
        kappa_n = 1.0 / r_q
        if length <= 0.5 * r_q:
            # narrow chord: both curves are graphs over it (the regime of
            # nearly parallel generators)
            e1 = chord / length
            e2 = np.array([-e1[1], e1[0]])
            if float(e2 @ (params.anchor - p_hits[0])) < 0:
                e2 = -e2
            center_2d = (float((q.base - p_hits[0]) @ e1),
                         float((q.base - p_hits[0]) @ e2))
            theta = _slice_graph(region, p_hits[0], e1, e2, length, t_r,
                                 n_pts=n_slice_pts)
            phi = _arc_graph(center_2d, r_q, length)
            h = theta.step
            res = (_endpoint_residual(theta, phi, at_start=True),
                   _endpoint_residual(theta, phi, at_start=False))
            t_star, kappa_theta = high_curvature_point(
                phi, theta, tangency_tol=max(50 * h * h / max(r_q, h), 1e-7),
                order_tol=1e-7)
            r_pt = p_hits[0] + t_star * e1 + theta.f(t_star) * e2
        else:
            # wide chord (antipodal generators): the slice is not a graph
            # over it; check tangency and curvature per endpoint in frames
            # aligned with the common tangent
            res = []
            kappa_theta = -math.inf
            r_pt = p_hits[0]
            for p_i in p_hits:
                n_hat = (q.base - p_i) / r_q
                t_hat = np.array([-n_hat[1], n_hat[0]])
                ext = 0.2 * r_q
                local = _slice_graph(region, p_i - ext * t_hat, t_hat, n_hat,
                                     2 * ext, t_r, n_pts=65)
                mid = ext
                d_theta = (local.f(mid + local.step)
                           - local.f(mid - local.step)) / (2 * local.step)
                res.append(abs(d_theta))  # cone tangent is flat in this frame
                k_loc = abs(tangent_circle_curvature(local, mid,
                                                     mid + 4 * local.step))
                if k_loc > kappa_theta:
                    kappa_theta = k_loc
                    r_pt = p_i
            res = tuple(res)
            theta = None
            notes.append(f"n={n}: wide-chord record (local tangency only)")
        slice_gap = (float(np.linalg.norm(q.base - base_p))
                     + abs(q.height - params.t_p))
        p_gap = max(float(np.linalg.norm(p - base_minus)) for p in p_hits)
        records.append(HarnessRecord(
            n=n, window=w, q=q, p1=p_hits[0], p2=p_hits[1],
            tangency_res=tuple(res), r_point=r_pt,
            kappa_theta_rn=float(kappa_theta), kappa_n=float(kappa_n),
            slice_gap=slice_gap, p_gap=p_gap))
        if theta is not None:
            theta_last = theta
        last_q = q.base.copy()
    if not records:
        raise CreaseExhaustionError(
            "no usable crease points near the u_p point in any window")
    return HarnessReport(params=params, records=records,
                         exhausted_at=exhausted_at, theta_last=theta_last,
                         notes=notes)


@dataclass
class Verdict:
    curvature_piles_up: bool
    no_stable_second_order_below: bool
    achronality_holds: bool
    details: dict

    @property
    def passed(self):
        return (self.curvature_piles_up and self.no_stable_second_order_below
                and self.achronality_holds)


def slice_curvature_estimates(region: Region, params: HarnessParams,
                              n_scales: int = 4):
    """Tangent-circle curvature estimates of the slice at the u_minus point.

    The slice through the u_minus point is sampled as a graph over its
    tangent line; estimates are taken from both sides at a geometric
    ladder of offsets.  Returns (offsets, estimates).
    """
    base_minus = params.base_at(params.time_r)
    grad = region.gradient(base_minus)
    tangent = np.array([-grad[1], grad[0]])
    # rho grows along its gradient, away from the boundary; the slice
    # curve bends toward that side
    span = 0.5 * (params.t_p - params.time_r)
    graph = _slice_graph(region, base_minus - span * tangent, tangent, grad,
                         2 * span, params.time_r, n_pts=257)
    t0 = span
    hs = span * 0.5 ** np.arange(2, 2 + n_scales)
    offs, ests = [], []
    for h in hs:
        for sgn in (1.0, -1.0):
            offs.append(sgn * h)
            ests.append(tangent_circle_curvature(graph, t0, t0 + sgn * h))
    return np.array(offs), np.array(ests)


def contradiction_summary(region: Region, report: HarnessReport,
                          rel_tol: float = 5e-2) -> Verdict:
    """Check the three consequences of the curvature comparison.

    (i) the extracted slice curvatures stay above kappa_p up to rel_tol;
    (ii) tangent-circle estimates of the slice at the u_minus point do not
    stabilize below kappa_p (a stable second-order limit there would mean
    the horizon is twice differentiable at a first-order-only point);
    (iii) no sampled slice point is chronologically related to the u_f
    point (the real horizon never exhibits the contradiction).
    """
    params = report.params
    kappa_p = params.kappa_p
    tail = report.records[len(report.records) // 2:]
    liminf = min(r.kappa_theta_rn for r in tail)
    piles_up = liminf >= kappa_p * (1.0 - rel_tol)

    offs, ests = slice_curvature_estimates(region, params)
    small = np.argsort(np.abs(offs))[:4]
    spread = float(np.max(ests[small]) - np.min(ests[small]))
    med = float(np.median(ests[small]))
    stabilized = spread <= max(0.1 * abs(med), 1e-4 * kappa_p)
    no_stable_below = (not stabilized) or (med >= kappa_p * (1.0 - rel_tol))

    t_f_event = SpacetimePoint(params.base_at(params.t_f), params.t_f)
    achronal = True
    base_minus = params.base_at(params.time_r)
    grad = region.gradient(base_minus)
    tangent = np.array([-grad[1], grad[0]])
    span = 0.75 * (params.t_f - params.time_r)
    for s in np.linspace(-span, span, 61):
        x = base_minus + s * tangent
        if not region.inside(x):
            continue
        ev = SpacetimePoint(x, region.distance_to_complement(x))
        if chronologically_precedes(ev, t_f_event) or \
                chronologically_precedes(t_f_event, ev):
            achronal = False
    details = {
        "liminf_kappa_theta": liminf,
        "kappa_p": kappa_p,
        "estimate_spread": spread,
        "estimate_median": med,
        "stabilized": stabilized,
        "n_records": len(report.records),
    }
    return Verdict(curvature_piles_up=bool(piles_up),
                   no_stable_second_order_below=bool(no_stable_below),
                   achronality_holds=bool(achronal), details=details)


def report_to_csv(report: HarnessReport) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["n", "q_x", "q_y", "q_t", "p1_x", "p1_y", "p2_x", "p2_y",
                "tangency_res1", "tangency_res2", "r_x", "r_y",
                "kappa_theta_rn", "kappa_n"])
    for r in report.records:
        w.writerow([r.n] + [f"{v:.17g}" for v in (
            r.q.base[0], r.q.base[1], r.q.height,
            r.p1[0], r.p1[1], r.p2[0], r.p2[1],
            r.tangency_res[0], r.tangency_res[1],
            r.r_point[0], r.r_point[1], r.kappa_theta_rn, r.kappa_n)])
    return buf.getvalue()


# ---------------------------------------------------------------------------
# local reconstruction of the horizon from its own past cones
# ---------------------------------------------------------------------------

class DiskUnion:
    """Union of many open disks as a single vectorized primitive.

    Used by the reconstruction path, where thousands of past-cone slices
    make per-disk Python objects too slow.  Feet are near-feet of the
    circles filtered against all other disks, plus circle-circle corners
    among the competitive disks.
    """

    def __init__(self, centers, radii):
        self.centers = np.asarray(centers, dtype=float)
        self.radii = np.asarray(radii, dtype=float)
        if self.centers.ndim != 2 or self.centers.shape[0] != self.radii.shape[0]:
            raise ValueError("need matching centers and radii")
        if np.any(self.radii <= 0):
            raise ValueError("radii must be positive")
        # typical center spacing bounds how far the union boundary can sit
        # above the best single-disk margin; it caps the candidate shortlist
        n = self.centers.shape[0]
        if n > 1:
            k = min(n, 64)
            idx = np.linspace(0, n - 1, k).astype(int)
            gaps = []
            for i in idx:
                d = np.linalg.norm(self.centers - self.centers[i][None, :],
                                   axis=1)
                d[i] = np.inf
                gaps.append(float(np.min(d)))
            self._spacing = float(np.median(gaps))
        else:
            self._spacing = float(np.max(self.radii))

    def _margins(self, p):
        return self.radii - np.linalg.norm(self.centers - _np_v(p)[None, :],
                                           axis=1)

    def side_margin(self, p):
        return float(np.max(self._margins(p)))

    def inside(self, p):
        return self.side_margin(p) > 0.0

    def _valid(self, z, skip_mask, tol):
        m = self._margins(z)
        m[skip_mask] = -np.inf
        return not np.any(m > tol)

    def feet(self, p):
        p = _np_v(p)
        d = np.linalg.norm(self.centers - p[None, :], axis=1)
        f = np.abs(d - self.radii)  # distance to each circle
        tol = 1e-9 * float(np.max(self.radii))
        # distance to the union boundary lies between the best single-disk
        # margin m_max and m_max plus a few center spacings; circles whose
        # full boundary is closer than m_max cannot host a valid foot
        m_max = float(np.max(self.radii - d))
        ub = m_max + 4.0 * self._spacing
        cand = np.nonzero((f <= ub + 1e-7) & (f >= m_max - 1e-9))[0]
        cand = cand[np.argsort(f[cand])]
        out = []
        best = math.inf
        shortlist = []
        for i in cand:
            if f[i] > best + 1e-7 or len(shortlist) >= 48:
                break
            shortlist.append(int(i))
            mask = np.zeros(len(self.radii), dtype=bool)
            mask[i] = True
            if d[i] < 1e-14:
                # query at this circle's center: every direction is
                # equidistant, so any valid arc point is an exact foot; the
                # valid arcs are narrow, so minimize the invasion depth
                # over the angle before testing
                def invade(a, i=i):
                    z = self.centers[i] + self.radii[i] * np.array(
                        [math.cos(a), math.sin(a)])
                    m = self.radii - np.linalg.norm(
                        self.centers - z[None, :], axis=1)
                    m[i] = -math.inf
                    return float(np.max(m))

                angles = 2 * np.pi * (np.arange(64) + 0.5) / 64
                vals = [invade(a) for a in angles]
                k = int(np.argmin(vals))
                lo = angles[k] - 2 * np.pi / 64
                hi = angles[k] + 2 * np.pi / 64
                for _ in range(40):
                    m1 = lo + (hi - lo) / 3
                    m2 = hi - (hi - lo) / 3
                    if invade(m1) < invade(m2):
                        hi = m2
                    else:
                        lo = m1
                a_best = 0.5 * (lo + hi)
                if invade(a_best) <= tol:
                    z = self.centers[i] + self.radii[i] * np.array(
                        [math.cos(a_best), math.sin(a_best)])
                    best = min(best, float(self.radii[i]))
                    out.append(z)
                continue
            z = self.centers[i] + self.radii[i] * (p - self.centers[i]) / d[i]
            if self._valid(z, mask, tol):
                dist = float(np.linalg.norm(p - z))
                best = min(best, dist)
                out.append(z)
        for ii in range(len(shortlist)):
            for jj in range(ii + 1, len(shortlist)):
                i, j = shortlist[ii], shortlist[jj]
                for z in _circle_circle(self.centers[i], self.radii[i],
                                        self.centers[j], self.radii[j]):
                    mask = np.zeros(len(self.radii), dtype=bool)
                    mask[i] = mask[j] = True
                    if self._valid(z, mask, tol):
                        out.append(z)
        return out

    def continuum(self, p, tol=0.0):
        return None

    def lower_bound(self, p):
        p = _np_v(p)
        d = np.linalg.norm(self.centers - p[None, :], axis=1)
        return float(np.min(np.abs(d - self.radii)))

    def on_boundary(self, y, tol):
        return abs(self.side_margin(y)) <= tol

    def inward_normal(self, y):
        y = _np_v(y)
        d = np.linalg.norm(self.centers - y[None, :], axis=1)
        i = int(np.argmin(np.abs(d - self.radii)))
        return (self.centers[i] - y) / d[i]

    def scale(self):
        return float(np.max(np.linalg.norm(self.centers, axis=1) + self.radii))


def _np_v(p):
    return np.asarray(p, dtype=float)


def _circle_circle(c1, r1, c2, r2):
    d = c2 - c1
    dist = float(np.linalg.norm(d))
    if dist < 1e-14 or dist > r1 + r2 or dist < abs(r1 - r2):
        return []
    a = (r1 * r1 - r2 * r2 + dist * dist) / (2 * dist)
    h_sq = r1 * r1 - a * a
    if h_sq < 0:
        return []
    u = d / dist
    mid = c1 + a * u
    half = math.sqrt(h_sq)
    tang = np.array([-u[1], u[0]])
    return [mid + half * tang, mid - half * tang]


def lmodel_reconstruct(region: Region, center: HorizonPoint, radius_u: float,
                       plane_time_f: float, spacing: Optional[float] = None) -> Region:
    """Rebuild the region from past cones of nearby horizon points.

    Horizon points are sampled on a base grid inside the spacetime ball of
    radius radius_u around center; each contributes the open disk cut from
    its timelike past by the plane {t = plane_time_f}.  The union of those
    disks is the reconstructed initial set.
    """
    if spacing is None:
        spacing = radius_u / 50.0
    c_base = np.asarray(center.base, dtype=float)
    centers = []
    radii = []
    ks = np.arange(-50, 51)
    min_height = math.inf
    for i in ks:
        for j in ks:
            x = c_base + spacing * np.array([i, j], dtype=float)
            if not region.inside(x):
                continue
            rho = region.distance_to_complement(x)
            gap = math.hypot(float(np.linalg.norm(x - c_base)),
                             rho - center.height)
            if gap > radius_u:
                continue
            min_height = min(min_height, rho)
            if rho - plane_time_f <= 0:
                raise ParamError(
                    "plane must lie strictly below every sampled horizon point")
            centers.append(x)
            radii.append(rho - plane_time_f)
    if not centers:
        raise ParamError("no horizon points inside the sampling ball")
    return Region([DiskUnion(np.array(centers), np.array(radii))],
                  name="reconstructed")


def _union_height_bounds(union: DiskUnion, x):
    """Certified bounds on dist(x, complement) for a disk union.

    The best single-disk margin is a lower bound.  For the upper bound a
    confirmed complement point is searched among the near-feet of the
    best-margin circles (a point outside every disk witnesses the
    distance from above); the bound falls back to the best margin plus
    the boundary sampling slack when no witness validates.
    """
    x = _np_v(x)
    d = np.linalg.norm(union.centers - x[None, :], axis=1)
    margins = union.radii - d
    m_max = float(np.max(margins))
    order = np.argsort(-margins)[:8]
    h_ub = m_max + 4.0 * union._spacing
    tol = 1e-9 * float(np.max(union.radii))
    for i in order:
        if d[i] < 1e-14:
            continue
        z = union.centers[i] + union.radii[i] * (x - union.centers[i]) / d[i]
        if float(np.max(union.radii
                        - np.linalg.norm(union.centers - z[None, :], axis=1))) <= tol:
            h_ub = min(h_ub, float(np.linalg.norm(x - z)))
    return m_max, h_ub


def lmodel_verify(original: Region, reconstructed: Region,
                  center: HorizonPoint, radius_u: float, grid: float,
                  plane_time_f: float, details: Optional[dict] = None) -> float:
    """Largest aligned height gap between the two horizons inside the ball.

    The reconstructed horizon sits over the plane {t = plane_time_f}, so
    its height dist(x, complement) is compared against rho - plane_time_f
    on a base grid.  The reported value is a certified upper bound on the
    gap (the reconstruction can only undershoot); a certified lower bound
    from complement witnesses goes into details["max_gap_lower"].
    """
    union = reconstructed.primitives[0]
    if not isinstance(union, DiskUnion):
        raise ParamError("reconstructed region must wrap a disk union")
    c_base = np.asarray(center.base, dtype=float)
    n_side = max(int(radius_u / grid), 2)
    gaps_ub = []
    gaps_lb = []
    # offset the grid off the sampling lattice so the bound is probed
    # between cone apexes, not at them
    off = 0.25 * grid
    for i in range(-n_side, n_side + 1):
        for j in range(-n_side, n_side + 1):
            x = c_base + grid * np.array([i, j], dtype=float) + off
            if not original.inside(x):
                continue
            rho = original.distance_to_complement(x)
            gap_vec = math.hypot(float(np.linalg.norm(x - c_base)),
                                 rho - center.height)
            if gap_vec > 0.8 * radius_u:
                continue
            target = rho - plane_time_f
            m_max, h_ub = _union_height_bounds(union, x)
            gaps_ub.append(max(target - m_max, 0.0))
            gaps_lb.append(max(target - h_ub, 0.0))
    if not gaps_ub:
        raise ParamError("verification ball contains no base points")
    if details is not None:
        details["max_gap_lower"] = float(max(gaps_lb))
        details["n_points"] = len(gaps_ub)
    return float(max(gaps_ub))
