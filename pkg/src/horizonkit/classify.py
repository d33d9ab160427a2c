"""Pointwise differentiability classification of the horizon.

The horizon over a region is the graph of the distance function rho, so
its regularity at a point is read off the behaviour of grad(rho) around
the base point:

  NotDifferentiable   two or more nearest boundary points (a crease point);
  DifferentiableOnly  unique foot, but gradient oscillation omega(r) stays
                      at or above tol_angle all the way down the probe
                      radii (crease accumulation, sqrt-type decay);
  C1NotC2             gradient oscillation dies out but second-derivative
                      oscillation persists across scales;
  C2Plus              everything settles.

omega(r) is the largest pairwise angle between gradients at
multiplicity-1 probes in the r-ball; second-derivative oscillation is the
spread of finite-difference Hessians over probes of the r-ring.  Decay
versus persistence is decided on the two smallest radii: a log-log slope
above 0.75 counts as decaying (smooth variation shows slope ~1, crease
accumulation of focal type shows ~0.5, a genuine jump shows ~0).
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import CreaseSaturatedError, ParamError
from .horizon import Generator, HorizonPoint, trace_generator
from .region import BumpBoundary, GraphDomain, Region

LABEL_NOT_DIFF = "NotDifferentiable"
LABEL_DIFF_ONLY = "DifferentiableOnly"
LABEL_C1_NOT_C2 = "C1NotC2"
LABEL_C2_PLUS = "C2Plus"

_PAST_SIDE = (LABEL_C1_NOT_C2, LABEL_C2_PLUS)
_CUT_SIDE = (LABEL_NOT_DIFF, LABEL_DIFF_ONLY)

DEFAULT_TOL_ANGLE = 1e-2
DEFAULT_HESS_TOL = 0.1
DECAY_SLOPE = 0.75
BLUR_FACTOR = 8.0  # DifferentiableOnly runs within BLUR_FACTOR*r_min of the
#                    cut are attributed to the endpoint, not an interior jump
N_ANGLES = 32


def default_probe_radii(region: Region):
    s = region.scene_scale
    return tuple(s * 10.0 ** (-k) for k in range(2, 6))


@dataclass
class Diagnostics:
    """Raw probe statistics behind a label."""

    probe_radii: tuple
    omega: tuple           # cumulative gradient oscillation per ball
    hess_osc: tuple        # Hessian spread per ring
    crease_dist: float     # nearest detected crease point, inf if none
    multiplicity: int      # 0 stands for a continuum


@dataclass
class DiffClass:
    label: str
    diagnostics: Diagnostics


def _tail_slope(radii, values, floor=1e-14):
    """Log-log slope between the two smallest radii; 0 when flat."""
    v1 = max(values[-1], floor)
    v2 = max(values[-2], floor)
    return math.log(v2 / v1) / math.log(radii[-2] / radii[-1])


def _pairwise_max_angle(grads):
    if len(grads) < 2:
        return 0.0
    g = np.asarray(grads)
    dots = np.clip(g @ g.T, -1.0, 1.0)
    return float(np.max(np.arccos(dots)))


def classify_point(region: Region, p: HorizonPoint, probe_radii=None,
                   tol_angle: float = DEFAULT_TOL_ANGLE,
                   hess_tol: float = DEFAULT_HESS_TOL,
                   tol_near: float = 1e-8,
                   multiplicity_override=None) -> DiffClass:
    """Differentiability class of the horizon at a point.

    Probes the base point on rings at the given radii (decreasing), using
    exact gradients of the distance function.  See the module docstring
    for the decision rules.  multiplicity_override replaces the local
    nearest-set count (used at traced cut points, where the limit
    multiplicity is known more accurately than a pointwise tie count; 0
    stands for unbounded).
    """
    if probe_radii is None:
        probe_radii = default_probe_radii(region)
    radii = tuple(sorted(probe_radii, reverse=True))
    base = np.asarray(p.base, dtype=float)

    ns = region.nearest_boundary_set(base, tol_near)
    if multiplicity_override is not None:
        mult = multiplicity_override
        not_diff = mult == 0 or mult >= 2
    else:
        mult = 0 if ns.continuum else len(ns.points)
        not_diff = ns.continuum or mult >= 2
    if not_diff:
        diag = Diagnostics(radii, (math.pi,) * len(radii),
                           (math.inf,) * len(radii), 0.0, mult)
        return DiffClass(LABEL_NOT_DIFF, diag)

    def probe_info(z):
        try:
            nz = region.nearest_boundary_set(z, tol_near)
        except Exception:
            return None
        if nz.continuum or len(nz.points) != 1:
            return None
        return (z - nz.points[0]) / nz.distance, nz.points[0]

    if ns.continuum or len(ns.points) != 1:
        center_grads = []
    else:
        center_grads = [(base - ns.points[0]) / ns.distance]
    ring_grads = []
    ring_feet = []
    ring_pts = []
    crease_pts = []
    angles = 2 * np.pi * (np.arange(N_ANGLES) + 0.5) / N_ANGLES
    unit = np.stack([np.cos(angles), np.sin(angles)], axis=1)
    for r in radii:
        grads, feet, pts = [], [], []
        for u in unit:
            info = probe_info(base + r * u)
            if info is None:
                grads.append(None)
                feet.append(None)
                pts.append(base + r * u)
                continue
            grads.append(info[0])
            feet.append(info[1])
            pts.append(base + r * u)
        usable = sum(1 for g in grads if g is not None)
        if usable < 6:
            raise CreaseSaturatedError(
                f"only {usable} multiplicity-1 probes on the r={r} ring"
            )
        ring_grads.append(grads)
        ring_feet.append(feet)
        ring_pts.append(pts)
        # crease hits between angular neighbours on this ring
        id_tol = 0.8 * r
        for j in range(N_ANGLES):
            k = (j + 1) % N_ANGLES
            fa, fb = feet[j], feet[k]
            if fa is None or fb is None:
                continue
            if np.linalg.norm(fa - fb) > id_tol:
                hit = region._polish_crease(pts[j], pts[k], tol_near)
                if hit is None:
                    continue
                try:
                    nh = region.nearest_boundary_set(hit, tol_near)
                except Exception:
                    continue
                if nh.continuum or len(nh.points) >= 2:
                    crease_pts.append(hit)
    crease_dist = min((float(np.linalg.norm(c - base)) for c in crease_pts),
                      default=math.inf)

    # cumulative gradient oscillation per ball (radii are decreasing, so the
    # ball at radii[i] holds the rings i..end plus the center)
    omega = []
    for i in range(len(radii)):
        grads = list(center_grads)
        for ring in ring_grads[i:]:
            grads.extend(g for g in ring if g is not None)
        omega.append(_pairwise_max_angle(grads))

    # Hessian spread per ring from central differences of exact gradients;
    # stencils whose feet jump by far more than the stencil width straddle
    # a crease and would contaminate the spread with unbounded values
    hess_osc = []
    for i, r in enumerate(radii):
        h = r / 16.0
        hessians = []
        for j in range(0, N_ANGLES, 2):
            if ring_grads[i][j] is None:
                continue
            z = ring_pts[i][j]
            cols = []
            ok = True
            for e in (np.array([1.0, 0.0]), np.array([0.0, 1.0])):
                ip = probe_info(z + h * e)
                im = probe_info(z - h * e)
                if ip is None or im is None:
                    ok = False
                    break
                if np.linalg.norm(ip[1] - im[1]) > 64.0 * h:
                    ok = False
                    break
                cols.append((ip[0] - im[0]) / (2 * h))
            if ok:
                hessians.append(np.stack(cols, axis=1))
        if len(hessians) >= 2:
            spread = 0.0
            for a in range(len(hessians)):
                for b in range(a + 1, len(hessians)):
                    spread = max(spread, float(np.max(np.abs(
                        hessians[a] - hessians[b]))))
            hess_osc.append(spread)
        else:
            hess_osc.append(0.0)

    diag = Diagnostics(radii, tuple(omega), tuple(hess_osc), crease_dist, 1)

    # DifferentiableOnly needs crease accumulation at probe resolution:
    # a crease inside the smallest ball plus oscillation that stays at or
    # above tol_angle instead of decaying
    if (crease_dist <= radii[-1] and min(omega) >= tol_angle
            and _tail_slope(radii, omega) <= DECAY_SLOPE):
        return DiffClass(LABEL_DIFF_ONLY, diag)
    if hess_osc[-1] >= hess_tol and _tail_slope(radii, hess_osc) <= DECAY_SLOPE:
        return DiffClass(LABEL_C1_NOT_C2, diag)
    return DiffClass(LABEL_C2_PLUS, diag)


@dataclass
class ProfileSample:
    u: float
    point: HorizonPoint
    result: DiffClass

    @property
    def label(self):
        return self.result.label


@dataclass
class GeneratorProfile:
    """Labels along a generator, ordered from the cut point pastward."""

    generator: Generator
    region: Region
    samples: list
    jump: Optional[float]
    probe_radii: tuple
    resolution: float  # u-spacing scale near the reported jump


def _sample_parameters(cut_height, r_min, n_samples):
    """Geometric spread near the cut, uniform toward the footpoint."""
    u_min = 4.0 * r_min
    u_mid = 0.3 * cut_height
    u_max = 0.95 * cut_height
    n_geo = max(n_samples // 2, 4)
    n_uni = max(n_samples - n_geo, 4)
    geo = np.geomspace(u_min, u_mid, n_geo)
    uni = np.linspace(u_mid, u_max, n_uni + 1)[1:]
    return np.concatenate([geo, uni])


def classify_generator(region: Region, gen: Generator, n_samples: int = 24,
                       probe_radii=None, tol_angle: float = DEFAULT_TOL_ANGLE,
                       hess_tol: float = DEFAULT_HESS_TOL) -> GeneratorProfile:
    """Classify points along a generator and locate the label transition.

    Samples are geometrically dense near the cut point and uniform toward
    the footpoint; the cut point itself is sample u = 0.  The jump is the
    boundary between a DifferentiableOnly run that genuinely leaves the
    cut's resolution blur and the C1NotC2/C2Plus run behind it.
    """
    if n_samples < 8:
        raise ParamError("need at least 8 samples")
    if probe_radii is None:
        probe_radii = default_probe_radii(region)
    radii = tuple(sorted(probe_radii, reverse=True))
    r_min = radii[-1]

    if math.isfinite(gen.cut_height):
        cut_h = gen.cut_height
        us = np.concatenate([[0.0], _sample_parameters(cut_h, r_min, n_samples)])
    else:
        cut_h = 2.0 * region.scene_scale  # profiling window for open ends
        us = _sample_parameters(cut_h, r_min, n_samples)
    samples = []
    for u in us:
        if u >= cut_h:
            continue
        hp = HorizonPoint(gen.footpoint + (cut_h - u) * gen.direction,
                          cut_h - u)
        override = None
        if u == 0.0 and math.isfinite(gen.cut_height):
            m = gen.cut_multiplicity
            override = 0 if m.unbounded else m.count
        res = classify_point(region, hp, probe_radii=radii,
                             tol_angle=tol_angle, hess_tol=hess_tol,
                             multiplicity_override=override)
        samples.append(ProfileSample(u=float(u), point=hp, result=res))
    samples.sort(key=lambda s: s.u)

    jump = _detect_jump(samples, r_min,
                        finite_cut=math.isfinite(gen.cut_height))
    res_scale = float(np.min(np.diff([s.u for s in samples]))) if len(samples) > 1 else 0.0
    return GeneratorProfile(generator=gen, region=region, samples=samples,
                            jump=jump, probe_radii=radii, resolution=res_scale)


def _detect_jump(samples, r_min, finite_cut=True):
    """Interior jump parameter, or None for endpoint-only transitions."""
    if not finite_cut:
        return None
    labels = [s.label for s in samples]
    # skip the cut sample and any leading crease-contaminated samples
    i = 0
    while i < len(labels) and labels[i] == LABEL_NOT_DIFF and samples[i].u <= BLUR_FACTOR * r_min:
        i += 1
    do_end = None
    j = i
    while j < len(labels) and labels[j] == LABEL_DIFF_ONLY:
        do_end = j
        j += 1
    if do_end is None:
        return None
    if samples[do_end].u <= BLUR_FACTOR * r_min:
        return None  # confined to the cut's resolution blur
    if j >= len(labels) or labels[j] not in _PAST_SIDE:
        return None
    return 0.5 * (samples[do_end].u + samples[j].u)


def locate_jump(profile: GeneratorProfile,
                refine_steps: int = 8) -> Optional[float]:
    """Bisection refinement of the jump between the bracketing samples."""
    if profile.jump is None:
        return None
    region = profile.region
    gen = profile.generator
    lo = max((s.u for s in profile.samples
              if s.label == LABEL_DIFF_ONLY and s.u < profile.jump),
             default=None)
    hi = min((s.u for s in profile.samples
              if s.label in _PAST_SIDE and s.u > profile.jump), default=None)
    if lo is None or hi is None:
        return profile.jump
    for _ in range(refine_steps):
        mid = 0.5 * (lo + hi)
        hp = gen.point_from_cut(mid)
        res = classify_point(region, hp, probe_radii=profile.probe_radii)
        if res.label == LABEL_DIFF_ONLY:
            lo = mid
        elif res.label in _PAST_SIDE:
            hi = mid
        else:
            break
    return 0.5 * (lo + hi)


@dataclass
class StructureReport:
    passed: bool
    violations: list = field(default_factory=list)
    checks: list = field(default_factory=list)


def verify_structure(profile: GeneratorProfile,
                     adjacent_window: Optional[float] = None) -> StructureReport:
    """Check the monotone label pattern along a generator.

    (i) reading from the cut pastward, labels never fall back from
    {C1NotC2, C2Plus} to {DifferentiableOnly, NotDifferentiable};
    (ii) with an interior jump, the samples just past it are C1NotC2 and
    never C2Plus inside the adjacent window (first-order class change);
    (iii) the cut sample is differentiable exactly when one generator ends
    there; (iv) any interior C2Plus sample forbids a jump on the
    generator.
    """
    report = StructureReport(passed=True)
    samples = profile.samples
    labels = [s.label for s in samples]

    seen_past_side = False
    monotone = True
    for lab in labels:
        if lab in _PAST_SIDE:
            seen_past_side = True
        elif seen_past_side:
            monotone = False
    report.checks.append(("monotone-pattern", monotone))
    if not monotone:
        report.violations.append("label sequence returns to the cut side")

    if profile.jump is not None:
        if adjacent_window is None:
            adjacent_window = profile.probe_radii[0]
        adj = [s for s in samples
               if profile.jump < s.u <= profile.jump + adjacent_window]
        bad = [s for s in adj if s.label == LABEL_C2_PLUS]
        first_past = next((s for s in samples if s.u > profile.jump
                           and s.label in _PAST_SIDE), None)
        ok = not bad and (first_past is None or first_past.label == LABEL_C1_NOT_C2)
        report.checks.append(("first-order-past-jump", ok))
        if not ok:
            report.violations.append(
                "second-order-smooth sample adjacent to the jump")

    cut_samples = [s for s in samples if s.u == 0.0]
    if cut_samples:
        cut = cut_samples[0]
        mult = profile.generator.cut_multiplicity
        differentiable = cut.label != LABEL_NOT_DIFF
        single = (not mult.unbounded) and mult.count == 1
        ok = differentiable == single
        report.checks.append(("endpoint-multiplicity-rule", ok))
        if not ok:
            report.violations.append(
                f"cut label {cut.label} inconsistent with multiplicity {mult}")

    interior_c2 = any(s.label == LABEL_C2_PLUS for s in samples if s.u > 0)
    ok = not (interior_c2 and profile.jump is not None)
    report.checks.append(("interior-smooth-forbids-jump", ok))
    if not ok:
        report.violations.append("interior C2Plus sample together with a jump")

    report.passed = not report.violations
    return report


def profile_to_csv(profile: GeneratorProfile) -> str:
    """CSV export: one row per sample, floats at 17 significant digits."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    nr = len(profile.probe_radii)
    w.writerow(["u", "base_x", "base_y", "height", "multiplicity", "label"]
               + [f"omega_r{i + 1}" for i in range(nr)] + ["crease_dist"])
    for s in profile.samples:
        d = s.result.diagnostics
        w.writerow([f"{s.u:.17g}", f"{s.point.base[0]:.17g}",
                    f"{s.point.base[1]:.17g}", f"{s.point.height:.17g}",
                    d.multiplicity, s.label]
                   + [f"{o:.17g}" for o in d.omega]
                   + [f"{d.crease_dist:.17g}"])
    return buf.getvalue()


# ---------------------------------------------------------------------------
# jump-scene search over the dip family
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BumpFamilyParams:
    """One member of the dip family on a graph boundary.

    Dips sit at x_k = 2^-k with widths 2^-(k+2) and depths
    eps1 * decay^(k-1) * 2^-k; kappa_left optionally bends the x < 0 side
    of the base upward, which puts a curvature step at the footpoint.
    """

    eps1: float
    decay: float
    n_dips: int = 6
    kappa_left: float = 0.0

    def boundary(self) -> BumpBoundary:
        dips = []
        for k in range(1, self.n_dips + 1):
            x_k = 2.0 ** (-k)
            w_k = 2.0 ** (-k - 2)
            eps_k = self.eps1 * self.decay ** (k - 1)
            d_k = eps_k * x_k
            if d_k > 0:
                dips.append((x_k, w_k, d_k))
        return BumpBoundary(height=1.0, kappa_left=self.kappa_left,
                            dips=tuple(dips))

    def region(self) -> Region:
        return Region([GraphDomain(self.boundary())], name="jump")


@dataclass
class JumpSearchResult:
    params: BumpFamilyParams
    region: Region
    generator: Generator
    profile: GeneratorProfile
    structure: StructureReport
    candidates_tried: list  # (params, outcome string)


def default_candidates():
    """Candidate ladder: the plain dip family first, then the widened
    family with a base-curvature step at the footpoint."""
    cands = []
    for kappa in (0.0, 1.0):
        cands.append(BumpFamilyParams(eps1=0.0, decay=1.0, kappa_left=kappa))
        cands.append(BumpFamilyParams(eps1=0.5, decay=1.0, kappa_left=kappa))
        for eps1 in (0.04, 0.1):
            for decay in (0.25, 0.125):
                cands.append(BumpFamilyParams(eps1=eps1, decay=decay,
                                              kappa_left=kappa))
    return cands


def search_jump_scene(candidates=None, budget: int = 16,
                      n_samples: int = 24) -> Optional[JumpSearchResult]:
    """Tune the dip family until a generator shows an interior jump.

    Walks the candidate ladder, tracing the vertical generator from
    (0, 1) and profiling it; a candidate wins when the profile reports an
    interior jump and passes the structure checks.  Returns None when the
    budget is exhausted without a winner (callers fall back to the
    crease-control scenes).
    """
    if candidates is None:
        candidates = default_candidates()
    tried = []
    for params in candidates[:budget]:
        region = params.region()
        try:
            gen = trace_generator(region, np.array([0.0, 1.0]))
        except Exception as exc:
            tried.append((params, f"trace failed: {exc}"))
            continue
        if not math.isfinite(gen.cut_height):
            tried.append((params, "no cut point (open generator)"))
            continue
        try:
            profile = classify_generator(region, gen, n_samples=n_samples)
        except CreaseSaturatedError as exc:
            tried.append((params, f"crease saturation: {exc}"))
            continue
        if profile.jump is None:
            labs = {s.label for s in profile.samples}
            tried.append((params, f"no interior jump (labels {sorted(labs)})"))
            continue
        structure = verify_structure(profile)
        if not structure.passed:
            tried.append((params, f"structure violations: {structure.violations}"))
            continue
        tried.append((params, "accepted"))
        return JumpSearchResult(params=params, region=region, generator=gen,
                                profile=profile, structure=structure,
                                candidates_tried=tried)
    return None
