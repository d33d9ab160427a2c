"""Development membership, oracle agreement, generator tracing."""

import math

import numpy as np
import pytest

from horizonkit.errors import CornerError, ParamError
from horizonkit.horizon import (
    HorizonPoint,
    development_oracle,
    generator_multiplicity,
    generators_through,
    horizon_point,
    in_development,
    trace_generator,
)
from horizonkit.minkowski import SpacetimePoint, chronologically_precedes
from horizonkit.region import (
    AntiDisk,
    ConvexPolygon,
    Disk,
    EllipseRegion,
    HalfPlane,
    Region,
)


def half_plane():
    return Region([HalfPlane((0, -1), 0.0)], name="half_plane")


def slab():
    return Region([HalfPlane((0, 1), 1.0), HalfPlane((0, -1), 1.0)], name="slab")


def unit_disk():
    return Region([Disk((0, 0), 1.0)], name="disk")


def two_disks_exterior():
    return Region([AntiDisk((2, 0), 1.0), AntiDisk((-2, 0), 1.0)],
                  name="two_disks")


def ellipse():
    return Region([EllipseRegion((0, 0), 2.0, 1.0)], name="ellipse")


def P(x, t):
    return SpacetimePoint(np.asarray(x, dtype=float), t)


def test_in_development_disk():
    r = unit_disk()
    assert in_development(r, P([0, 0], 0.5))
    assert not in_development(r, P([0, 0], 1.5))
    assert not in_development(r, P([2, 0], 0.1))


def test_in_development_requires_nonnegative_time():
    with pytest.raises(ParamError):
        in_development(unit_disk(), P([0, 0], -0.1))


def test_oracle_clear_cases():
    hp = half_plane()
    assert development_oracle(hp, P([0, 5], 1.0), 200)
    assert not development_oracle(hp, P([0, 0.5], 1.0), 200)
    assert not development_oracle(unit_disk(), P([0, 0], 1.5), 200)


def test_oracle_catches_moderately_marginal_points():
    hp = half_plane()
    # rho = 1: just past the development boundary
    assert not development_oracle(hp, P([0, 1.0], 1.0 + 5e-3), 200)
    r2 = two_disks_exterior()
    # pocket case: the ball barely swallows the right disk (rho((0,0)) = 1)
    assert not development_oracle(r2, P([0, 0], 1.0 + 5e-3), 200)


def test_oracle_agreement_random():
    """Closed form vs causal-curve sampling, guarded away from the
    development boundary by the oracle's angular resolution limit."""
    rng = np.random.default_rng(99)
    for region, box in ((slab(), ([-2, -2], [2, 2])),
                        (unit_disk(), ([-1.5, -1.5], [1.5, 1.5])),
                        (two_disks_exterior(), ([-4, -4], [4, 4]))):
        checked = 0
        while checked < 120:
            x = rng.uniform(box[0], box[1])
            t = rng.uniform(0.0, 2.0)
            rho = region.distance_to_complement(x)
            if abs(t - rho) < 1e-3 * region.scene_scale:
                continue
            if t == 0.0:
                continue
            p = P(x, t)
            checked += 1
            assert in_development(region, p) == development_oracle(
                region, p, 200, seed=checked)


def test_horizon_point_heights():
    assert horizon_point(unit_disk(), [0.5, 0]).height == pytest.approx(0.5)
    assert horizon_point(slab(), [2, -0.25]).height == pytest.approx(0.75)
    assert horizon_point(half_plane(), [0, 2]).height == pytest.approx(2.0)


def test_trace_generator_disk_apex():
    gen = trace_generator(unit_disk(), [1.0, 0.0])
    assert gen.domain_kind == "half-open-at-future"
    assert gen.cut_height == pytest.approx(1.0, abs=1e-7)
    assert np.allclose(gen.cut_point.base, [0, 0], atol=1e-7)
    assert gen.cut_multiplicity.unbounded


def test_trace_generator_slab():
    gen = trace_generator(slab(), [0.0, 1.0])
    assert gen.cut_height == pytest.approx(1.0, abs=1e-7)
    assert np.allclose(gen.cut_point.base, [0, 0], atol=1e-7)
    assert gen.cut_multiplicity.count == 2
    assert np.allclose(gen.direction, [0, -1], atol=1e-12)


def test_trace_generator_half_plane_open():
    gen = trace_generator(half_plane(), [0.0, 0.0])
    assert gen.domain_kind == "open"
    assert math.isinf(gen.cut_height)


def test_trace_generator_ellipse_focal_cut():
    gen = trace_generator(ellipse(), [2.0, 0.0])
    # focal cut at the center of the osculating circle: (1.5, 0), height 0.5;
    # the tie there is quadratically degenerate, so location is sqrt(tol)-limited
    assert gen.cut_height == pytest.approx(0.5, abs=1e-3)
    assert np.allclose(gen.cut_point.base, [1.5, 0], atol=1e-3)
    assert gen.cut_multiplicity.count == 1


def test_trace_generator_two_disks():
    gen = trace_generator(two_disks_exterior(), [1.0, 0.0])
    assert gen.cut_height == pytest.approx(1.0, abs=1e-7)
    assert np.allclose(gen.cut_point.base, [0, 0], atol=1e-7)
    assert gen.cut_multiplicity.count == 2


def test_trace_generator_corner_error():
    sq = Region([ConvexPolygon([(-1, -1), (1, -1), (1, 1), (-1, 1)])])
    with pytest.raises(CornerError):
        trace_generator(sq, [1.0, 1.0])


def test_generator_multiplicity_cases():
    r = slab()
    assert generator_multiplicity(r, HorizonPoint(np.array([0.0, 0.0]), 1.0)).count == 2
    assert generator_multiplicity(r, HorizonPoint(np.array([0.0, 0.5]), 0.5)).count == 1
    d = unit_disk()
    assert generator_multiplicity(d, HorizonPoint(np.zeros(2), 1.0)).unbounded


def test_generator_multiplicity_off_horizon_raises():
    with pytest.raises(ParamError):
        generator_multiplicity(slab(), HorizonPoint(np.array([0.0, 0.0]), 0.5))


def test_generator_interior_uniqueness():
    """50 interior samples along each traced generator report N = 1."""
    cases = [
        (slab(), [0.0, 1.0]),
        (unit_disk(), [1.0, 0.0]),
        (two_disks_exterior(), [1.0, 0.0]),
        (ellipse(), [2.0, 0.0]),
    ]
    for region, foot in cases:
        gen = trace_generator(region, foot)
        for s in np.linspace(0.05, 0.95, 50) * gen.cut_height:
            hp = gen.point_at(s)
            m = generator_multiplicity(region, hp)
            assert m.count == 1


def test_generators_through_crease_point():
    r = two_disks_exterior()
    p = horizon_point(r, [0.0, 0.5])
    gens = generators_through(r, p)
    assert len(gens) == 2
    feet_x = sorted(g.footpoint[0] for g in gens)
    assert feet_x[0] < 0 < feet_x[1]
    for g in gens:
        assert g.cut_height == pytest.approx(p.height)


def test_horizon_achronality_sampled():
    """No two sampled horizon points are chronologically related."""
    rng = np.random.default_rng(4)
    for region in (slab(), unit_disk(), two_disks_exterior(), ellipse()):
        pts = []
        while len(pts) < 60:
            x = rng.uniform(-2.4, 2.4, size=2)
            if region.inside(x):
                pts.append(horizon_point(region, x).event())
        for i in range(0, 60, 3):
            for j in range(1, 60, 7):
                a, b = pts[i], pts[j]
                if a is b:
                    continue
                assert not chronologically_precedes(a, b)
                assert not chronologically_precedes(b, a)


def test_limit_of_generators_footpoint_convergence():
    """Footpoints of generators through crease points near a generator point
    converge to the footpoints at the limit point."""
    r = two_disks_exterior()
    gen = trace_generator(r, [1.0, 0.0])
    cut = gen.cut_point
    limit_feet = sorted(g.footpoint[0] for g in generators_through(r, cut, tol_near=1e-7))
    for y in (0.5, 0.25, 0.1, 0.01):
        q = horizon_point(r, [0.0, y])
        feet_pts = [g.footpoint for g in generators_through(r, q)]
        for fp in feet_pts:
            assert min(abs(fp[0] - limit_feet[0]), abs(fp[0] - limit_feet[1])) <= y
