"""Differentiability labels, generator profiles, structure checks, jump search."""

import numpy as np
import pytest

from horizonkit.classify import (
    LABEL_C1_NOT_C2,
    LABEL_C2_PLUS,
    LABEL_DIFF_ONLY,
    LABEL_NOT_DIFF,
    BumpFamilyParams,
    classify_generator,
    classify_point,
    default_probe_radii,
    locate_jump,
    profile_to_csv,
    search_jump_scene,
    verify_structure,
)
from horizonkit.horizon import HorizonPoint, generator_multiplicity, trace_generator
from horizonkit.region import AntiDisk, Disk, EllipseRegion, HalfPlane, Region


def slab():
    return Region([HalfPlane((0, 1), 1.0), HalfPlane((0, -1), 1.0)], name="slab")


def unit_disk():
    return Region([Disk((0, 0), 1.0)], name="disk")


def two_disks_exterior():
    return Region([AntiDisk((2, 0), 1.0), AntiDisk((-2, 0), 1.0)],
                  name="two_disks")


def ellipse():
    return Region([EllipseRegion((0, 0), 2.0, 1.0)], name="ellipse")


def hp(region, x):
    x = np.asarray(x, dtype=float)
    return HorizonPoint(x, region.distance_to_complement(x))


# -- pointwise labels ----------------------------------------------------------

def test_classify_slab_cut_not_differentiable():
    assert classify_point(slab(), hp(slab(), [0, 0])).label == LABEL_NOT_DIFF


def test_classify_slab_interior_smooth():
    assert classify_point(slab(), hp(slab(), [0, 0.5])).label == LABEL_C2_PLUS


def test_classify_ellipse_medial_endpoint_differentiable_only():
    r = ellipse()
    res = classify_point(r, hp(r, [1.5, 0]))
    assert res.label == LABEL_DIFF_ONLY
    # oscillation stays above the angle tolerance through the probe window
    assert min(res.diagnostics.omega) >= 1e-2
    assert res.diagnostics.crease_dist <= res.diagnostics.probe_radii[-1]


def test_classify_label_multiplicity_consistency():
    """NotDifferentiable exactly at multiplicity >= 2."""
    cases = [
        (slab(), [0.0, 0.0]), (slab(), [0.3, 0.5]), (slab(), [2.0, 0.0]),
        (two_disks_exterior(), [0.0, 1.0]), (two_disks_exterior(), [0.5, 0.0]),
        (ellipse(), [1.0, 0.0]), (ellipse(), [1.8, 0.0]),
    ]
    for region, x in cases:
        p = hp(region, x)
        res = classify_point(region, p)
        mult = generator_multiplicity(region, p)
        assert (res.label == LABEL_NOT_DIFF) == (mult.unbounded or mult.count >= 2)


# -- generator profiles ---------------------------------------------------------

@pytest.fixture(scope="module")
def corpus_profiles():
    out = {}
    for name, region, foot in [
        ("slab", slab(), [0.0, 1.0]),
        ("disk", unit_disk(), [1.0, 0.0]),
        ("two_disks", two_disks_exterior(), [1.0, 0.0]),
        ("ellipse", ellipse(), [2.0, 0.0]),
    ]:
        gen = trace_generator(region, foot)
        out[name] = (region, gen, classify_generator(region, gen, n_samples=16))
    return out


def test_profiles_cut_labels(corpus_profiles):
    assert corpus_profiles["slab"][2].samples[0].label == LABEL_NOT_DIFF
    assert corpus_profiles["disk"][2].samples[0].label == LABEL_NOT_DIFF
    assert corpus_profiles["two_disks"][2].samples[0].label == LABEL_NOT_DIFF
    assert corpus_profiles["ellipse"][2].samples[0].label == LABEL_DIFF_ONLY


def test_profiles_cut_multiplicities(corpus_profiles):
    assert corpus_profiles["slab"][1].cut_multiplicity.count == 2
    assert corpus_profiles["disk"][1].cut_multiplicity.unbounded
    assert corpus_profiles["two_disks"][1].cut_multiplicity.count == 2
    assert corpus_profiles["ellipse"][1].cut_multiplicity.count == 1


def test_profiles_interior_smooth_and_no_jump(corpus_profiles):
    for name, (region, gen, prof) in corpus_profiles.items():
        assert prof.jump is None, name
        for s in prof.samples[1:]:
            assert s.label == LABEL_C2_PLUS, (name, s.u, s.label)


def test_profiles_monotone_structure(corpus_profiles):
    for name, (region, gen, prof) in corpus_profiles.items():
        rep = verify_structure(prof)
        assert rep.passed, (name, rep.violations)


def test_profiles_stability_under_halved_radii(corpus_profiles):
    """Halving all probe radii keeps every label on the corpus scenes."""
    for name, (region, gen, prof) in corpus_profiles.items():
        halved = tuple(r / 2 for r in prof.probe_radii)
        for s in prof.samples[1::4]:
            res = classify_point(region, s.point, probe_radii=halved)
            assert res.label == s.label, (name, s.u)


def test_half_plane_profile_all_smooth():
    region = Region([HalfPlane((0, -1), 0.0)], name="half_plane")
    gen = trace_generator(region, [0.0, 0.0])
    prof = classify_generator(region, gen, n_samples=12)
    assert prof.jump is None
    for s in prof.samples:
        assert s.label == LABEL_C2_PLUS


def test_profile_csv_export(corpus_profiles):
    region, gen, prof = corpus_profiles["slab"]
    csv1 = profile_to_csv(prof)
    header = csv1.splitlines()[0].split(",")
    assert header[:6] == ["u", "base_x", "base_y", "height", "multiplicity",
                          "label"]
    assert header[-1] == "crease_dist"
    assert len(csv1.splitlines()) == len(prof.samples) + 1
    prof2 = classify_generator(region, gen, n_samples=16)
    assert profile_to_csv(prof2) == csv1


def test_corrupted_profile_reports_violation(corpus_profiles):
    """Negative control: a smooth label forced past a fake jump must fail."""
    import copy
    region, gen, prof = corpus_profiles["slab"]
    bad = copy.deepcopy(prof)
    for s in bad.samples[1:3]:
        s.result.label = LABEL_DIFF_ONLY
    bad.jump = 0.5 * (bad.samples[2].u + bad.samples[3].u)
    # samples past the fake jump are C2Plus: the first-order clause must fire
    rep = verify_structure(bad)
    assert not rep.passed
    assert any("jump" in v for v in rep.violations)


def test_corrupted_monotonicity_detected(corpus_profiles):
    import copy
    region, gen, prof = corpus_profiles["slab"]
    bad = copy.deepcopy(prof)
    bad.samples[-1].result.label = LABEL_DIFF_ONLY
    rep = verify_structure(bad)
    assert not rep.passed


# -- jump-scene search -----------------------------------------------------------

@pytest.fixture(scope="module")
def jump_search():
    res = search_jump_scene()
    assert res is not None, "dip-family search found no interior jump"
    return res


def test_search_finds_interior_jump(jump_search):
    prof = jump_search.profile
    assert prof.jump is not None
    assert jump_search.structure.passed
    # pattern: DifferentiableOnly up to the jump, first-order-only past it
    for s in prof.samples[1:]:
        if s.u < prof.jump:
            assert s.label in (LABEL_DIFF_ONLY, LABEL_NOT_DIFF)
        elif s.u > prof.jump:
            assert s.label == LABEL_C1_NOT_C2, (s.u, s.label)


def test_search_rejects_plain_family_first(jump_search):
    """The undisturbed and non-decaying candidates are tried and rejected."""
    outcomes = {repr(p): o for p, o in jump_search.candidates_tried}
    assert jump_search.params.kappa_left != 0.0
    rejected = [o for p, o in jump_search.candidates_tried
                if p.kappa_left == 0.0]
    assert rejected and all(o != "accepted" for o in rejected)


def test_search_jump_location_matches_crease_onset(jump_search):
    """The refined jump sits where the crease branch leaves the smallest
    probe ball, measured by direct crease distances along the generator."""
    prof = jump_search.profile
    region = jump_search.region
    gen = jump_search.generator
    u0 = locate_jump(prof)
    r_min = prof.probe_radii[-1]
    # direct measurement: crease distance at u just below / above u0
    below = classify_point(region, gen.point_from_cut(0.8 * u0),
                           probe_radii=prof.probe_radii)
    above = classify_point(region, gen.point_from_cut(1.25 * u0),
                           probe_radii=prof.probe_radii)
    assert below.diagnostics.crease_dist <= 1.2 * r_min
    assert above.diagnostics.crease_dist >= 0.8 * r_min


def test_no_dip_candidate_is_open_generator():
    params = BumpFamilyParams(eps1=0.0, decay=1.0)
    region = params.region()
    gen = trace_generator(region, np.array([0.0, 1.0]))
    assert gen.domain_kind == "open"
