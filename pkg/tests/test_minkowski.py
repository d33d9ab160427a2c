"""Causal relation and cone-slice checks."""

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from horizonkit.errors import DimensionMismatchError, EmptySliceError
from horizonkit.minkowski import (
    SpacetimePoint,
    SphereSlice,
    causally_precedes,
    chronologically_precedes,
    past_cone_slice,
)


def P(x, t):
    return SpacetimePoint(np.asarray(x, dtype=float), t)


def test_causal_basic_cases():
    assert causally_precedes(P([0, 0], 0), P([0, 0], 1))
    assert not causally_precedes(P([2, 0], 0), P([0, 0], 1))
    # null separation is causal
    assert causally_precedes(P([1, 0], 0), P([0, 0], 1))
    # reflexive
    q = P([0.3, -0.2], 0.7)
    assert causally_precedes(q, q)


def test_chronological_basic_cases():
    assert chronologically_precedes(P([0, 0], 0), P([0, 0], 1))
    assert not chronologically_precedes(P([1, 0], 0), P([0, 0], 1))
    assert chronologically_precedes(P([0.3, 0], 0.2), P([0, 0], 1))
    # irreflexive
    q = P([0.1, 0.2], 0.5)
    assert not chronologically_precedes(q, q)


def test_dimension_mismatch_raises():
    with pytest.raises(DimensionMismatchError):
        causally_precedes(P([0, 0], 0), P([0, 0, 0], 1))
    with pytest.raises(DimensionMismatchError):
        chronologically_precedes(P([1], 0), P([0, 0], 1))


def test_past_cone_slice_values():
    s = past_cone_slice(P([0, 0], 1), 0.5)
    assert np.allclose(s.center, [0, 0])
    assert s.radius == pytest.approx(0.5)
    assert s.curvature == pytest.approx(2.0)

    s2 = past_cone_slice(P([3, 4], 2), 0.0)
    assert np.allclose(s2.center, [3, 4])
    assert s2.radius == pytest.approx(2.0)


def test_past_cone_slice_interior_is_timelike_past():
    p = P([0.5, -1.0], 1.2)
    s = past_cone_slice(p, 0.3)
    rng = np.random.default_rng(3)
    for _ in range(200):
        y = rng.uniform(-3, 3, size=2)
        inside = np.linalg.norm(y - s.center) < s.radius
        assert inside == chronologically_precedes(P(y, 0.3), p)


def test_past_cone_slice_empty_error():
    with pytest.raises(EmptySliceError):
        past_cone_slice(P([0, 0], 1), 1.0)
    with pytest.raises(EmptySliceError):
        past_cone_slice(P([0, 0], 1), 2.0)


def test_slice_curvature_monotone_in_apex_time():
    # lowering the apex toward the plane strictly increases 1/radius
    plane = 0.0
    times = [2.0, 1.5, 1.0, 0.5, 0.1]
    curvatures = [past_cone_slice(P([0, 0], t), plane).curvature for t in times]
    assert all(b > a for a, b in zip(curvatures, curvatures[1:]))


def test_sphere_slice_invariants():
    with pytest.raises(ValueError):
        SphereSlice(np.array([0.0, 0.0]), -1.0, 0.0)


coords = st.floats(min_value=-50, max_value=50, allow_nan=False,
                   allow_infinity=False)


@settings(max_examples=200, deadline=None)
@given(ax=coords, ay=coords, at=coords, bx=coords, by=coords, bt=coords,
       cx=coords, cy=coords, ct=coords)
def test_causal_transitivity(ax, ay, at, bx, by, bt, cx, cy, ct):
    a, b, c = P([ax, ay], at), P([bx, by], bt), P([cx, cy], ct)
    if causally_precedes(a, b) and causally_precedes(b, c):
        assert causally_precedes(a, c)


@settings(max_examples=200, deadline=None)
@given(ax=coords, ay=coords, at=coords, bx=coords, by=coords, bt=coords)
def test_chronological_implies_causal(ax, ay, at, bx, by, bt):
    a, b = P([ax, ay], at), P([bx, by], bt)
    if chronologically_precedes(a, b):
        assert causally_precedes(a, b)
