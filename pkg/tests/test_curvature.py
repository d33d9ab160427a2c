"""Curvature of function graphs: formal, tangent-circle, comparison lemmas."""

import math

import numpy as np
import pytest

from horizonkit.curvature import (
    PlaneGraph,
    curvature_estimate,
    formal_curvature,
    graph_from_callable,
    graph_from_samples,
    high_curvature_point,
    meusnier_section_curvature,
    min_formal_curvature,
    separation_point,
    tangent_circle_curvature,
)
from horizonkit.errors import ParamError
from horizonkit.minkowski import SphereSlice


def parabola(c=1.0, dom=(-1, 1)):
    return graph_from_callable(dom, lambda t: c * t * t,
                               lambda t: 2 * c * t, lambda t: 2 * c)


def line(m=0.5, b=0.2, dom=(-1, 1)):
    return graph_from_callable(dom, lambda t: b + m * t,
                               lambda t: m, lambda t: 0.0)


def lower_circle_arc(R=1.0, dom=(-0.8, 0.8)):
    # circle of radius R centered at (0, R); lower arc through the origin
    return graph_from_callable(
        dom,
        lambda t: R - math.sqrt(R * R - t * t),
        lambda t: t / math.sqrt(R * R - t * t),
        lambda t: R * R / (R * R - t * t) ** 1.5,
    )


def upper_circle_arc(R=1.0, dom=(-0.8, 0.8)):
    return graph_from_callable(
        dom,
        lambda t: math.sqrt(R * R - t * t) - R,
        lambda t: -t / math.sqrt(R * R - t * t),
        lambda t: -R * R / (R * R - t * t) ** 1.5,
    )


def test_formal_curvature_parabola():
    assert formal_curvature(parabola(), 0.0) == pytest.approx(2.0)


def test_formal_curvature_line_zero():
    g = line()
    for t in (-0.5, 0.0, 0.7):
        assert formal_curvature(g, t) == 0.0


def test_formal_curvature_circle_sign_convention():
    # lower arc bends toward (-f', 1): +1/R at the apex; upper arc: -1/R
    assert formal_curvature(lower_circle_arc(), 0.0) == pytest.approx(1.0)
    assert formal_curvature(upper_circle_arc(), 0.0) == pytest.approx(-1.0)
    assert formal_curvature(lower_circle_arc(R=2.0), 0.0) == pytest.approx(0.5)


def test_tangent_circle_of_circle_is_exact():
    g = lower_circle_arc(R=2.0)
    for t0 in (-0.5, 0.0, 0.3):
        for t in (-0.7, -0.1, 0.6):
            if t == t0:
                continue
            assert tangent_circle_curvature(g, t0, t) == pytest.approx(0.5, abs=1e-12)


def test_tangent_circle_parabola_frozen_value():
    # f=t^2, t0=0, t=0.1: 2 t^2/(t^2 + t^4) = 2/(1 + 0.01)
    got = tangent_circle_curvature(parabola(), 0.0, 0.1)
    assert got == pytest.approx(2.0 / 1.01, abs=1e-15)


def test_tangent_circle_limit_linear_error():
    # f = t^3 + t^2: estimator = 2(1+t)/(1+(t+t^2)^2) -> 2 with O(t) error
    g = graph_from_callable((-0.5, 0.5), lambda t: t ** 3 + t ** 2,
                            lambda t: 3 * t * t + 2 * t,
                            lambda t: 6 * t + 2)
    for t in (1e-2, 1e-3, 1e-4):
        got = tangent_circle_curvature(g, 0.0, t)
        expected = 2 * (1 + t) / (1 + (t + t * t) ** 2)
        assert got == pytest.approx(expected, rel=1e-12)
        assert abs(got - 2.0) <= 5 * t


def test_tangent_circle_limit_slope_over_corpus():
    """log-log slope >= 1 (within 0.2) of |estimate - formal| in h."""
    corpus = [
        parabola(),
        graph_from_callable((-0.5, 0.5), lambda t: t ** 3 + t ** 2,
                            lambda t: 3 * t * t + 2 * t, lambda t: 6 * t + 2),
        graph_from_callable((-1, 1), math.sin, math.cos, lambda t: -math.sin(t)),
        graph_from_callable((-1, 1), lambda t: math.cosh(t) - 1, math.sinh,
                            math.cosh),
        lower_circle_arc(R=1.5),
    ]
    hs = np.array([1e-2, 1e-3, 1e-4, 1e-5])
    for g in corpus:
        t0 = 0.1
        kf = formal_curvature(g, t0)
        errs = np.array([abs(tangent_circle_curvature(g, t0, t0 + h) - kf)
                         for h in hs])
        if errs[0] <= 1e-6:
            continue  # estimator exact up to rounding for this graph (circles)
        slope = np.polyfit(np.log(hs), np.log(errs), 1)[0]
        assert slope >= 0.8


def test_separation_trivial_pairs():
    f0 = line(m=0.0, b=0.0)
    g = parabola()
    t_star = separation_point(f0, g, 0.0, radius=0.5)
    assert t_star is not None
    assert g.f(t_star) > f0.f(t_star)

    t_star = separation_point(parabola(c=1.0), parabola(c=2.0), 0.0, radius=0.5)
    assert t_star is not None


def test_separation_circle_pair_analytic():
    # arcs through the origin bending upward: radius 2 (kappa 1/2) vs 1 (kappa 1)
    f = lower_circle_arc(R=2.0, dom=(-0.6, 0.6))
    g = lower_circle_arc(R=1.0, dom=(-0.6, 0.6))
    t_star = separation_point(f, g, 0.0, radius=0.5)
    assert t_star is not None
    # analytic separation: (2 - sqrt(4-t^2)) < (1 - sqrt(1-t^2)) for small t
    t = t_star
    assert (2 - math.sqrt(4 - t * t)) < (1 - math.sqrt(1 - t * t))


def test_separation_requires_curvature_gap():
    with pytest.raises(ParamError):
        separation_point(parabola(c=2.0), parabola(c=1.0), 0.0, radius=0.5)


def test_separation_requires_tangency():
    with pytest.raises(ParamError):
        separation_point(line(m=0.0, b=0.5), parabola(), 0.0, radius=0.5)


def test_high_curvature_point_equal_graphs():
    f = parabola()
    t_star, kg = high_curvature_point(f, f)
    assert min_formal_curvature(f) <= kg + 1e-8


def test_high_curvature_point_quartic_frozen():
    # f = 0, g = -(t^2-1)^2 on [-1,1]: t* = 0, kappa_g(0) = g''(0) = 4
    f = line(m=0.0, b=0.0, dom=(-1, 1))
    g = graph_from_callable((-1, 1), lambda t: -((t * t - 1) ** 2),
                            lambda t: -4 * t ** 3 + 4 * t,
                            lambda t: -12 * t * t + 4)
    t_star, kg = high_curvature_point(f, g)
    assert t_star == pytest.approx(0.0, abs=1e-6)
    assert kg == pytest.approx(4.0, abs=1e-6)
    assert min_formal_curvature(f) <= kg + 1e-8


def test_high_curvature_point_semicircle_pair():
    # f: upper unit semicircle lifted to vanish at +-1; g = f - (t^2-1)^2
    def fe(t):
        return math.sqrt(max(1 - t * t, 0.0))

    f = graph_from_callable((-1, 1), fe,
                            lambda t: -t / max(math.sqrt(1 - t * t), 1e-300),
                            lambda t: -1.0 / max((1 - t * t) ** 1.5, 1e-300))
    g = graph_from_callable((-1, 1), lambda t: fe(t) - (t * t - 1) ** 2,
                            lambda t: -t / max(math.sqrt(1 - t * t), 1e-300)
                            - 4 * t ** 3 + 4 * t,
                            lambda t: -1.0 / max((1 - t * t) ** 1.5, 1e-300)
                            - 12 * t * t + 4)
    t_star, kg = high_curvature_point(f, g, n_grid=1024)
    assert min_formal_curvature(f, n_grid=4096) <= kg + 1e-8


def test_high_curvature_point_randomized_inequality():
    """min kappa_f <= kappa_g(t*) on 100 random tangent-at-endpoints pairs."""
    rng = np.random.default_rng(42)
    alpha, beta = -1.0, 1.0
    for _ in range(100):
        a1, a2, a3 = rng.uniform(-0.4, 0.4, size=3)
        q0, q1 = rng.uniform(0.05, 0.6), rng.uniform(-0.2, 0.2)

        def f(t, a1=a1, a2=a2, a3=a3):
            return a1 * t + a2 * t * t + a3 * math.sin(t)

        def fd1(t, a1=a1, a2=a2, a3=a3):
            return a1 + 2 * a2 * t + a3 * math.cos(t)

        def fd2(t, a2=a2, a3=a3):
            return 2 * a2 - a3 * math.sin(t)

        def w(t):
            return (t - alpha) ** 2 * (beta - t) ** 2

        def wd1(t):
            return 2 * (t - alpha) * (beta - t) ** 2 - 2 * (t - alpha) ** 2 * (beta - t)

        def wd2(t):
            return (2 * (beta - t) ** 2 - 8 * (t - alpha) * (beta - t)
                    + 2 * (t - alpha) ** 2)

        def q(t, q0=q0, q1=q1):
            return q0 + q1 * t * t

        def qd1(t, q1=q1):
            return 2 * q1 * t

        def qd2(t, q1=q1):
            return 2 * q1

        if q0 + q1 < 0.01 or q0 + q1 * alpha ** 2 < 0.01:
            continue
        fg = graph_from_callable((alpha, beta), f, fd1, fd2)
        gg = graph_from_callable(
            (alpha, beta),
            lambda t: f(t) - q(t) * w(t),
            lambda t: fd1(t) - qd1(t) * w(t) - q(t) * wd1(t),
            lambda t: fd2(t) - qd2(t) * w(t) - 2 * qd1(t) * wd1(t) - q(t) * wd2(t),
        )
        t_star, kg = high_curvature_point(fg, gg)
        assert min_formal_curvature(fg) <= kg + 1e-8


def test_separation_randomized_witnesses():
    """A witness is found on 100 random tangent pairs with gap >= 0.1."""
    rng = np.random.default_rng(7)
    found = 0
    for _ in range(100):
        m = rng.uniform(-0.5, 0.5)
        c2 = rng.uniform(-0.3, 0.3)
        gap = rng.uniform(0.1, 1.0)
        # g = f + 0.5*extra*(t-t0)^2 gives formal gap extra/(1+m^2)^1.5
        extra = gap * (1 + m * m) ** 1.5

        def f(t, m=m, c2=c2):
            return m * t + c2 * t * t

        def fd1(t, m=m, c2=c2):
            return m + 2 * c2 * t

        def fd2(t, c2=c2):
            return 2 * c2

        fg = graph_from_callable((-1, 1), f, fd1, fd2)
        gg = graph_from_callable((-1, 1),
                                 lambda t: f(t) + 0.5 * extra * t * t,
                                 lambda t: fd1(t) + extra * t,
                                 lambda t: fd2(t) + extra)
        t_star = separation_point(fg, gg, 0.0, radius=0.5)
        assert t_star is not None
        found += 1
    assert found == 100


def test_meusnier_great_and_inclined_circles():
    s3 = SphereSlice(np.zeros(3), 1.0, 0.0)
    y = np.array([1.0, 0.0, 0.0])
    n_hat = -y  # toward center
    tangent = np.array([0.0, 1.0, 0.0])
    other = np.array([0.0, 0.0, 1.0])
    # plane through the center: great circle, curvature 1
    assert meusnier_section_curvature(s3, y, n_hat, tangent) == pytest.approx(1.0)
    # plane at 60 degrees from the normal section: 1/(R cos 60) = 2
    theta = math.radians(60)
    u = math.cos(theta) * n_hat + math.sin(theta) * other
    assert meusnier_section_curvature(s3, y, u, tangent) == pytest.approx(2.0)
    # smaller sphere through center: 1/R
    s_half = SphereSlice(np.zeros(3), 0.5, 0.0)
    y2 = np.array([0.5, 0.0, 0.0])
    assert meusnier_section_curvature(s_half, y2, -y2 / 0.5, tangent) == pytest.approx(2.0)


def test_meusnier_inequality_randomized():
    """Section curvature >= 1/R exactly on 100 random sphere/plane samples."""
    rng = np.random.default_rng(11)
    for _ in range(100):
        R = rng.uniform(0.3, 3.0)
        center = rng.uniform(-2, 2, size=3)
        s = SphereSlice(center, R, 0.0)
        w = rng.normal(size=3)
        w /= np.linalg.norm(w)
        y = center + R * w
        n_hat = -w
        t1 = np.cross(w, rng.normal(size=3))
        t1 /= np.linalg.norm(t1)
        theta = rng.uniform(0.0, 1.3)
        m = np.cross(w, t1)
        u = math.cos(theta) * n_hat + math.sin(theta) * m
        kappa = meusnier_section_curvature(s, y, u, t1)
        assert kappa >= 1.0 / R - 1e-12
        assert kappa == pytest.approx(1.0 / (R * math.cos(theta)), rel=1e-9)


def test_meusnier_tangent_plane_error():
    s3 = SphereSlice(np.zeros(3), 1.0, 0.0)
    y = np.array([1.0, 0.0, 0.0])
    t1 = np.array([0.0, 1.0, 0.0])
    t2 = np.array([0.0, 0.0, 1.0])
    with pytest.raises(ParamError):
        meusnier_section_curvature(s3, y, t1, t2)


def test_sampled_graph_derivative_consistency():
    ts = np.linspace(-1, 1, 401)
    ys = np.sin(ts)
    g = graph_from_samples(ts, ys)
    err1, err2 = g.derivative_consistency()
    h = g.step
    assert err1 <= 10 * h
    assert err2 <= 10 * h
    # tangent-circle estimate near the formal value of sin at 0.2
    k_true = -math.sin(0.2) / (1 + math.cos(0.2) ** 2) ** 1.5
    assert curvature_estimate(g, 0.2) == pytest.approx(k_true, abs=5e-3)


def test_closed_form_derivative_consistency():
    g = parabola()
    err1, err2 = g.derivative_consistency()
    assert err1 <= 1e-5
    assert err2 <= 1e-5
