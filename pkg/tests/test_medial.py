import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from convexcuts.arcbody import Arc, Segment
from convexcuts.errors import RhoOutOfRange
from convexcuts.geometry import ConvexPolygon, inradius, rectangle, regular_polygon, validate_polygon, width
from convexcuts.medial import (
    inner_polygon,
    medial_axis,
    relative_width_function,
    relative_width_rounded,
    rounded_body,
    solve_side_equation,
)

from conftest import random_polygon

S3 = math.sqrt(3.0)


def slack(poly, pts):
    """Distance from each point to each side line (k points x sides)."""
    return poly.offsets[None, :] - np.asarray(pts) @ poly.normals.T


def check_axis(poly):
    ax = medial_axis(poly)
    assert len(ax.edges) == len(ax.points) - 1
    d = slack(poly, ax.points)
    # Clearance is the distance to the nearest side.
    assert np.allclose(d.min(axis=1), ax.clearance, atol=1e-9 * poly.scale)
    for (i, j), (s1, s2) in ax.edges:
        mid = 0.5 * (ax.points[i] + ax.points[j])
        dm = slack(poly, [mid])[0]
        assert dm[s1] == pytest.approx(dm[s2], abs=1e-9 * poly.scale)
        assert dm[s1] == pytest.approx(dm.min(), abs=1e-9 * poly.scale)
    assert ax.max_clearance == pytest.approx(inradius(poly)[0], abs=1e-9 * poly.scale)
    return ax


class TestMedialAxis:
    def test_rectangle_h_shape(self):
        a, b = 1.0, 3.0
        ax = check_axis(rectangle(a, b))
        assert len(ax.points) == 6
        assert len(ax.edges) == 5
        inner = ax.points[ax.clearance > 1e-12]
        assert np.allclose(sorted(map(tuple, inner)), [(a / 2, a / 2), (a / 2, b - a / 2)], atol=1e-9)
        assert np.allclose(ax.clearance[ax.clearance > 1e-12], a / 2, atol=1e-9)
        lengths = sorted(math.dist(ax.points[i], ax.points[j]) for (i, j), _ in ax.edges)
        assert lengths[-1] == pytest.approx(b - a, abs=1e-9)
        assert lengths[:4] == pytest.approx([a / math.sqrt(2)] * 4, abs=1e-9)

    def test_triangle_meets_at_incenter(self, triangle):
        ax = check_axis(triangle)
        assert len(ax.points) == 4
        center = ax.points[np.argmax(ax.clearance)]
        assert np.allclose(center, (0.5, S3 / 6), atol=1e-12)

    def test_square_diagonals(self, square):
        ax = check_axis(square)
        assert len(ax.points) == 5
        hub = int(np.argmax(ax.clearance))
        assert all(hub in pair for pair, _ in ax.edges)

    @settings(max_examples=40, deadline=None)
    @given(seed=st.integers(0, 10_000), k=st.integers(3, 64))
    def test_random(self, seed, k):
        check_axis(validate_polygon(random_polygon(np.random.default_rng(seed), k)))


class TestRoundedBody:
    def test_square_quarter(self, square):
        body = rounded_body(square, 0.25)
        feats = body.features
        segs = [f for f in feats if isinstance(f, Segment)]
        arcs = [f for f in feats if isinstance(f, Arc)]
        assert len(segs) == 4 and len(arcs) == 4
        assert [s.length for s in segs] == pytest.approx([0.5] * 4)
        assert [a.radius for a in arcs] == pytest.approx([0.25] * 4)
        assert [a.sweep for a in arcs] == pytest.approx([math.pi / 2] * 4)
        assert body.width()[0] == pytest.approx(1.0)
        assert body.area == pytest.approx(0.25 + 4 * 0.5 * 0.25 + math.pi * 0.0625)

    def test_square_full_is_disk(self, square):
        feats = rounded_body(square, 0.5).features
        assert len(feats) == 1
        assert isinstance(feats[0], Arc)
        assert feats[0].radius == pytest.approx(0.5)
        assert np.allclose(feats[0].center, (0.5, 0.5))

    def test_rho_zero_is_polygon(self, triangle):
        feats = rounded_body(triangle, 0.0).features
        assert len(feats) == 3
        assert all(isinstance(f, Segment) for f in feats)
        assert np.allclose([f.p for f in feats], triangle.vertices)

    def test_stadium(self, rect13):
        feats = rounded_body(rect13, 0.5).features
        assert sorted(type(f).__name__ for f in feats) == ["Arc", "Arc", "Segment", "Segment"]
        assert rounded_body(rect13, 0.5).width()[0] == pytest.approx(1.0)

    def test_rho_out_of_range(self, square):
        with pytest.raises(RhoOutOfRange):
            rounded_body(square, 0.6)
        with pytest.raises(RhoOutOfRange):
            rounded_body(square, -0.1)

    def test_relative_width_rounded(self, square, triangle):
        for e in range(4):
            assert relative_width_rounded(square, e, 0.25) == pytest.approx(1.0)
        s = 1.0
        h, r = s * S3 / 2, s / (2 * S3)
        for rho in (0.0, 0.05, 0.1, 0.2, r):
            for e in range(3):
                assert relative_width_rounded(triangle, e, rho) == pytest.approx(h * (r - rho) / r + 2 * rho)
        p = regular_polygon(7)
        for e in range(7):
            assert relative_width_rounded(p, e, 0.0) == pytest.approx(p.breadth(p.normals[e]))


def is_degenerate(pts):
    uniq = np.unique(np.round(pts, 12), axis=0)
    if len(uniq) < 3:
        return True
    x, y = pts[:, 0], pts[:, 1]
    return abs(0.5 * np.sum(x * np.roll(y, -1) - np.roll(x, -1) * y)) < 1e-9


@settings(max_examples=30, deadline=None)
@given(seed=st.integers(0, 10_000), k=st.integers(3, 20), frac=st.floats(0.0, 0.98))
def test_width_of_rounded_body(seed, k, frac):
    poly = validate_polygon(random_polygon(np.random.default_rng(seed), k))
    rho = frac * inradius(poly)[0]
    pts, _ = inner_polygon(poly, rho)
    if is_degenerate(pts):
        return
    q = validate_polygon(pts)
    assert rounded_body(poly, rho).width()[0] == pytest.approx(width(q)[0] + 2 * rho, abs=1e-9)


@settings(max_examples=30, deadline=None)
@given(seed=st.integers(0, 10_000), k=st.integers(3, 20), f1=st.floats(0.0, 1.0), f2=st.floats(0.0, 1.0))
def test_inclusion_monotone(seed, k, f1, f2):
    poly = validate_polygon(random_polygon(np.random.default_rng(seed), k))
    top = inradius(poly)[0]
    r1, r2 = sorted((f1 * top, f2 * top))
    outer, inner = rounded_body(poly, r1), rounded_body(poly, r2)
    for p in inner.boundary_points(per_arc=16):
        assert outer.contains(p)


@settings(max_examples=30, deadline=None)
@given(seed=st.integers(0, 10_000), k=st.integers(3, 20), frac=st.floats(0.01, 1.0))
def test_arc_centers_on_axis(seed, k, frac):
    poly = validate_polygon(random_polygon(np.random.default_rng(seed), k))
    rho = frac * inradius(poly)[0]
    pts, labels = inner_polygon(poly, rho)
    d = slack(poly, pts)
    assert np.all(d >= rho - 1e-9 * poly.scale)
    for i in range(len(pts)):
        assert d[i, labels[i]] == pytest.approx(rho, abs=1e-9 * poly.scale)
        assert d[i, labels[i - 1]] == pytest.approx(rho, abs=1e-9 * poly.scale)


class TestRelativeWidthFunction:
    def test_triangle_single_piece(self, triangle):
        r = 1 / (2 * S3)
        for e in range(3):
            fn = relative_width_function(triangle, e)
            assert len(fn.slopes) == 1
            assert fn.breakpoints == pytest.approx([0.0, r])
            assert fn.slopes[0] == pytest.approx(-1.0)

    def test_square_constant(self, square):
        for e in range(4):
            fn = relative_width_function(square, e)
            assert np.allclose(fn.slopes, 0.0, atol=1e-9)
            assert fn(np.linspace(0, 0.5, 11)) == pytest.approx(np.ones(11))

    def test_rectangle_short_edge(self, rect13):
        # Edge 0 runs along the x axis; its normal points down the long side.
        fn = relative_width_function(rect13, 0)
        for rho in np.linspace(0, 0.5, 23):
            assert fn(rho) == pytest.approx(relative_width_rounded(rect13, 0, rho), abs=1e-12)
        assert fn(0.0) == pytest.approx(3.0)
        assert fn(0.5) == pytest.approx(3.0)

    @settings(max_examples=20, deadline=None)
    @given(seed=st.integers(0, 10_000), k=st.integers(3, 64))
    def test_matches_pointwise(self, seed, k):
        poly = validate_polygon(random_polygon(np.random.default_rng(seed), k))
        top = inradius(poly)[0]
        rng = np.random.default_rng(seed + 1)
        for e in range(0, len(poly), max(1, len(poly) // 4)):
            fn = relative_width_function(poly, e)
            assert np.all(np.diff(fn(np.linspace(0, top, 50))) <= 1e-9 * poly.scale)
            rho = rng.uniform(0, top, 100)
            exact = np.array([relative_width_rounded(poly, e, r) for r in rho])
            assert np.allclose(fn(rho), exact, rtol=1e-9, atol=1e-12)


class TestSideEquation:
    def test_triangle(self, triangle):
        r = 1 / (2 * S3)
        for n in (2, 3, 4, 5):
            for e in range(3):
                assert solve_side_equation(triangle, e, n) == pytest.approx(3 * r / (2 * n + 1), abs=1e-12)

    def test_square(self, square):
        assert solve_side_equation(square, 0, 2) == pytest.approx(0.25)
        assert solve_side_equation(square, 1, 4) == pytest.approx(0.125)

    def test_long_side_has_no_root(self):
        # Across the short side the relative width stays 10 > 2 n I = 4.
        assert solve_side_equation(rectangle(1.0, 10.0), 0, 2) is None

    @settings(max_examples=20, deadline=None)
    @given(seed=st.integers(0, 10_000), k=st.integers(3, 16), n=st.integers(2, 6))
    def test_root_residual_and_monotone(self, seed, k, n):
        poly = validate_polygon(random_polygon(np.random.default_rng(seed), k))
        for e in range(len(poly)):
            rho = solve_side_equation(poly, e, n)
            if rho is None:
                continue
            assert relative_width_rounded(poly, e, rho) == pytest.approx(2 * n * rho, rel=1e-9)
            nxt = solve_side_equation(poly, e, n + 1)
            assert nxt is not None and nxt < rho


def test_invalid_polygon_type_guard(square):
    assert isinstance(square, ConvexPolygon)
