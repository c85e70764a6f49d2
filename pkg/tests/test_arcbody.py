import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from convexcuts.arcbody import Arc, ArcSegmentBody, Segment
from convexcuts.errors import CutMissesInterior, DegenerateArea
from convexcuts.geometry import Direction, LineCut, diameter, rectangle, validate_polygon, width
from convexcuts.medial import rounded_body

from conftest import random_polygon


def test_disk_basics():
    d = ArcSegmentBody.disk((1.0, 2.0), 0.5)
    assert d.area == pytest.approx(math.pi / 4)
    assert d.width()[0] == pytest.approx(1.0)
    assert d.diameter() == pytest.approx(1.0)
    assert d.contains((1.2, 2.2))
    assert not d.contains((1.5, 2.5))
    with pytest.raises(DegenerateArea):
        ArcSegmentBody.disk(radius=0.0)


def test_from_polygon_matches_polygon(hexagon):
    body = ArcSegmentBody.from_polygon(hexagon)
    assert body.area == pytest.approx(hexagon.area)
    assert body.width()[0] == pytest.approx(width(hexagon)[0])
    assert body.diameter() == pytest.approx(diameter(hexagon)[0])
    assert all(isinstance(f, Segment) for f in body.features)


def test_stadium_measures(rect13):
    st_ = rounded_body(rect13, 0.5)
    assert st_.area == pytest.approx(2.0 + math.pi * 0.25)
    assert st_.diameter() == pytest.approx(3.0)
    assert st_.width()[0] == pytest.approx(1.0)


def test_clip_disk_cap():
    d = ArcSegmentBody.disk(radius=1.0)
    cap, rest = d.clip(LineCut(Direction(0.0), -0.5))
    h = 0.5
    # Circular segment of height h in the unit disk.
    seg_area = math.acos(1 - h) - (1 - h) * math.sqrt(2 * h - h * h)
    assert cap.area == pytest.approx(seg_area)
    assert rest.area == pytest.approx(math.pi - seg_area)
    assert cap.width()[0] == pytest.approx(h)
    feats = cap.features
    assert sum(isinstance(f, Arc) for f in feats) == 1
    assert sum(isinstance(f, Segment) for f in feats) == 1


def test_clip_miss():
    d = ArcSegmentBody.disk(radius=1.0)
    with pytest.raises(CutMissesInterior):
        d.clip(LineCut(Direction(0.3), 1.0))


def test_to_polygon_inside(square):
    body = rounded_body(square, 0.2)
    poly = body.to_polygon()
    assert poly.area <= body.area
    assert poly.area == pytest.approx(body.area, rel=1e-3)


@settings(max_examples=50, deadline=None)
@given(seed=st.integers(0, 10_000), k=st.integers(3, 12), rfrac=st.floats(0.0, 1.0),
       angle=st.floats(0, 2 * math.pi), frac=st.floats(0.05, 0.95))
def test_clip_rounded_partitions(seed, k, rfrac, angle, frac):
    poly = validate_polygon(random_polygon(np.random.default_rng(seed), k))
    from convexcuts.geometry import inradius

    body = rounded_body(poly, rfrac * inradius(poly)[0])
    u = Direction(angle)
    lo, hi = -body.support(u.opposite().vector), body.support(u.vector)
    t = lo + frac * (hi - lo)
    a, b = body.clip(LineCut(u, t))
    assert a.area + b.area == pytest.approx(body.area, rel=1e-9)
    assert a.support(u.vector) == pytest.approx(t, abs=1e-9 * body.scale)
    assert -b.support(u.opposite().vector) == pytest.approx(t, abs=1e-9 * body.scale)
    # Both pieces lie inside the body.
    for piece in (a, b):
        for p in piece.boundary_points(per_arc=8):
            assert body.contains(p)
