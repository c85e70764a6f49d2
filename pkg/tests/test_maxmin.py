import math

import numpy as np
import pytest

from convexcuts.division import DivisionTree
from convexcuts.errors import InfeasibleN
from convexcuts.geometry import LineCut, diameter, inradius, rectangle, regular_polygon, validate_polygon
from convexcuts.maxmin import (
    enumerate_diameter_segment_sets,
    maxmin_diameter_division,
    maxmin_diameter_feasible,
    maxmin_diameter_solve,
    maxmin_diameter_value,
    maxmin_inradius_2_solve,
    maxmin_inradius_bound,
    maxmin_width_2_solve,
    maxmin_width_bounds,
)
from convexcuts.medial import rounded_body
from convexcuts.oracle import brute_2division

S3 = math.sqrt(3.0)


class TestDiameter:
    def test_triangle(self, triangle):
        sets = enumerate_diameter_segment_sets(triangle)
        assert sets[0].kind == "triangle"
        assert (sets[0].a, sets[0].b, sets[0].delta) == (0, 3, 1)
        ok, max_n, _ = maxmin_diameter_feasible(triangle, 3)
        assert not ok and max_n == 2
        tree = maxmin_diameter_division(triangle, 2)
        assert tree.values("diameter") == pytest.approx([1.0, 1.0])
        with pytest.raises(InfeasibleN) as info:
            maxmin_diameter_division(triangle, 3)
        assert info.value.max_n == 2

    def test_rectangle_two_fans(self, rect13):
        sets = enumerate_diameter_segment_sets(rect13)
        # Both ends of a diagonal give the same family, so one set per diagonal.
        assert len(sets) == 2
        assert all(s.kind == "fan" and s.capacity == 2 for s in sets)
        tree = maxmin_diameter_division(rect13, 2)
        assert tree.values("diameter") == pytest.approx([math.sqrt(10)] * 2)

    def test_square(self, square):
        ok, max_n, _ = maxmin_diameter_feasible(square, 2)
        assert ok and max_n == 2
        assert not maxmin_diameter_feasible(square, 3)[0]
        assert not maxmin_diameter_feasible(square, 4)[0]

    def test_fine_disk_has_no_three_division(self):
        with pytest.raises(InfeasibleN):
            maxmin_diameter_division(regular_polygon(256), 3)

    def test_regular_pentagon_fans(self):
        p = regular_polygon(5)
        ok, max_n, best = maxmin_diameter_feasible(p, 4)
        assert best.kind == "fan"
        assert max_n == 4 and ok
        tree = maxmin_diameter_division(p, 4)
        assert tree.values("diameter") == pytest.approx([diameter(p)[0]] * 4, rel=1e-7)

    def test_feasibility_monotone(self, hexagon):
        flags = [maxmin_diameter_feasible(hexagon, n)[0] for n in range(2, 8)]
        assert flags == sorted(flags, reverse=True)

    def test_value_and_report(self, triangle):
        assert maxmin_diameter_value(triangle) == pytest.approx(1.0)
        rep = maxmin_diameter_solve(triangle, 3)
        assert rep.division is None
        assert rep.diagnostics["feasibility"]["maxN"] == 2


class TestWidth:
    def test_bounds(self, square, triangle):
        b = maxmin_width_bounds(square, 2)
        assert (b.lower, b.upper) == pytest.approx((0.5, math.sqrt(2) / 2))
        b = maxmin_width_bounds(triangle, 3)
        assert b.upper == pytest.approx(0.5)

    def test_square(self, square):
        rep = maxmin_width_2_solve(square)
        assert rep.value == pytest.approx(math.sqrt(2) / 2, abs=1e-6)
        assert rep.balanced

    def test_fine_disk(self):
        rep = maxmin_width_2_solve(regular_polygon(256))
        assert rep.value == pytest.approx(1.0, abs=1e-3)

    def test_isosceles_bisector(self):
        # Equals the balanced cut along the bisector of a base angle.
        body = validate_polygon([(-2, 0), (2, 0), (0, math.sqrt(21.0))])
        rep = maxmin_width_2_solve(body)
        b = maxmin_width_bounds(body, 2)
        assert b.lower <= rep.value <= b.upper
        assert rep.value == pytest.approx(2.0367003, abs=1e-6)

    def test_agrees_with_oracle(self, hexagon):
        rep = maxmin_width_2_solve(hexagon)
        brute = brute_2division(hexagon, "width", "maxMin")
        assert rep.value == pytest.approx(brute.value, abs=1e-6)


class TestInradius:
    def test_bound(self, square):
        assert maxmin_inradius_bound(square, 3) == pytest.approx(1 / 6)

    def test_square_matches_oracle(self, square):
        rep = maxmin_inradius_2_solve(square)
        brute = brute_2division(square, "inradius", "maxMin")
        assert rep.value == pytest.approx(brute.value, abs=1e-4)
        assert 0.25 <= rep.value <= 0.5

    def test_fine_disk(self):
        rep = maxmin_inradius_2_solve(regular_polygon(256))
        assert rep.value == pytest.approx(0.5, abs=1e-3)
        assert abs(rep.diagnostics["residual"]) <= rep.tolerance * rep.diagnostics["inradius"]


class TestRoundedPieces:
    """Pieces of rounded bodies cut along an axis do not always keep width 2 rho."""

    def test_halves_keep_width(self, rect13):
        stadium = rounded_body(rect13, 0.5)
        a, b = stadium.clip(LineCut.through((0.5, 1.5), (1.0, 0.0)))
        assert a.width()[0] == pytest.approx(1.0)
        assert b.width()[0] == pytest.approx(1.0)

    def test_trapezoid_middle_piece_is_wider(self):
        # Three unit equilateral triangles; rounding at the small inradius and
        # cutting along both interior sides leaves a middle piece wider than 2 rho.
        trap = validate_polygon([(0, 0), (2, 0), (1.5, S3 / 2), (0.5, S3 / 2)])
        rho = 1 / (2 * S3)
        tree = DivisionTree.leaf(rounded_body(trap, rho))
        tree = tree.split("", LineCut.through((1, 0), (0.5, S3 / 2)))
        tree = tree.split("L", LineCut.through((1, 0), (-0.5, S3 / 2)))
        widths = sorted(tree.node(p).region.width()[0] for p in tree.leaf_paths())
        assert widths[:2] == pytest.approx([2 * rho, 2 * rho])
        assert widths[2] > 2 * rho + 0.1
