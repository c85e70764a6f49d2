import math

import numpy as np
import pytest

from convexcuts.geometry import rectangle, regular_polygon, validate_polygon
from convexcuts.minmax import conway_solve
from convexcuts.oracle import SearchGrid, brute_2division, brute_3division, random_division

from conftest import random_polygon

S3 = math.sqrt(3.0)


class TestTwoDivision:
    def test_square_width_minmax(self, square):
        res = brute_2division(square, "width", "minMax")
        assert res.value == pytest.approx(0.5, abs=1e-9)

    def test_square_width_maxmin(self, square):
        res = brute_2division(square, "width", "maxMin")
        assert res.value == pytest.approx(math.sqrt(2) / 2, abs=1e-7)

    def test_triangle_conway(self, triangle):
        r = 1 / (2 * S3)
        res = brute_2division(triangle, "inradius", "minMax")
        assert res.value == pytest.approx(3 * r / 5, abs=1e-9)

    def test_diameter_maxmin_is_diameter(self, triangle):
        res = brute_2division(triangle, "diameter", "maxMin")
        assert res.value == pytest.approx(1.0, abs=1e-9)

    def test_reported_cut_reproduces_value(self, hexagon):
        res = brute_2division(hexagon, "inradius", "minMax")
        vals = res.division(hexagon).values("inradius")
        assert max(vals) == pytest.approx(res.value, abs=1e-12)

    def test_bad_objective(self, square):
        with pytest.raises(ValueError):
            brute_2division(square, "width", "maximum")

    def test_denser_grid_not_worse(self):
        poly = validate_polygon(random_polygon(np.random.default_rng(3), 7))
        coarse = brute_2division(poly, "inradius", "minMax", SearchGrid(60, 30, 2))
        fine = brute_2division(poly, "inradius", "minMax", SearchGrid(360, 200, 3))
        assert fine.value <= coarse.value + 1e-12
        assert fine.value >= conway_solve(poly, 2).value - 1e-9


class TestThreeDivision:
    def test_triangle_conway(self, triangle):
        r = 1 / (2 * S3)
        res = brute_3division(triangle, "inradius", "minMax")
        assert res.value >= 3 * r / 7 - 1e-9
        assert res.value == pytest.approx(3 * r / 7, abs=1e-4)
        assert max(res.division(triangle).values("inradius")) == pytest.approx(res.value, abs=1e-12)

    def test_triangle_diameter_gap(self, triangle):
        res = brute_3division(triangle, "diameter", "maxMin")
        assert res.value < 1.0 - 1e-3

    def test_rectangle_width_maxmin(self):
        res = brute_3division(rectangle(1.0, 10.0), "width", "maxMin")
        assert res.value == pytest.approx(1.0, abs=1e-6)


def test_oracle_polygons_only():
    from convexcuts.medial import rounded_body

    with pytest.raises(TypeError):
        brute_2division(rounded_body(rectangle(1.0, 1.0), 0.2), "width", "minMax")


class TestRandomDivision:
    def test_unit_square(self, square):
        tree = random_division(square, 5, seed=1)
        assert len(tree) == 5
        assert sum(tree.areas()) == pytest.approx(1.0)

    def test_reproducible(self):
        p = regular_polygon(9)
        a = random_division(p, 4, seed=7)
        b = random_division(p, 4, seed=7)
        assert a.values("width") == b.values("width")


def test_hexagon_conway_two(hexagon):
    res = brute_2division(hexagon, "inradius", "minMax")
    assert res.value == pytest.approx(conway_solve(hexagon, 2).value, abs=1e-6)
