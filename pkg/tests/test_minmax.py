import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from convexcuts.geometry import inradius, rectangle, regular_polygon, validate_polygon, width
from convexcuts.medial import rounded_body
from convexcuts.minmax import (
    balanced_cut,
    conway_solve,
    mesh_tuples,
    minmax_diameter_bounds,
    minmax_diameter_mesh_division,
    minmax_diameter_solve,
    minmax_width_solve,
)

from conftest import random_polygon

S3 = math.sqrt(3.0)


class TestWidth:
    @pytest.mark.parametrize("n", range(2, 9))
    def test_square(self, square, n):
        rep = minmax_width_solve(square, n)
        assert rep.value == pytest.approx(1.0 / n, rel=1e-12)
        assert len(rep.division) == n
        assert rep.per_subset == pytest.approx([1.0 / n] * n, rel=1e-9)

    def test_triangle(self, triangle):
        rep = minmax_width_solve(triangle, 3)
        assert rep.value == pytest.approx(S3 / 6)
        assert rep.balanced

    def test_bad_n(self, square):
        with pytest.raises(ValueError):
            minmax_width_solve(square, 1)


class TestConway:
    @pytest.mark.parametrize("n", [2, 3, 4, 5])
    def test_triangle(self, triangle, n):
        r = 1 / (2 * S3)
        rep = conway_solve(triangle, n)
        assert rep.value == pytest.approx(3 * r / (2 * n + 1), abs=1e-9)
        assert rep.per_subset == pytest.approx([rep.value] * n, rel=1e-8)

    @pytest.mark.parametrize("n", [2, 3, 4, 5])
    def test_square(self, square, n):
        assert conway_solve(square, n).value == pytest.approx(1 / (2 * n), abs=1e-9)

    def test_long_rectangle_is_inradius_over_n(self):
        # Strips along the long side meet the lower bound I(C)/n.
        for n in range(2, 6):
            assert conway_solve(rectangle(1.0, 3.0), n).value == pytest.approx(0.5 / n, abs=1e-9)
        rep = conway_solve(rectangle(1.0, 10.0), 2)
        assert rep.value == pytest.approx(0.25)

    def test_hexagon_side_equation(self, hexagon):
        rep = conway_solve(hexagon, 2)
        rho = rep.value
        assert rounded_body(hexagon, rho).width()[0] == pytest.approx(4 * rho, rel=1e-9)

    @settings(max_examples=20, deadline=None)
    @given(seed=st.integers(0, 10_000), k=st.integers(3, 12), n=st.integers(2, 5))
    def test_random_invariants(self, seed, k, n):
        poly = validate_polygon(random_polygon(np.random.default_rng(seed), k))
        rep = conway_solve(poly, n)
        inr = inradius(poly)[0]
        assert rep.value >= inr / n * (1 - 1e-12)
        assert rep.value <= inr
        assert abs(rounded_body(poly, rep.value).width()[0] - 2 * n * rep.value) < 1e-8 * width(poly)[0]
        assert conway_solve(poly, n + 1).value < rep.value


class TestDiameter:
    def test_mesh_tuples(self):
        assert sorted(mesh_tuples(2, 4)) == [(1, 1), (1, 2), (1, 3), (1, 4), (2, 2)]
        assert all(np.prod(t) <= 7 for t in mesh_tuples(2, 7))

    def test_square_seven(self, square):
        rep = minmax_diameter_solve(square, 7)
        b = rep.bounds
        assert b.upper == pytest.approx(math.sqrt(13) / 6, abs=1e-12)
        assert tuple(b.mesh_tuple) == (2, 3)
        assert b.lower == pytest.approx(math.sqrt(2) / 7)
        assert b.lower_strict and b.lower < b.upper
        assert len(rep.division) == 6
        assert max(rep.per_subset) <= math.sqrt(13) / 6 + 1e-9

    def test_long_rectangle_sharpness(self):
        for L, tol in ((10.0, 0.05), (100.0, 0.05)):
            b = minmax_diameter_solve(rectangle(1.0, L), 5).bounds
            assert tuple(b.mesh_tuple) == (1, 5)
            if L == 100.0:
                assert b.upper / b.lower - 1 < tol
        b10 = minmax_diameter_solve(rectangle(1.0, 10.0), 5).bounds
        b100 = minmax_diameter_solve(rectangle(1.0, 100.0), 5).bounds
        assert b100.upper / b100.lower < b10.upper / b10.lower

    def test_bounds_validation(self):
        with pytest.raises(ValueError):
            minmax_diameter_bounds((1.0, 3.0), 2.0, 3)

    def test_mesh_division_leaves(self, hexagon):
        tree = minmax_diameter_mesh_division(hexagon, (2, 2))
        assert len(tree) == 4
        assert sum(tree.areas()) == pytest.approx(hexagon.area)

    def test_mesh_on_rounded_body(self, square):
        tree = minmax_diameter_mesh_division(rounded_body(square, 0.2), (1, 2))
        assert len(tree) == 2


class TestBalancedCut:
    def test_square_area_free(self, square):
        cut = balanced_cut(square, (1.0, 0.0), "width")
        assert cut.offset == pytest.approx(0.5)

    def test_triangle_inradius(self, triangle):
        cut, a, b, fa, fb = balanced_cut(triangle, (0.0, 1.0), "inradius", with_pieces=True)
        assert fa == pytest.approx(fb, abs=1e-10 * inradius(triangle)[0])

    def test_zero_extent(self, square):
        with pytest.raises(ValueError):
            balanced_cut(square, (0.0, 0.0), "width")


def test_regular_polygons_conway_monotone():
    p = regular_polygon(8)
    vals = [conway_solve(p, n).value for n in range(2, 7)]
    assert all(a > b for a, b in zip(vals, vals[1:]))
