import math
import sys

import numpy as np
import pytest

from convexcuts.geometry import ConvexPolygon, regular_polygon, rectangle


def random_polygon(rng, k):
    """Convex polygon with k vertices on a random ellipse."""
    t = np.sort(rng.uniform(0.0, 2 * math.pi, k))
    a, b = rng.uniform(0.5, 2.0, 2)
    phi = rng.uniform(0, math.pi)
    p = np.column_stack([a * np.cos(t), b * np.sin(t)])
    rot = np.array([[math.cos(phi), -math.sin(phi)], [math.sin(phi), math.cos(phi)]])
    return p @ rot.T + rng.uniform(-1, 1, 2)


@pytest.fixture
def square():
    return rectangle(1.0, 1.0)


@pytest.fixture
def triangle():
    return ConvexPolygon([(0.0, 0.0), (1.0, 0.0), (0.5, math.sqrt(3) / 2)])


@pytest.fixture
def rect13():
    return rectangle(1.0, 3.0)


@pytest.fixture
def hexagon():
    return regular_polygon(6)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.VERDICTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(mod.VERDICTS):
        terminalreporter.write_line(mod.VERDICTS[key])
