"""The standard test corpus of convex polygons."""
from __future__ import annotations

import math
from pathlib import Path
from typing import Dict

import numpy as np

from .documents import dump_polygon
from .geometry import ConvexPolygon, validate_polygon

CORPUS_SEED = 20240611


def _regular(k, radius=1.0):
    t = 2 * math.pi * np.arange(k) / k + math.pi / 2
    return np.column_stack([radius * np.cos(t), radius * np.sin(t)])


def random_hull(rng: np.random.Generator, k: int) -> np.ndarray:
    """k points on a random rotated ellipse, kept well separated in angle."""
    while True:
        t = np.sort(rng.uniform(0.0, 2 * math.pi, k))
        gaps = np.diff(np.append(t, t[0] + 2 * math.pi))
        if gaps.min() > 0.15:
            break
    a, b = rng.uniform(0.6, 1.8, 2)
    phi = rng.uniform(0.0, math.pi)
    p = np.column_stack([a * np.cos(t), b * np.sin(t)])
    c, s = math.cos(phi), math.sin(phi)
    return p @ np.array([[c, s], [-s, c]]) + rng.uniform(-1.0, 1.0, 2)


def random_polygons(count: int = 20, seed: int = CORPUS_SEED) -> Dict[str, ConvexPolygon]:
    rng = np.random.default_rng(seed)
    out = {}
    for i in range(count):
        k = int(rng.integers(3, 13))
        out[f"random_{i:02d}"] = validate_polygon(random_hull(rng, k))
    return out


def standard_corpus() -> Dict[str, ConvexPolygon]:
    s3 = math.sqrt(3.0)
    shapes = {
        "square": [(0, 0), (1, 0), (1, 1), (0, 1)],
        "rectangle_1x3": [(0, 0), (3, 0), (3, 1), (0, 1)],
        "rectangle_1x10": [(0, 0), (10, 0), (10, 1), (0, 1)],
        "equilateral_triangle": [(0, 0), (1, 0), (0.5, s3 / 2)],
        "isosceles_4_5_5": [(-2, 0), (2, 0), (0, math.sqrt(21.0))],
    }
    out = {name: validate_polygon(v) for name, v in shapes.items()}
    for k in range(5, 13):
        out[f"regular_{k}"] = validate_polygon(_regular(k))
    out["disk_256"] = validate_polygon(_regular(256))
    out.update(random_polygons())
    return out


def write_corpus(directory) -> list:
    d = Path(directory)
    d.mkdir(parents=True, exist_ok=True)
    paths = []
    for name, poly in standard_corpus().items():
        p = d / f"{name}.json"
        dump_polygon(name, poly, p)
        paths.append(p)
    return paths
