"""Planar primitives: convex polygons, line cuts, support/breadth, width,
diameter, inradius and clipping.

Every function here is pure.  Polygons are counterclockwise, strictly convex
and immutable once built; raw input goes through :func:`validate_polygon`.
Tolerances are relative to the size of the body, never absolute.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence, Tuple, Union

import numpy as np

from .errors import (
    CutMissesInterior,
    DegenerateArea,
    NotConvex,
    TooFewVertices,
)

TWO_PI = 2.0 * math.pi

EPS_VERTEX = 1e-9
EPS_DIAM = 1e-9
# Points closer than this (relative to the body size) to a cut line lie on it.
EPS_CUT = 1e-12


@dataclass(frozen=True)
class Direction:
    """A unit direction stored by its angle, normalized to [0, 2*pi)."""

    angle: float

    def __post_init__(self):
        a = math.fmod(float(self.angle), TWO_PI)
        if a < 0.0:
            a += TWO_PI
        if a >= TWO_PI:
            a = 0.0
        object.__setattr__(self, "angle", a)

    @classmethod
    def from_vector(cls, v) -> "Direction":
        return cls(math.atan2(v[1], v[0]))

    @property
    def vector(self) -> np.ndarray:
        return np.array([math.cos(self.angle), math.sin(self.angle)])

    def opposite(self) -> "Direction":
        return Direction(self.angle + math.pi)

    def perpendicular(self) -> "Direction":
        return Direction(self.angle + 0.5 * math.pi)


DirectionLike = Union[Direction, float, Sequence[float], np.ndarray]


def as_direction(u: DirectionLike) -> Direction:
    if isinstance(u, Direction):
        return u
    if np.ndim(u) == 0:
        return Direction(float(u))
    return Direction.from_vector(u)


def unit(u: DirectionLike) -> np.ndarray:
    if isinstance(u, Direction):
        return u.vector
    if np.ndim(u) == 0:
        return np.array([math.cos(u), math.sin(u)])
    v = np.asarray(u, dtype=float)
    norm = math.hypot(v[0], v[1])
    if norm == 0.0:
        raise ValueError("direction vector is zero")
    return v / norm


@dataclass(frozen=True)
class LineCut:
    """The line <x, normal> = offset.

    The left child of a cut is {<x, normal> <= offset}, the right child is
    {<x, normal> >= offset}.
    """

    normal: Direction
    offset: float

    @classmethod
    def through(cls, point, direction) -> "LineCut":
        """Cut along the line through ``point`` with tangent ``direction``."""
        d = unit(direction)
        nrm = Direction.from_vector((d[1], -d[0]))
        return cls(nrm, float(np.dot(point, nrm.vector)))

    def signed(self, points) -> np.ndarray:
        return np.asarray(points, dtype=float) @ self.normal.vector - self.offset


@dataclass(frozen=True)
class Slab:
    """The region low <= <x, normal> <= high."""

    normal: Direction
    low: float
    high: float

    def __post_init__(self):
        if not self.high > self.low:
            raise ValueError("slab needs high > low")

    @property
    def width(self) -> float:
        return self.high - self.low


@dataclass(frozen=True)
class OrthogonalWidths:
    w: Tuple[float, ...]

    def __post_init__(self):
        w = tuple(float(x) for x in self.w)
        if not w or any(x <= 0 for x in w):
            raise ValueError("orthogonal widths must be positive")
        if any(b < a for a, b in zip(w, w[1:])):
            raise ValueError("orthogonal widths must be nondecreasing")
        object.__setattr__(self, "w", w)

    def __len__(self):
        return len(self.w)

    def __iter__(self):
        return iter(self.w)

    def __getitem__(self, i):
        return self.w[i]


def signed_area(points) -> float:
    p = np.asarray(points, dtype=float)
    x, y = p[:, 0], p[:, 1]
    return 0.5 * float(np.dot(x, np.roll(y, -1)) - np.dot(y, np.roll(x, -1)))


class ConvexPolygon:
    """Counterclockwise strictly convex polygon.

    The constructor trusts its input; use :func:`validate_polygon` for raw
    vertex lists.  Edge ``i`` runs from vertex ``i`` to vertex ``i + 1``.
    """

    __slots__ = ("vertices", "__dict__")

    def __init__(self, vertices):
        v = np.array(vertices, dtype=float)
        v.setflags(write=False)
        self.vertices = v

    def __len__(self):
        return len(self.vertices)

    def __repr__(self):
        pts = ", ".join(f"({x:.6g}, {y:.6g})" for x, y in self.vertices)
        return f"ConvexPolygon([{pts}])"

    @cached_property
    def area(self) -> float:
        return signed_area(self.vertices)

    @cached_property
    def scale(self) -> float:
        """Bounding-box diagonal; the length unit for relative tolerances."""
        span = self.vertices.max(axis=0) - self.vertices.min(axis=0)
        return float(math.hypot(span[0], span[1]))

    @cached_property
    def edges(self) -> np.ndarray:
        return np.roll(self.vertices, -1, axis=0) - self.vertices

    @cached_property
    def normals(self) -> np.ndarray:
        """Outward unit normals, one per edge."""
        e = self.edges
        nrm = np.column_stack([e[:, 1], -e[:, 0]])
        return nrm / np.hypot(nrm[:, 0], nrm[:, 1])[:, None]

    @cached_property
    def normal_angles(self) -> np.ndarray:
        return np.mod(np.arctan2(self.normals[:, 1], self.normals[:, 0]), TWO_PI)

    @cached_property
    def offsets(self) -> np.ndarray:
        """Support values along each outward normal: edge i lies on <x, n_i> = offsets[i]."""
        return np.einsum("ij,ij->i", self.vertices, self.normals)

    @cached_property
    def centroid(self) -> np.ndarray:
        v = self.vertices
        w = np.roll(v, -1, axis=0)
        c = v[:, 0] * w[:, 1] - w[:, 0] * v[:, 1]
        a = c.sum() / 2.0
        return np.array([((v[:, 0] + w[:, 0]) * c).sum(), ((v[:, 1] + w[:, 1]) * c).sum()]) / (6.0 * a)

    def support(self, u: DirectionLike) -> float:
        return float(np.max(self.vertices @ unit(u)))

    def breadth(self, u: DirectionLike) -> float:
        p = self.vertices @ unit(u)
        return float(p.max() - p.min())

    def contains(self, point, tol: float = 0.0) -> bool:
        return bool(np.all(self.normals @ np.asarray(point, float) <= self.offsets + tol * self.scale))

    def clip(self, cut: LineCut):
        return _clip_polygon(self, cut)


Body = Union[ConvexPolygon, "ArcSegmentBody"]  # noqa: F821


def validate_polygon(raw) -> ConvexPolygon:
    """Build a ConvexPolygon from raw vertices.

    Clockwise input is reoriented.  Duplicate vertices (within 1e-9 of the
    bounding-box diagonal) and collinear vertices are dropped.
    """
    pts = np.asarray(raw, dtype=float)
    if pts.ndim != 2 or pts.shape[1] != 2 or len(pts) < 3:
        raise TooFewVertices("a polygon needs at least 3 vertices")
    if not np.all(np.isfinite(pts)):
        raise ValueError("vertex coordinates must be finite")
    span = pts.max(axis=0) - pts.min(axis=0)
    diag = float(math.hypot(span[0], span[1]))
    if diag == 0.0:
        raise DegenerateArea("all vertices coincide")
    eps = EPS_VERTEX * diag

    kept = [pts[0]]
    for p in pts[1:]:
        if math.dist(p, kept[-1]) > eps:
            kept.append(p)
    while len(kept) > 1 and math.dist(kept[0], kept[-1]) <= eps:
        kept.pop()
    if len(kept) < 3:
        raise TooFewVertices("fewer than 3 distinct vertices")
    pts = np.array(kept)

    area = signed_area(pts)
    if abs(area) <= eps * diag:
        raise DegenerateArea("polygon has (near) zero area")
    if area < 0:
        pts = pts[::-1]

    # Drop collinear vertices until every turn is strictly positive.
    changed = True
    while changed and len(pts) >= 3:
        changed = False
        prev = np.roll(pts, 1, axis=0)
        nxt = np.roll(pts, -1, axis=0)
        a, b = pts - prev, nxt - pts
        cr = a[:, 0] * b[:, 1] - a[:, 1] * b[:, 0]
        scale = np.hypot(a[:, 0], a[:, 1]) * np.hypot(b[:, 0], b[:, 1])
        flat = np.abs(cr) <= EPS_VERTEX * scale
        if np.any((cr < 0) & ~flat):
            raise NotConvex("polygon has a reflex vertex")
        if np.any(flat):
            drop = int(np.argmax(flat))
            pts = np.delete(pts, drop, axis=0)
            changed = True
    if len(pts) < 3:
        raise DegenerateArea("polygon collapses to a segment")

    # Every turn is left; a total turning of more than 2*pi means the
    # vertex order winds around several times.
    e = np.roll(pts, -1, axis=0) - pts
    ang = np.arctan2(e[:, 1], e[:, 0])
    turns = np.mod(np.roll(ang, -1) - ang, TWO_PI)
    if abs(turns.sum() - TWO_PI) > 1e-6:
        raise NotConvex("vertex order is not a simple convex loop")
    return ConvexPolygon(pts)


def regular_polygon(k: int, radius: float = 1.0, center=(0.0, 0.0), phase: float = 0.0) -> ConvexPolygon:
    t = phase + TWO_PI * np.arange(k) / k
    return ConvexPolygon(np.column_stack([center[0] + radius * np.cos(t), center[1] + radius * np.sin(t)]))


def rectangle(a: float, b: float) -> ConvexPolygon:
    return ConvexPolygon([(0.0, 0.0), (a, 0.0), (a, b), (0.0, b)])


def support(body: Body, u: DirectionLike) -> float:
    return body.support(u)


def breadth(body: Body, u: DirectionLike) -> float:
    return body.breadth(u)


def width(body: ConvexPolygon):
    """Minimal width of a polygon.

    One line of a minimal slab always contains an edge, so it is enough to
    look at the breadth along every edge normal.  Returns
    ``(value, slab, edge_index)``; ties go to the lowest edge index.
    """
    proj = body.vertices @ body.normals.T  # proj[v, e]
    low = proj.min(axis=0)
    b = body.offsets - low
    i = int(np.argmin(b))
    slab = Slab(Direction.from_vector(body.normals[i]), float(low[i]), float(body.offsets[i]))
    return float(b[i]), slab, i


def width_value(body: Body) -> float:
    if isinstance(body, ConvexPolygon):
        return width(body)[0]
    return body.width()[0]


def width_arc(body, tol: float = 1e-10) -> float:
    """Minimal width of an arc-segment body (see ``ArcSegmentBody.width``)."""
    return body.width(tol)[0]


def _antipodal_pairs(v: np.ndarray):
    k = len(v)
    if k < 3:
        return {(0, k - 1)} if k == 2 else set()
    tol = 1e-12 * float(np.ptp(v, axis=0).max()) ** 2

    def area2(i, i1, j):
        a = v[i1] - v[i]
        b = v[j] - v[i]
        return a[0] * b[1] - a[1] * b[0]

    j = max(range(k), key=lambda m: area2(0, 1, m))
    pairs = set()
    for i in range(k):
        i1 = (i + 1) % k
        steps = 0
        while area2(i, i1, (j + 1) % k) > area2(i, i1, j) + tol and steps < k:
            j = (j + 1) % k
            steps += 1
        pairs.add((i, j))
        pairs.add((i1, j))
        j1 = (j + 1) % k
        if abs(area2(i, i1, j1) - area2(i, i1, j)) <= tol:
            pairs.add((i, j1))
            pairs.add((i1, j1))
    return {(min(a, b), max(a, b)) for a, b in pairs if a != b}


def diameter(body: ConvexPolygon):
    """Diameter by rotating calipers.

    Returns ``(value, pairs)`` where ``pairs`` lists every antipodal vertex
    pair whose distance is within a relative 1e-9 of the maximum.
    """
    v = body.vertices
    cand = sorted(_antipodal_pairs(v))
    d = np.array([math.dist(v[i], v[j]) for i, j in cand])
    dmax = float(d.max())
    pairs = [p for p, x in zip(cand, d) if x >= dmax * (1.0 - EPS_DIAM)]
    return dmax, pairs


def diameter_value(body: Body) -> float:
    if isinstance(body, ConvexPolygon):
        return diameter(body)[0]
    return body.diameter()


_TRIPLES = {}


def _triples(k):
    if k not in _TRIPLES:
        _TRIPLES[k] = np.array(list(itertools.combinations(range(k), 3)), dtype=int).reshape(-1, 3)
    return _TRIPLES[k]


def _chebyshev_from_triples(normals, offsets, candidates, tol):
    idx = _triples(len(candidates))
    idx = np.asarray(candidates)[idx]
    a = np.concatenate([normals[idx], np.ones(idx.shape + (1,))], axis=2)
    b = offsets[idx]
    det = np.linalg.det(a)
    ok = np.abs(det) > 1e-12
    if not np.any(ok):
        return None
    sol = np.linalg.solve(a[ok], b[ok][..., None])[..., 0]
    slack = offsets[None, :] - (sol[:, :2] @ normals.T + sol[:, 2:3])
    feasible = np.all(slack >= -tol, axis=1) & (sol[:, 2] >= 0)
    if not np.any(feasible):
        return None
    sol = sol[feasible]
    best = int(np.argmax(sol[:, 2]))
    return float(sol[best, 2]), sol[best, :2].copy()


def inradius(body: ConvexPolygon):
    """Radius and center of the largest inscribed disk (Chebyshev center).

    The optimum of the linear program max r s.t. <x, n_i> + r <= c_i sits
    where three constraints are tight, so small polygons enumerate triples
    of edges exactly.  Large polygons locate the active edges with HiGHS
    first and then solve the tight triples exactly.
    """
    normals, offsets = body.normals, body.offsets
    k = len(normals)
    tol = 1e-11 * body.scale
    if k <= 24:
        res = _chebyshev_from_triples(normals, offsets, range(k), tol)
    else:
        from scipy.optimize import linprog

        a_ub = np.column_stack([normals, np.ones(k)])
        lp = linprog([0.0, 0.0, -1.0], A_ub=a_ub, b_ub=offsets, bounds=[(None, None)] * 3, method="highs")
        x = lp.x
        slack = offsets - a_ub @ x
        near = np.argsort(slack)[:8]
        res = _chebyshev_from_triples(normals, offsets, sorted(near.tolist()), tol)
        if res is None or res[0] < x[2] - 1e-9 * body.scale:
            res = (float(x[2]), x[:2].copy())
    if res is None:
        raise DegenerateArea("no inscribed disk found")
    return res


def inradius_value(body: Body) -> float:
    if isinstance(body, ConvexPolygon):
        return inradius(body)[0]
    return body.inradius()


def _clip_polygon(poly: ConvexPolygon, cut: LineCut):
    v = poly.vertices
    s = cut.signed(v)
    eps = EPS_CUT * poly.scale
    if s.max() <= eps or s.min() >= -eps:
        raise CutMissesInterior("cut line does not meet the interior")
    s1 = np.roll(s, -1)
    v1 = np.roll(v, -1, axis=0)
    crossing = ((s < -eps) & (s1 > eps)) | ((s > eps) & (s1 < -eps))
    lam = s[crossing] / (s[crossing] - s1[crossing])
    x = v[crossing] + lam[:, None] * (v1[crossing] - v[crossing])
    pos_x = np.nonzero(crossing)[0] + 0.5
    pos_v = np.arange(len(v), dtype=float)

    pieces = []
    for mask in (s <= eps, s >= -eps):
        pts = np.concatenate([v[mask], x])
        pos = np.concatenate([pos_v[mask], pos_x])
        pts = pts[np.argsort(pos, kind="stable")]
        if len(pts) < 3 or signed_area(pts) <= 1e-14 * poly.scale ** 2:
            raise CutMissesInterior("cut leaves a piece with empty interior")
        pieces.append(ConvexPolygon(pts))
    return pieces[0], pieces[1]


def clip(body: Body, cut: LineCut):
    """Split ``body`` by ``cut`` into its closed (left, right) halves."""
    return body.clip(cut)


def orthogonal_widths_2d(body: ConvexPolygon) -> OrthogonalWidths:
    """Side lengths (w1, w2) of the bounding rectangle aligned with a minimal slab."""
    w1, slab, _ = width(body)
    w2 = body.breadth(slab.normal.perpendicular())
    assert w2 >= w1 * (1.0 - 1e-12), "breadth along a width slab cannot undercut the width"
    return OrthogonalWidths((w1, max(w1, w2)))


def bounding_rectangle(body: ConvexPolygon):
    """The rectangle H_C as two slabs: (across the width, along the width lines)."""
    _, slab1, _ = width(body)
    u2 = slab1.normal.perpendicular()
    p = body.vertices @ u2.vector
    return slab1, Slab(u2, float(p.min()), float(p.max()))
