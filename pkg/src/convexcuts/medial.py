"""Medial axis, inner parallel polygons, rounded bodies and relative widths.

Everything here is driven by one wavefront simulation: every edge line of
the polygon moves inward at unit speed, and an edge disappears when its
length reaches zero.  The traces of the wavefront vertices are the medial
axis, and the wavefront at time rho is the inner parallel polygon Q(rho),
so that the rounded body is C^rho = Q(rho) + rho * disk.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import List, Optional, Tuple

import numpy as np

from .arcbody import ArcSegmentBody
from .errors import NotAffineBetweenBreakpoints, RhoOutOfRange
from .geometry import ConvexPolygon

_EVENT_TOL = 1e-10


@dataclass(frozen=True)
class Stage:
    """Wavefront between two events: ``edges`` stay active on [t0, t1]."""

    t0: float
    t1: float
    edges: Tuple[int, ...]
    base: np.ndarray = field(repr=False)      # vertex positions extrapolated to time 0
    velocity: np.ndarray = field(repr=False)  # d(position)/d(time)

    def positions(self, t: float) -> np.ndarray:
        return self.base + t * self.velocity


@dataclass
class MedialAxis:
    points: np.ndarray
    clearance: np.ndarray
    edges: List[Tuple[Tuple[int, int], Tuple[int, int]]]
    stages: List[Stage]

    @property
    def max_clearance(self) -> float:
        return float(self.clearance.max())

    def vertices(self):
        return [(tuple(p), float(c)) for p, c in zip(self.points, self.clearance)]


def _stage_kinematics(poly: ConvexPolygon, edges):
    """Vertex i sits between edge edges[i-1] and edges[i]."""
    e = np.asarray(edges)
    n1 = poly.normals[np.roll(e, 1)]
    n2 = poly.normals[e]
    a = np.stack([n1, n2], axis=1)
    c = np.column_stack([poly.offsets[np.roll(e, 1)], poly.offsets[e]])
    base = np.linalg.solve(a, c[..., None])[..., 0]
    vel = np.linalg.solve(a, -np.ones((len(e), 2, 1)))[..., 0]
    return base, vel


def _collapse_times(poly, edges, base, vel, t_now):
    e = np.asarray(edges)
    n = poly.normals[e]
    tangent = np.column_stack([-n[:, 1], n[:, 0]])
    nb, nv = np.roll(base, -1, axis=0), np.roll(vel, -1, axis=0)
    len0 = np.einsum("ij,ij->i", nb - base, tangent)
    len1 = np.einsum("ij,ij->i", nv - vel, tangent)
    with np.errstate(divide="ignore", invalid="ignore"):
        t = np.where(len1 < -1e-14, -len0 / len1, np.inf)
    return np.maximum(t, t_now)


def _runs(mask):
    """Maximal cyclic runs of True in ``mask`` as lists of positions."""
    k = len(mask)
    if mask.all():
        return [list(range(k))]
    start = int(np.argmin(mask))  # a False position
    runs, cur = [], []
    for off in range(1, k + 1):
        i = (start + off) % k
        if mask[i]:
            cur.append(i)
        elif cur:
            runs.append(cur)
            cur = []
    if cur:
        runs.append(cur)
    return runs


@lru_cache(maxsize=256)
def _medial_axis_cached(key: bytes, k: int) -> MedialAxis:
    poly = ConvexPolygon(np.frombuffer(key).reshape(k, 2))
    return _wavefront(poly)


def medial_axis(poly: ConvexPolygon) -> MedialAxis:
    """Medial axis of a convex polygon by wavefront shrinking (O(k^2))."""
    v = np.ascontiguousarray(poly.vertices, dtype=float)
    return _medial_axis_cached(v.tobytes(), len(v))


def _wavefront(poly: ConvexPolygon) -> MedialAxis:
    k = len(poly)
    tol = _EVENT_TOL * poly.scale
    points = [p for p in poly.vertices]
    clearance = [0.0] * k
    axis_edges = []
    stages: List[Stage] = []

    edges = list(range(k))
    origin = list(range(k))  # medial node each wavefront vertex started from
    t_now = 0.0
    while True:
        base, vel = _stage_kinematics(poly, edges)
        times = _collapse_times(poly, edges, base, vel, t_now)
        t_next = float(times.min())
        stages.append(Stage(t_now, t_next, tuple(edges), base, vel))
        mask = times <= t_next + tol
        pos = base + t_next * vel
        m = len(edges)

        new_edges, new_origin = [], []
        born = {}
        runs = _runs(mask)
        for run in runs:
            # Vertices run[0] .. run[-1] + 1 meet at one point.
            verts = run + [(run[-1] + 1) % m]
            if len(run) == m:
                verts = run
            x = pos[verts].mean(axis=0)
            node = len(points)
            points.append(x)
            clearance.append(t_next)
            for vi in verts:
                axis_edges.append(((origin[vi], node), (edges[vi - 1], edges[vi])))
            born[(run[-1] + 1) % m] = node
        # Surviving edges, with the vertex at their start inheriting a new origin.
        for i in range(m):
            if mask[i]:
                continue
            new_edges.append(edges[i])
            new_origin.append(born.get(i, origin[i]))
        t_now = t_next
        if len(new_edges) <= 2:
            if len(new_edges) == 2:
                a, b = new_origin
                if a != b and math.dist(points[a], points[b]) > tol:
                    axis_edges.append(((a, b), (new_edges[1], new_edges[0])))
                elif a != b:
                    # Coincident end nodes: merge b into a.
                    axis_edges = [
                        ((a if i == b else i, a if j == b else j), s) for (i, j), s in axis_edges
                    ]
            break
        edges, origin = new_edges, new_origin

    pts = np.array(points)
    clr = np.array(clearance)
    # Drop nodes no edge refers to (merged duplicates) and renumber.
    used = sorted({i for (ij, _) in axis_edges for i in ij})
    remap = {old: new for new, old in enumerate(used)}
    axis_edges = [((remap[i], remap[j]), s) for (i, j), s in axis_edges]
    return MedialAxis(pts[used], clr[used], axis_edges, stages)


def inradius_from_axis(poly: ConvexPolygon) -> float:
    return medial_axis(poly).max_clearance


def _stage_at(axis: MedialAxis, rho: float) -> Stage:
    for st in axis.stages:
        if rho <= st.t1:
            return st
    return axis.stages[-1]


def _check_rho(axis: MedialAxis, rho: float) -> float:
    top = axis.max_clearance
    if not (rho >= 0.0) or rho > top * (1.0 + 1e-12):
        raise RhoOutOfRange(f"rho={rho!r} outside [0, {top!r}]")
    return min(rho, top)


def inner_polygon(poly: ConvexPolygon, rho: float):
    """Q(rho) as ``(points, edge_labels)``.

    ``points[i]`` is the vertex between the offset lines of C's edges
    ``labels[i-1]`` and ``labels[i]``.  At rho = I(C) consecutive points may
    coincide (Q is then a segment or a point).
    """
    axis = medial_axis(poly)
    rho = _check_rho(axis, rho)
    st = _stage_at(axis, rho)
    return st.positions(rho), np.array(st.edges)


def rounded_body(poly: ConvexPolygon, rho: float) -> ArcSegmentBody:
    """C^rho, the union of all disks of radius rho inside C."""
    axis = medial_axis(poly)
    rho = _check_rho(axis, rho)
    if rho == 0.0:
        return ArcSegmentBody.from_polygon(poly)
    pts, labels = inner_polygon(poly, rho)
    starts = poly.normal_angles[np.roll(labels, 1)]
    return ArcSegmentBody(pts, np.full(len(pts), rho), starts, source=poly, rho=rho)


def relative_width_rounded(poly: ConvexPolygon, edge: int, rho: float) -> float:
    """Breadth of C^rho across the direction of edge ``edge``."""
    pts, _ = inner_polygon(poly, rho)
    rho = min(rho, medial_axis(poly).max_clearance)
    p = pts @ poly.normals[edge]
    return float(p.max() - p.min()) + 2.0 * rho


@dataclass(frozen=True)
class PiecewiseAffine:
    breakpoints: np.ndarray
    slopes: np.ndarray
    intercepts: np.ndarray

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        i = np.clip(np.searchsorted(self.breakpoints, x, side="right") - 1, 0, len(self.slopes) - 1)
        return self.slopes[i] * x + self.intercepts[i]

    @property
    def pieces(self):
        b = self.breakpoints
        return [(b[i], b[i + 1], self.slopes[i], self.intercepts[i]) for i in range(len(self.slopes))]


def relative_width_function(poly: ConvexPolygon, edge: int, rtol: float = 1e-9, max_depth: int = 40) -> PiecewiseAffine:
    """rho -> w_L(C^rho) on [0, I(C)] as an explicit piecewise affine map.

    Candidate breakpoints are the clearances of the medial-axis vertices.
    Each piece is fitted through its end values and checked at the
    midpoint; a failing piece is bisected.
    """
    axis = medial_axis(poly)
    top = axis.max_clearance
    cand = np.unique(np.concatenate([[0.0, top], axis.clearance]))
    cand = cand[(cand >= 0.0) & (cand <= top)]
    scale = poly.breadth(poly.normals[edge])
    f = lambda r: relative_width_rounded(poly, edge, r)  # noqa: E731

    brk, sl, ic = [float(cand[0])], [], []

    def fit(r0, f0, r1, f1, depth):
        a = (f1 - f0) / (r1 - r0)
        b = f0 - a * r0
        rm = 0.5 * (r0 + r1)
        fm = f(rm)
        if abs(fm - (a * rm + b)) <= rtol * scale:
            brk.append(r1)
            sl.append(a)
            ic.append(b)
            return
        if depth >= max_depth:
            raise NotAffineBetweenBreakpoints(f"no affine fit on [{r0}, {r1}] for edge {edge}")
        fit(r0, f0, rm, fm, depth + 1)
        fit(rm, fm, r1, f1, depth + 1)

    vals = [f(r) for r in cand]
    for i in range(len(cand) - 1):
        if cand[i + 1] - cand[i] <= 1e-12 * max(top, 1e-300):
            continue
        fit(float(cand[i]), vals[i], float(cand[i + 1]), vals[i + 1], 0)
    if not sl:
        # Degenerate range: report a constant piece.
        brk.append(float(top))
        sl.append(0.0)
        ic.append(vals[0])
    return PiecewiseAffine(np.array(brk), np.array(sl), np.array(ic))


def solve_side_equation(poly: ConvexPolygon, edge: int, n: int, fn: Optional[PiecewiseAffine] = None) -> Optional[float]:
    """Root of w_L(C^rho) = 2 n rho on (0, I(C)], or None if there is none.

    The left side decreases and the right side increases, so the root is
    unique when it exists.  It fails to exist for sides whose relative
    width stays above 2 n I(C) (the short side of a long rectangle).
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    fn = relative_width_function(poly, edge) if fn is None else fn
    for r0, r1, a, b in fn.pieces:
        g0 = a * r0 + b - 2 * n * r0
        g1 = a * r1 + b - 2 * n * r1
        if g0 >= 0.0 >= g1:
            rho = b / (2 * n - a)
            return float(min(max(rho, r0), r1))
    return None
