"""Convex bodies bounded by line segments and circular arcs.

An :class:`ArcSegmentBody` is stored through its support function.  It is a
cyclic list of *generators*: a center ``c_j``, a radius ``r_j >= 0`` and the
interval of outward normal angles ``[a_j, a_{j+1}]`` over which that
generator supports the body, so that

    h(theta) = <c_j, u(theta)> + r_j    for theta in [a_j, a_{j+1}].

A generator with ``r_j > 0`` contributes a circular arc and one with
``r_j == 0`` a corner.  Consecutive generators are joined by a straight
segment (possibly of length zero) whose outward normal is ``a_{j+1}``.
Polygons, disks, stadiums and every rounded polygon fit this form, and so
do all pieces obtained by clipping them with lines.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import List, Union

import numpy as np

from .errors import CutMissesInterior, DegenerateArea
from .geometry import (
    EPS_CUT,
    TWO_PI,
    ConvexPolygon,
    Direction,
    LineCut,
    Slab,
    unit,
)

# Cones narrower than this (radians) carry no boundary and are dropped.
_EPS_ANGLE = 1e-13


@dataclass(frozen=True)
class Segment:
    p: tuple
    q: tuple

    @property
    def length(self) -> float:
        return math.dist(self.p, self.q)


@dataclass(frozen=True)
class Arc:
    center: tuple
    radius: float
    start: float
    sweep: float

    def point(self, s: float) -> np.ndarray:
        t = self.start + s * self.sweep
        return np.array(self.center) + self.radius * np.array([math.cos(t), math.sin(t)])


Feature = Union[Segment, Arc]


def _normalize(centers, radii, starts, scale_hint=None):
    """Drop empty cones and merge neighbors that share a center and radius."""
    c = np.asarray(centers, dtype=float).reshape(-1, 2)
    r = np.asarray(radii, dtype=float).reshape(-1)
    a = np.asarray(starts, dtype=float).reshape(-1)
    m = len(a)
    if m == 0:
        raise DegenerateArea("empty generator list")
    a0 = math.fmod(a[0], TWO_PI)
    if a0 < 0:
        a0 += TWO_PI
    a = a0 + np.concatenate([[0.0], np.cumsum(np.mod(np.diff(a), TWO_PI))])
    if m > 1 and a[-1] - a[0] >= TWO_PI:
        raise ValueError("generator cones wind more than once")

    if scale_hint is None:
        scale_hint = float(np.ptp(c, axis=0).max() + 2.0 * r.max()) or 1.0
    tiny = 1e-12 * scale_hint

    # An empty cone contributes nothing: its start moves to the next generator.
    ends = np.append(a[1:], a[0] + TWO_PI)
    full = ends - a > _EPS_ANGLE
    if not full.any():
        full[0] = True
    c, r, a = c[full], r[full], a[full]
    # A generator equal to its predecessor extends the predecessor's cone.
    same = (np.abs(r[1:] - r[:-1]) <= tiny) & (np.hypot(*(c[1:] - c[:-1]).T) <= tiny)
    keep = np.concatenate([[True], ~same])
    c, r, a = c[keep], r[keep], a[keep]
    while len(a) > 1 and abs(r[0] - r[-1]) <= tiny and math.hypot(*(c[0] - c[-1])) <= tiny:
        c, r, a = c[1:], r[1:], a[1:]
    return c, r, a


class ArcSegmentBody:
    """Closed convex body bounded by segments and circular arcs."""

    def __init__(self, centers, radii, starts, source=None, rho=None):
        c, r, a = _normalize(centers, radii, starts)
        if np.any(r < 0):
            raise ValueError("radii must be nonnegative")
        for arr in (c, r, a):
            arr.setflags(write=False)
        self.centers = c
        self.radii = r
        self.starts = a
        self.source = source
        self.rho = rho
        if len(a) == 1 and r[0] == 0.0:
            raise DegenerateArea("a single corner has no interior")

    # -- constructors -------------------------------------------------------
    @classmethod
    def from_polygon(cls, poly: ConvexPolygon) -> "ArcSegmentBody":
        starts = np.roll(poly.normal_angles, 1)
        return cls(poly.vertices, np.zeros(len(poly)), starts, source=poly, rho=0.0)

    @classmethod
    def disk(cls, center=(0.0, 0.0), radius: float = 1.0) -> "ArcSegmentBody":
        if radius <= 0:
            raise DegenerateArea("disk radius must be positive")
        return cls([center], [radius], [0.0])

    def __repr__(self):
        return f"ArcSegmentBody(generators={len(self.starts)}, rho={self.rho})"

    # -- support function ---------------------------------------------------
    @property
    def ends(self) -> np.ndarray:
        return np.append(self.starts[1:], self.starts[0] + TWO_PI)

    def _cone_index(self, theta) -> np.ndarray:
        t = self.starts[0] + np.mod(np.asarray(theta, dtype=float) - self.starts[0], TWO_PI)
        return np.searchsorted(self.starts, t, side="right") - 1

    def support_many(self, theta) -> np.ndarray:
        theta = np.asarray(theta, dtype=float)
        j = self._cone_index(theta)
        c = self.centers[j]
        return c[..., 0] * np.cos(theta) + c[..., 1] * np.sin(theta) + self.radii[j]

    def breadth_many(self, theta) -> np.ndarray:
        theta = np.asarray(theta, dtype=float)
        return self.support_many(theta) + self.support_many(theta + math.pi)

    def support(self, u) -> float:
        return float(self.support_many(Direction.from_vector(unit(u)).angle))

    def breadth(self, u) -> float:
        return float(self.breadth_many(Direction.from_vector(unit(u)).angle))

    def support_point(self, theta: float) -> np.ndarray:
        j = int(self._cone_index(theta))
        return self.centers[j] + self.radii[j] * np.array([math.cos(theta), math.sin(theta)])

    @cached_property
    def scale(self) -> float:
        b = self.breadth_many(np.array([0.0, 0.5 * math.pi]))
        return float(math.hypot(b[0], b[1]))

    # -- breadth extrema ----------------------------------------------------
    def _breadth_candidates(self):
        """Directions in [0, pi) containing every local extremum of the breadth.

        Between consecutive cone boundaries (taken mod pi) both support
        generators are fixed, and the breadth is the sinusoid
        <c1 - c2, u(theta)> + r1 + r2.  Its extrema over a bracket sit at the
        bracket ends or where u is parallel to +-(c1 - c2).
        """
        cuts = np.unique(np.concatenate([np.mod(self.starts, math.pi), [0.0, math.pi]]))
        lo, hi = cuts[:-1], cuts[1:]
        keep = hi - lo > 1e-15
        lo, hi = lo[keep], hi[keep]
        mid = 0.5 * (lo + hi)
        j1 = self._cone_index(mid)
        j2 = self._cone_index(mid + math.pi)
        v = self.centers[j1] - self.centers[j2]
        phi = np.arctan2(v[:, 1], v[:, 0])
        cands = [lo, hi]
        for shift in (0.0, math.pi):
            t = lo + np.mod(phi + shift - lo, TWO_PI)
            inside = t < hi
            cands.append(t[inside])
        return np.concatenate(cands)

    def width(self, tol: float = 1e-10):
        """Minimal width, returned as ``(value, slab)``.

        The breadth is piecewise sinusoidal, so its minimum is found in
        closed form; ``tol`` is accepted for interface symmetry.
        """
        theta = self._breadth_candidates()
        b = self.breadth_many(theta)
        i = int(np.argmin(b))
        th = float(theta[i])
        slab = Slab(Direction(th), -float(self.support_many(th + math.pi)), float(self.support_many(th)))
        return float(b[i]), slab

    def diameter(self) -> float:
        return float(self.breadth_many(self._breadth_candidates()).max())

    # -- boundary -----------------------------------------------------------
    def _nodes(self):
        """Start and end point of every generator's arc (equal for corners)."""
        s = self.centers + self.radii[:, None] * np.column_stack([np.cos(self.starts), np.sin(self.starts)])
        e = self.ends
        f = self.centers + self.radii[:, None] * np.column_stack([np.cos(e), np.sin(e)])
        return s, f

    @property
    def features(self) -> List[Feature]:
        s, f = self._nodes()
        m = len(self.starts)
        out: List[Feature] = []
        tiny = 1e-12 * self.scale
        sweeps = self.ends - self.starts
        for j in range(m):
            if self.radii[j] > 0:
                out.append(Arc(tuple(self.centers[j]), float(self.radii[j]), float(self.starts[j]), float(sweeps[j])))
            nxt = s[(j + 1) % m]
            if math.dist(f[j], nxt) > tiny:
                out.append(Segment(tuple(f[j]), tuple(nxt)))
        return out

    @cached_property
    def area(self) -> float:
        s, f = self._nodes()
        r = self.radii
        c = self.centers
        a, b = self.starts, self.ends
        arcs = r * (c[:, 0] * (np.sin(b) - np.sin(a)) - c[:, 1] * (np.cos(b) - np.cos(a))) + r * r * (b - a)
        nxt = np.roll(s, -1, axis=0)
        segs = f[:, 0] * nxt[:, 1] - f[:, 1] * nxt[:, 0]
        return 0.5 * float(arcs.sum() + segs.sum())

    def boundary_points(self, per_arc: int = 32) -> np.ndarray:
        """Counterclockwise sample of the boundary (corners and arc points)."""
        pts = []
        for j in range(len(self.starts)):
            if self.radii[j] > 0:
                k = max(2, int(math.ceil(per_arc * (self.ends[j] - self.starts[j]) / TWO_PI)) + 1)
                t = np.linspace(self.starts[j], self.ends[j], k)
                pts.append(self.centers[j] + self.radii[j] * np.column_stack([np.cos(t), np.sin(t)]))
            else:
                pts.append(self.centers[j][None, :])
        p = np.concatenate(pts)
        keep = np.ones(len(p), dtype=bool)
        d = np.hypot(*(np.diff(p, axis=0).T))
        keep[1:] = d > 1e-12 * self.scale
        return p[keep]

    def support_gap(self, point) -> float:
        """max over theta of <point, u(theta)> - h(theta); <= 0 iff point is inside."""
        p = np.asarray(point, dtype=float)
        d = p - self.centers
        a, b = self.starts, self.ends
        phi = np.arctan2(d[:, 1], d[:, 0])
        t_free = a + np.mod(phi - a, TWO_PI)
        inside = t_free <= b
        best = np.where(inside, np.hypot(d[:, 0], d[:, 1]), -np.inf)
        for t in (a, b):
            best = np.maximum(best, d[:, 0] * np.cos(t) + d[:, 1] * np.sin(t))
        return float(np.max(best - self.radii))

    def contains(self, point, tol: float = 1e-9) -> bool:
        return self.support_gap(point) <= tol * self.scale

    # -- clipping -----------------------------------------------------------
    def _split_at(self, nu: float):
        """Generators in coordinates delta = theta - nu, split at delta = 0 and pi."""
        d = np.mod(self.starts - nu, TWO_PI)
        order = np.argsort(d, kind="stable")
        d, c, r = d[order], self.centers[order], self.radii[order]
        # The last cone [d[-1], d[0] + 2pi] contains delta = 0 unless d[0] == 0.
        if d[0] > 0.0:
            d = np.concatenate([[0.0], d])
            c = np.concatenate([c[-1:], c])
            r = np.concatenate([r[-1:], r])
        if not np.any(d == math.pi):
            k = int(np.searchsorted(d, math.pi)) - 1
            d = np.insert(d, k + 1, math.pi)
            c = np.insert(c, k + 1, c[k], axis=0)
            r = np.insert(r, k + 1, r[k])
        return d, c, r

    def _keep_below(self, nu: float, t: float):
        """The piece {<x, u(nu)> <= t}."""
        n = np.array([math.cos(nu), math.sin(nu)])
        d, c, r = self._split_at(nu)
        m = len(d)
        dend = np.append(d[1:], TWO_PI)
        h = int(np.nonzero(d == math.pi)[0][0])

        us = np.column_stack([np.cos(nu + d), np.sin(nu + d)])
        ue = np.column_stack([np.cos(nu + dend), np.sin(nu + dend)])
        s_pts = c + r[:, None] * us
        e_pts = c + r[:, None] * ue
        nodes = np.empty((2 * m + 1, 2))
        nodes[0:2 * m:2] = s_pts
        nodes[1:2 * m:2] = e_pts
        nodes[2 * m] = s_pts[0]
        sv = nodes @ n - t

        def solve(q, first_half):
            a_pt, b_pt = nodes[q - 1], nodes[q]
            k = (q - 1) // 2
            if q % 2 == 1 and r[k] > 0:
                cosd = (t - float(c[k] @ n)) / r[k]
                delta = math.acos(min(1.0, max(-1.0, cosd)))
                if not first_half:
                    delta = TWO_PI - delta
                delta = min(max(delta, d[k]), dend[k])
                x = c[k] + r[k] * np.array([math.cos(nu + delta), math.sin(nu + delta)])
                return x, k, delta, True
            den = sv[q - 1] - sv[q]
            lam = sv[q - 1] / den if den != 0 else 0.0
            x = a_pt + lam * (b_pt - a_pt)
            return x, k, dend[k], False

        q = 1 + int(np.argmax(sv[1:2 * h + 1] <= 0.0))
        p = 2 * h + 1 + int(np.argmax(sv[2 * h + 1:] >= 0.0))
        x_in, k_in, d_in, on_arc_in = solve(q, True)
        x_out, k_out, d_out, on_arc_out = solve(p, False)

        k_first = k_in if on_arc_in else k_in + 1
        mid = slice(k_first, k_out + 1)
        mid_d = d[mid].copy()
        if on_arc_in and len(mid_d):
            mid_d[0] = d_in
        gens_c = np.concatenate([x_in[None, :], c[mid], x_out[None, :]])
        gens_r = np.concatenate([[0.0], r[mid], [0.0]])
        gens_d = np.concatenate([[0.0], mid_d, [d_out]])
        return ArcSegmentBody(gens_c, gens_r, nu + gens_d)

    def clip(self, cut: LineCut):
        nu = cut.normal.angle
        t = float(cut.offset)
        eps = EPS_CUT * self.scale
        hi = float(self.support_many(nu))
        lo = -float(self.support_many(nu + math.pi))
        if not (lo + eps < t < hi - eps):
            raise CutMissesInterior("cut line does not meet the interior")
        left = self._keep_below(nu, t)
        right = self._keep_below(math.fmod(nu + math.pi, TWO_PI), -t)
        for piece in (left, right):
            if piece.area <= 1e-14 * self.scale ** 2:
                raise CutMissesInterior("cut leaves a piece with empty interior")
        return left, right

    def to_polygon(self, per_arc: int = 64) -> ConvexPolygon:
        """Inscribed polygonal approximation (used for drawing)."""
        return ConvexPolygon(self.boundary_points(per_arc))
