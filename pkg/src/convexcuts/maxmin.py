"""Solvers for the Max-min problems (maximize the smallest piece).

* diameter: the optimal value is always D(C); an optimal n-division exists
  iff some family of diameter segments with disjoint interiors has enough
  capacity, and then it is built from cuts through those segments;
* width: bounds for every n, and a numerical optimum for n = 2 (scan over
  cut directions with balanced offsets);
* inradius: the bound I(C)/n, and for n = 2 the fixed point
  2 rho = w~_2(C^rho).
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import List, Tuple

import numpy as np
from scipy.optimize import brentq, minimize_scalar

from .division import DivisionTree, parallel_division
from .errors import ConstructionFailed, InfeasibleN, ToleranceNotReached
from .geometry import (
    EPS_DIAM,
    ConvexPolygon,
    Direction,
    LineCut,
    diameter,
    inradius,
    width,
    width_value,
)
from .medial import medial_axis, rounded_body
from .minmax import BoundsReport, SolveReport, _check_n, balanced_cut


# -- diameter ---------------------------------------------------------------

@dataclass(frozen=True)
class DiameterSegmentSet:
    segments: Tuple[Tuple[int, int], ...]   # vertex index pairs
    boundary: Tuple[bool, ...]              # True where the segment is a side of C
    kind: str                               # "fan" or "triangle"
    apex: int = -1                          # shared vertex of a fan

    @property
    def a(self) -> int:
        return sum(not b for b in self.boundary)

    @property
    def b(self) -> int:
        return sum(self.boundary)

    @property
    def delta(self) -> int:
        return 1 if self.kind == "triangle" else 0

    @property
    def capacity(self) -> int:
        return 2 * self.a + self.b - self.delta


def maxmin_diameter_value(body: ConvexPolygon) -> float:
    """The Max-min diameter equals D(C) for every n."""
    return diameter(body)[0]


def enumerate_diameter_segment_sets(body: ConvexPolygon) -> List[DiameterSegmentSet]:
    """Maximal families of diameter segments with pairwise disjoint interiors.

    Two diameter segments always meet; their interiors are disjoint only if
    they share an endpoint.  So a family is either a fan around one vertex
    or the three sides of an equilateral triangle.
    """
    k = len(body)
    D, pairs = diameter(body)
    v = body.vertices

    def on_boundary(i, j):
        return (j - i) % k in (1, k - 1)

    found = {}
    for apex in range(k):
        segs = tuple(p for p in pairs if apex in p)
        if segs:
            key = frozenset(segs)
            if key not in found or found[key].kind != "fan":
                found[key] = DiameterSegmentSet(segs, tuple(on_boundary(*p) for p in segs), "fan", apex)
    ends = sorted({i for p in pairs for i in p})
    pair_set = set(pairs)
    for i, j, m in itertools.combinations(ends, 3):
        tri = ((i, j), (j, m), (i, m))
        if all(p in pair_set for p in tri):
            side = [math.dist(v[p[0]], v[p[1]]) for p in tri]
            if max(side) - min(side) <= EPS_DIAM * D:
                found[frozenset(tri)] = DiameterSegmentSet(tri, tuple(on_boundary(*p) for p in tri), "triangle")
    keys = list(found)
    maximal = [s for s in keys if not any(s < t for t in keys)]
    out = [found[s] for s in maximal]
    out.sort(key=lambda s: (-s.capacity, s.kind, s.segments))
    return out


def maxmin_diameter_feasible(body: ConvexPolygon, n: int):
    """(feasible, maxN, best set): an optimal n-division exists iff n <= maxN."""
    _check_n(n)
    sets = enumerate_diameter_segment_sets(body)
    best = sets[0]
    return n <= best.capacity, best.capacity, best


def _fan_division(body: ConvexPolygon, fan: DiameterSegmentSet, n: int) -> DivisionTree:
    k = len(body)
    v = body.vertices
    apex = fan.apex
    p = v[apex]
    e0 = v[(apex + 1) % k] - p
    base = math.atan2(e0[1], e0[0])

    def ang(i):
        d = v[i] - p
        return (math.atan2(d[1], d[0]) - base) % (2 * math.pi)

    others = [i if j == apex else j for i, j in fan.segments]
    phis = sorted({ang(i) for i in others})
    interior_phi = sorted(ang(o) for o, bd in zip(others, fan.boundary) if not bd)
    bisectors = [0.5 * (a + b) for a, b in zip(phis, phis[1:])]
    # Lines along interior segments first, bisectors only when still short.
    chosen = (interior_phi + bisectors)[: n - 1]
    chosen.sort()
    tree = DivisionTree.leaf(body)
    path = ""
    for phi in chosen:
        cut = LineCut.through(p, (math.cos(base + phi), math.sin(base + phi)))
        tree = tree.split(path, cut)
        path += "L"  # the part counterclockwise from the ray is the left child
    return tree


def _triangle_division(body: ConvexPolygon, tri: DiameterSegmentSet, n: int) -> DivisionTree:
    v = body.vertices
    idx = sorted({i for s in tri.segments for i in s})
    centroid = v[idx].mean(axis=0)
    tree = DivisionTree.leaf(body)
    interior = [s for s, bd in zip(tri.segments, tri.boundary) if not bd]
    cuts = []
    for i, j in interior:
        cuts.append(LineCut.through(v[i], v[j] - v[i]))
    if n - 1 > len(cuts):
        # A median of the equilateral triangle splits it into two halves,
        # each keeping one full side.
        i, j, m = idx
        mid = 0.5 * (v[j] + v[m])
        cuts.append(LineCut.through(v[i], mid - v[i]))
    for cut in cuts[: n - 1]:
        tree = tree.split_at_point(centroid, cut)
    return tree


def maxmin_diameter_division(body: ConvexPolygon, n: int, rtol: float = 1e-7) -> DivisionTree:
    """An n-division whose pieces all have diameter D(C)."""
    ok, max_n, best = maxmin_diameter_feasible(body, n)
    if not ok:
        raise InfeasibleN(f"no optimal {n}-division exists (maxN = {max_n})", max_n=max_n)
    if best.kind == "fan":
        tree = _fan_division(body, best, n)
    else:
        tree = _triangle_division(body, best, n)
    D = diameter(body)[0]
    vals = tree.values("diameter")
    if len(vals) != n or min(vals) < D * (1 - rtol):
        raise ConstructionFailed(f"pieces have diameters {vals}, expected {n} copies of {D}")
    return tree


def maxmin_diameter_solve(body: ConvexPolygon, n: int) -> SolveReport:
    ok, max_n, best = maxmin_diameter_feasible(body, n)
    D = diameter(body)[0]
    feas = {"feasible": ok, "a": best.a, "b": best.b, "delta": best.delta, "maxN": max_n, "type": best.kind}
    if not ok:
        return SolveReport("maxmin", "diameter", n, D, None, [], False, 1e-7, diagnostics={"feasibility": feas})
    tree = maxmin_diameter_division(body, n)
    vals = tree.values("diameter")
    return SolveReport("maxmin", "diameter", n, D, tree, vals, True, 1e-7, diagnostics={"feasibility": feas})


# -- width ------------------------------------------------------------------

def maxmin_width_bounds(body, n: int) -> BoundsReport:
    """w(C)/n <= w~_n(C) <= min(w(C), D(C)/2)."""
    _check_n(n)
    w = width_value(body)
    D = diameter(body)[0] if isinstance(body, ConvexPolygon) else body.diameter()
    return BoundsReport(w / n, min(w, D / 2), False)


def maxmin_width_witness(body, n: int, n_phi: int = 180):
    """Best of n equally spaced parallel strips over a scan of directions.

    Returns (min leaf width, division).  Any division's smallest leaf width
    is a lower bound for the Max-min width.
    """
    _check_n(n)
    best_val, best_tree = -math.inf, None
    for phi in np.arange(n_phi) * (math.pi / n_phi):
        u = Direction(float(phi))
        lo, hi = -body.support(u.opposite().vector), body.support(u.vector)
        step = (hi - lo) / n
        tree = parallel_division(body, [LineCut(u, lo + k * step) for k in range(1, n)])
        val = min(tree.values("width"))
        if val > best_val:
            best_val, best_tree = val, tree
    return best_val, best_tree


def _balanced_width(body, phi: float, tol: float):
    cut, a, b, fa, fb = balanced_cut(body, (math.cos(phi), math.sin(phi)), "width", tol, with_pieces=True)
    return min(fa, fb), cut, fa, fb


def maxmin_width_2_solve(body, tol: float = 1e-9, n_phi: int = 720, xatol: float = 1e-7) -> SolveReport:
    """Best balanced 2-division for the Max-min width.

    Every optimal 2-division is balanced, so for each direction only the
    balanced offset matters.  Directions are scanned on a grid over [0, pi)
    and the best bracket is refined with a bounded Brent search.
    """
    phis = np.arange(n_phi) * (math.pi / n_phi)
    vals = np.empty(n_phi)
    for i, phi in enumerate(phis):
        vals[i] = _balanced_width(body, float(phi), tol)[0]
    i = int(np.argmax(vals))
    step = math.pi / n_phi
    res = minimize_scalar(
        lambda a: -_balanced_width(body, a, tol)[0],
        bounds=(phis[i] - step, phis[i] + step),
        method="bounded",
        options={"xatol": xatol},
    )
    phi_best = float(phis[i])
    if res.success and -res.fun > vals[i]:
        phi_best = float(res.x)
    value, cut, fa, fb = _balanced_width(body, phi_best, tol)
    w = width_value(body)
    balanced = abs(fa - fb) <= tol * w
    if not balanced:
        raise ToleranceNotReached(f"unbalanced split: {fa} vs {fb}")
    tree = DivisionTree.split_region(body, cut)
    diag = {"phi": phi_best, "gridBest": float(vals[i]), "nPhi": n_phi}
    return SolveReport("maxmin", "width", 2, value, tree, [fa, fb], balanced, tol, diagnostics=diag)


# -- inradius ---------------------------------------------------------------

def maxmin_inradius_bound(body: ConvexPolygon, n: int) -> float:
    _check_n(n)
    return inradius(body)[0] / n


def maxmin_inradius_2_solve(body: ConvexPolygon, tol: float = 1e-6, n_phi: int = 720) -> SolveReport:
    """Max-min inradius for n = 2: the root of f(rho) = w~_2(C^rho) - 2 rho.

    f decreases in rho, is positive at 0 and is at most -I(C) at rho = I(C);
    its root also satisfies rho >= I(C)/2.
    """
    inr = medial_axis(body).max_clearance
    inner_tol = 0.1 * tol
    memo = {}

    def f(rho):
        rep = maxmin_width_2_solve(rounded_body(body, rho), tol=inner_tol, n_phi=n_phi)
        memo[rho] = rep
        return rep.value - 2 * rho

    lo = 0.5 * inr
    if f(lo) < 0:
        lo = 0.0
    hi = inr
    try:
        rho = brentq(f, lo, hi, xtol=0.05 * tol * inr, maxiter=100)
    except (RuntimeError, ValueError) as exc:
        raise ToleranceNotReached(str(exc)) from exc
    if rho not in memo:
        f(rho)
    rep = memo[rho]
    resid = rep.value - 2 * rho
    if abs(resid) > tol * inr:
        raise ToleranceNotReached(f"fixed-point residual {resid:.3g} exceeds {tol * inr:.3g}")
    if rho < 0.5 * inr * (1 - 1e-12):
        raise ToleranceNotReached(f"rho={rho} below I(C)/2")

    cut = rep.division.cut
    tree = DivisionTree.split_region(body, cut)
    radii = tree.values("inradius")
    diag = {
        "inradius": inr,
        "residual": resid,
        "phi": rep.diagnostics["phi"],
        "roundedSplit": rep.per_subset,
    }
    balanced = abs(radii[0] - radii[1]) <= tol * inr
    return SolveReport("maxmin", "inradius", 2, float(rho), tree, radii, balanced, tol, diagnostics=diag)
