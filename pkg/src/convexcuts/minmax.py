"""Solvers for the min-Max problems (minimize the largest piece).

* width: exact, ``w(C) / n`` with equally spaced cuts across a minimal slab;
* inradius (Conway's fried potato problem) for polygons: exact through the
  per-side equation ``w_L(C^rho) = 2 n rho``;
* diameter: bounds only, with a mesh division as witness of the upper bound.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import brentq

from .division import DivisionTree, magnitude, parallel_division
from .errors import CutMissesInterior, ToleranceNotReached, VerificationFailed
from .geometry import (
    ConvexPolygon,
    Direction,
    LineCut,
    OrthogonalWidths,
    bounding_rectangle,
    diameter,
    orthogonal_widths_2d,
    unit,
    width,
)
from .medial import (
    medial_axis,
    relative_width_function,
    relative_width_rounded,
    rounded_body,
    solve_side_equation,
)


@dataclass
class BoundsReport:
    lower: float
    upper: float
    lower_strict: bool = False
    witness: Optional[DivisionTree] = None
    mesh_tuple: Optional[Tuple[int, ...]] = None

    def __post_init__(self):
        if self.lower > self.upper:
            raise ValueError("lower bound exceeds upper bound")


@dataclass
class SolveReport:
    problem: str          # "minmax" or "maxmin"
    magnitude: str        # "diameter", "width" or "inradius"
    n: int
    value: Optional[float]
    division: Optional[DivisionTree] = None
    per_subset: list = field(default_factory=list)
    balanced: bool = False
    tolerance: float = 0.0
    bounds: Optional[BoundsReport] = None
    diagnostics: dict = field(default_factory=dict)

    @property
    def spread(self) -> float:
        """max - min of the per-subset values."""
        return max(self.per_subset) - min(self.per_subset) if self.per_subset else 0.0


def _check_n(n: int):
    if int(n) != n or n < 2:
        raise ValueError("n must be an integer >= 2")


def minmax_width_solve(body: ConvexPolygon, n: int) -> SolveReport:
    """Optimal width n-division: n - 1 equally spaced cuts inside a minimal slab."""
    _check_n(n)
    w, slab, _ = width(body)
    step = w / n
    cuts = [LineCut(slab.normal, slab.low + k * step) for k in range(1, n)]
    tree = parallel_division(body, cuts)
    leaf_w = tree.values("width")
    balanced = max(abs(x - step) for x in leaf_w) <= 1e-9 * step
    if not balanced:
        raise VerificationFailed(f"leaf widths {leaf_w} differ from w/n = {step}")
    return SolveReport("minmax", "width", n, step, tree, leaf_w, True, 1e-9)


def side_roots(body: ConvexPolygon, n: int):
    """rho_L for every side L (None where the side equation has no root)."""
    return [solve_side_equation(body, L, n, relative_width_function(body, L)) for L in range(len(body))]


def conway_solve(body: ConvexPolygon, n: int, rtol: float = 1e-8) -> SolveReport:
    """Optimal inradius n-division of a convex polygon.

    The optimum is the smallest per-side root rho_L; the division cuts the
    slab of C^rho along that side into n strips of width 2 rho.
    """
    _check_n(n)
    roots = side_roots(body, n)
    finite = [(r, L) for L, r in enumerate(roots) if r is not None]
    if not finite:
        raise VerificationFailed("no side equation has a root")
    rho, side = min(finite)  # ties resolve to the lowest index
    w_c = width(body)[0]

    rounded = rounded_body(body, rho)
    w_round = rounded.width()[0]
    w_side = relative_width_rounded(body, side, rho)
    resid = max(abs(w_round - 2 * n * rho), abs(w_side - 2 * n * rho))
    if resid > rtol * w_c:
        raise VerificationFailed(f"w(C^rho)={w_round}, w_L={w_side}, 2n rho={2 * n * rho}")

    u = Direction.from_vector(body.normals[side])
    low = -rounded.support(u.opposite().vector)
    cuts = [LineCut(u, low + 2 * k * rho) for k in range(1, n)]
    tree = parallel_division(body, cuts)
    radii = tree.values("inradius")

    inr = medial_axis(body).max_clearance
    if rho < inr / n * (1 - 1e-12):
        raise VerificationFailed(f"rho={rho} below I(C)/n={inr / n}")
    balanced = max(abs(r - rho) for r in radii) <= rtol * rho
    if not balanced:
        raise VerificationFailed(f"leaf inradii {radii} differ from rho={rho}")
    diag = {"side": side, "sideRoots": roots, "residual": resid, "inradius": inr}
    return SolveReport("minmax", "inradius", n, rho, tree, radii, True, rtol, diagnostics=diag)


def mesh_tuples(d: int, n: int):
    """All nondecreasing d-tuples of positive integers with product <= n."""

    def rec(prefix, lo, budget, left):
        if left == 0:
            yield tuple(prefix)
            return
        a = lo
        while a ** left <= budget:
            yield from rec(prefix + [a], a, budget // a, left - 1)
            a += 1

    yield from rec([], 1, n, d)


def minmax_diameter_bounds(widths: OrthogonalWidths | Sequence[float], D: float, n: int) -> BoundsReport:
    """D/n < D_n(C) <= min(D, min over meshes of sqrt(sum w_i^2 / a_i^2))."""
    _check_n(n)
    w = widths if isinstance(widths, OrthogonalWidths) else OrthogonalWidths(tuple(widths))
    if D < w[len(w) - 1] * (1 - 1e-12):
        raise ValueError("diameter cannot be smaller than the largest orthogonal width")
    w2 = np.square(np.array(w.w))
    best, arg = math.inf, None
    for tup in mesh_tuples(len(w), n):
        val = math.sqrt(float(np.sum(w2 / np.square(tup))))
        if val < best:
            best, arg = val, tup
    return BoundsReport(D / n, min(D, best), True, None, arg)


def _chain(tree: DivisionTree, path: str, cuts):
    """Split the leaf at ``path`` by successive cuts, each applied to the last
    right piece.  Cuts missing that piece are skipped.  Returns the tree and the
    paths of the resulting pieces."""
    paths = []
    for cut in cuts:
        try:
            tree = tree.split(path, cut)
        except CutMissesInterior:
            continue
        paths.append(path + "L")
        path += "R"
    paths.append(path)
    return tree, paths


def minmax_diameter_mesh_division(body, mesh: Tuple[int, int]) -> DivisionTree:
    """Cut the bounding rectangle H_C into an a1 x a2 grid, restricted to C."""
    a1, a2 = (int(x) for x in mesh)
    if a1 < 1 or a2 < 1:
        raise ValueError("mesh entries must be positive")
    if isinstance(body, ConvexPolygon):
        s1, s2 = bounding_rectangle(body)
    else:
        from .geometry import Slab

        _, s1 = body.width()
        u2 = s1.normal.perpendicular()
        s2 = Slab(u2, -body.support(u2.opposite()), body.support(u2))
    cuts1 = [LineCut(s1.normal, s1.low + k * s1.width / a1) for k in range(1, a1)]
    cuts2 = [LineCut(s2.normal, s2.low + k * s2.width / a2) for k in range(1, a2)]
    tree, strips = _chain(DivisionTree.leaf(body), "", cuts1)
    # Splitting one leaf leaves the paths of all other leaves unchanged.
    for path in strips:
        tree, _ = _chain(tree, path, cuts2)
    return tree


def minmax_diameter_solve(body: ConvexPolygon, n: int) -> SolveReport:
    """Bounds for the min-Max diameter with the mesh witness attached."""
    D = diameter(body)[0]
    rep = minmax_diameter_bounds(orthogonal_widths_2d(body), D, n)
    if rep.mesh_tuple is not None and rep.upper < D:
        rep.witness = minmax_diameter_mesh_division(body, rep.mesh_tuple)
    else:
        rep.witness = DivisionTree.leaf(body)
    leaves = rep.witness.values("diameter")
    return SolveReport("minmax", "diameter", n, None, rep.witness, leaves, False, 1e-9, bounds=rep)


def balanced_cut(body, direction, name: str, tol: float = 1e-10, maxiter: int = 200, with_pieces: bool = False):
    """Line with normal ``direction`` splitting ``body`` into two pieces of
    (nearly) equal magnitude.

    The magnitude of the left piece grows and that of the right piece
    shrinks as the line moves along the normal, so the difference has a
    single sign change; it is located with Brent's method.
    """
    f_mag = magnitude(name)
    u = Direction.from_vector(unit(direction))
    hi = body.support(u.vector)
    lo = -body.support(u.opposite().vector)
    if not hi > lo:
        raise ValueError("body has no extent along the direction")
    total = f_mag(body)
    cache = {}

    def diff(t):
        try:
            a, b = body.clip(LineCut(u, t))
        except CutMissesInterior:
            return -total if t - lo < hi - t else total
        fa, fb = f_mag(a), f_mag(b)
        cache[t] = (a, b, fa, fb)
        return fa - fb

    span = hi - lo
    try:
        t = brentq(diff, lo, hi, xtol=max(1e-15 * span, 1e-2 * tol * total), rtol=4 * np.finfo(float).eps, maxiter=maxiter)
    except RuntimeError as exc:
        raise ToleranceNotReached(str(exc)) from exc
    if t not in cache:
        diff(t)
    if t not in cache:
        raise ToleranceNotReached("balanced offset sits on the boundary")
    a, b, fa, fb = cache[t]
    if abs(fa - fb) > tol * total:
        raise ToleranceNotReached(f"|F(left) - F(right)| = {abs(fa - fb):.3g} exceeds {tol * total:.3g}")
    cut = LineCut(u, float(t))
    if with_pieces:
        return cut, a, b, fa, fb
    return cut
