"""Brute-force references for 2- and 3-divisions of convex polygons.

The oracle shares nothing with the solvers.  A piece of a division is
treated as the polygon's halfplanes plus the (at most two) cut halfplanes
that bound it, and its magnitudes are computed by plain enumeration over
many pieces at once:

* vertices: pairwise intersections of the bounding lines that satisfy all
  constraints;
* width: smallest breadth of those vertices over all constraint normals;
* diameter: largest pairwise vertex distance;
* inradius: largest feasible disk tangent to three constraint lines.

Divisions are sampled on a grid of (angle, offset fraction) parameters and
the best cells are refined by repeated zooming.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Optional, Tuple

import numpy as np

from .division import DivisionTree
from .errors import CutMissesInterior
from .geometry import ConvexPolygon, Direction, LineCut, unit

_CHUNK = 2048
# Cap on the elements of the (pieces x directions x points) work arrays.
_WORK = 4_000_000


@dataclass(frozen=True)
class SearchGrid:
    angle_samples: int = 360
    offset_samples: int = 200
    refine_rounds: int = 3
    seed: int = 0

    def __post_init__(self):
        if min(self.angle_samples, self.offset_samples, self.refine_rounds) < 1:
            raise ValueError("grid sizes must be positive")


DEFAULT_GRID = SearchGrid()
DEFAULT_GRID_3 = SearchGrid(angle_samples=24, offset_samples=8, refine_rounds=12)


@dataclass
class OracleResult:
    value: float
    cuts: Tuple[LineCut, ...]
    grid_error: float
    params: Tuple[float, ...] = ()
    evaluations: int = 0

    def __iter__(self):
        yield self.value
        yield self.cuts[0]

    def __float__(self):
        return float(self.value)

    def division(self, body) -> DivisionTree:
        """The sampled division; a second cut always splits the right piece."""
        tree = DivisionTree.leaf(body).split("", self.cuts[0])
        for cut in self.cuts[1:]:
            tree = tree.split("R", cut)
        return tree


def _solve3(r1, r2, r3, b1, b2, b3):
    """Solve the 3x3 systems with rows r1, r2, r3 (Cramer's rule, broadcast)."""
    c23 = np.cross(r2, r3)
    c31 = np.cross(r3, r1)
    c12 = np.cross(r1, r2)
    det = np.einsum("...i,...i->...", r1, c23)
    with np.errstate(divide="ignore", invalid="ignore"):
        x = (b1[..., None] * c23 + b2[..., None] * c31 + b3[..., None] * c12) / det[..., None]
    bad = np.abs(det) < 1e-12
    x[bad] = np.nan
    return x


def _meet(n1, c1, n2, c2):
    """Intersection of the lines <x, n1> = c1 and <x, n2> = c2 (broadcast)."""
    det = n1[..., 0] * n2[..., 1] - n1[..., 1] * n2[..., 0]
    with np.errstate(divide="ignore", invalid="ignore"):
        x = (c1 * n2[..., 1] - c2 * n1[..., 1]) / det
        y = (n1[..., 0] * c2 - n2[..., 0] * c1) / det
    p = np.stack([x, y], axis=-1)
    p[np.abs(det) < 1e-12] = np.nan
    return p


class PieceEvaluator:
    """Magnitudes of pieces C ∩ {<x, m_e> <= s_e, e < E}, many at a time."""

    def __init__(self, poly: ConvexPolygon, name: str):
        if not isinstance(poly, ConvexPolygon):
            raise TypeError("the brute-force oracle works on polygons only")
        v = np.asarray(poly.vertices, dtype=float)
        e = np.roll(v, -1, axis=0) - v
        nrm = np.column_stack([e[:, 1], -e[:, 0]])
        nrm /= np.hypot(nrm[:, 0], nrm[:, 1])[:, None]
        self.v = v
        self.n = nrm
        self.c = np.einsum("ij,ij->i", v, nrm)
        span = v.max(axis=0) - v.min(axis=0)
        self.scale = float(math.hypot(*span))
        self.tol = 1e-9 * self.scale
        self.name = name
        self.k = len(v)
        self.chunk = int(max(8, min(_CHUNK, _WORK // ((self.k + 2) * (2 * self.k + 1)))))
        if name == "inradius":
            if self.k > 32:
                raise ValueError("inradius oracle supports polygons with at most 32 sides")
            self._prepare_inradius()

    def _prepare_inradius(self):
        k = self.k
        rows = np.column_stack([self.n, np.ones(k)])
        tri = np.array(list(itertools.combinations(range(k), 3)))
        sol = _solve3(rows[tri[:, 0]], rows[tri[:, 1]], rows[tri[:, 2]],
                      self.c[tri[:, 0]], self.c[tri[:, 1]], self.c[tri[:, 2]])
        ok = np.all(np.isfinite(sol), axis=1)
        sol = sol[ok]
        slack = self.c[None, :] - (sol[:, :2] @ self.n.T + sol[:, 2:3])
        feas = np.all(slack >= -self.tol, axis=1) & (sol[:, 2] >= 0)
        self.t0 = sol[feas]
        # Disks tangent to sides i and j have centers p + r q.  Staying inside
        # C restricts r to an interval [lo, hi] for each pair.
        pairs = np.array(list(itertools.combinations(range(k), 2)))
        a = np.stack([self.n[pairs[:, 0]], self.n[pairs[:, 1]]], axis=1)
        det = np.linalg.det(a)
        keep = np.abs(det) > 1e-12
        pairs, a = pairs[keep], a[keep]
        self.par = np.array(list(itertools.combinations(range(k), 2)))[~keep]
        rhs = np.stack([self.c[pairs[:, 0]], self.c[pairs[:, 1]]], axis=1)
        pp = np.linalg.solve(a, rhs[..., None])[..., 0]
        qq = np.linalg.solve(a, -np.ones((len(pairs), 2, 1)))[..., 0]
        coef = qq @ self.n.T + 1.0
        room = self.c[None, :] - pp @ self.n.T + self.tol
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = room / coef
        hi = np.where(coef > 1e-12, ratio, np.inf).min(axis=1)
        lo = np.where(coef < -1e-12, ratio, 0.0).max(axis=1)
        flat_ok = np.all((np.abs(coef) > 1e-12) | (room >= 0), axis=1)
        ok = (lo <= hi) & flat_ok
        self.pp, self.qq, self.lo, self.hi = pp[ok], qq[ok], lo[ok], hi[ok]
        self.rows = rows

    # -- vertices ---------------------------------------------------------
    def vertices(self, m, s):
        """Candidate vertices (B, P, 2) and feasibility mask (B, P)."""
        b, ne = s.shape
        pts = [np.broadcast_to(self.v, (b, self.k, 2))]
        for e in range(ne):
            pts.append(_meet(m[:, e, None, :], s[:, e, None], self.n[None], self.c[None]))
        if ne == 2:
            pts.append(_meet(m[:, 0], s[:, 0], m[:, 1], s[:, 1])[:, None, :])
        p = np.concatenate(pts, axis=1)
        ok = np.all(np.isfinite(p), axis=2)
        pz = np.where(ok[..., None], p, 0.0)
        ok &= np.all(pz @ self.n.T <= self.c + self.tol, axis=2)
        ok &= np.all(np.einsum("bpi,bei->bpe", pz, m) <= s[:, None, :] + self.tol, axis=2)
        # Infeasible candidates are replaced by a feasible one, so extents
        # and distances need no masking later.
        anchor = pz[np.arange(b), np.argmax(ok, axis=1)]
        return np.where(ok[..., None], pz, anchor[:, None, :]), ok

    def _width(self, p, m):
        proj = np.concatenate([p @ self.n.T, np.einsum("bpi,bei->bpe", p, m)], axis=2)
        return (proj.max(axis=1) - proj.min(axis=1)).min(axis=1)

    def _diameter(self, p):
        sq = np.einsum("bpi,bpi->bp", p, p)
        d2 = sq[:, :, None] + sq[:, None, :] - 2.0 * (p @ p.transpose(0, 2, 1))
        return np.sqrt(np.maximum(d2.max(axis=(1, 2)), 0.0))

    def _inradius(self, m, s):
        b, ne = s.shape
        best = np.zeros(b)
        # Disks tangent to three sides of C, still inside the extra halfplanes.
        if len(self.t0):
            x, r = self.t0[:, :2], self.t0[:, 2]
            fit = np.all(np.einsum("ti,bei->bte", x, m) + r[None, :, None] <= s[:, None, :] + self.tol, axis=2)
            best = np.maximum(best, np.where(fit, r[None, :], 0.0).max(axis=1))
        # Disks tangent to two sides of C and to one cut line.
        for e in range(ne):
            me, se = m[:, e], s[:, e]
            den = me @ self.qq.T + 1.0
            with np.errstate(divide="ignore", invalid="ignore"):
                r = (se[:, None] - me @ self.pp.T) / den
            good = np.isfinite(r) & (r >= self.lo) & (r <= self.hi) & (r >= 0)
            r = np.where(good, r, 0.0)
            for f in range(ne):
                if f != e:
                    x = self.pp[None] + r[..., None] * self.qq[None]
                    good &= np.einsum("bti,bi->bt", x, m[:, f]) + r <= s[:, f, None] + self.tol
            best = np.maximum(best, np.where(good, r, 0.0).max(axis=1, initial=0.0))
        ones = np.ones((b, 1))
        cands = []
        for e in range(ne):
            if len(self.par):
                row_e = np.concatenate([m[:, e], ones], axis=1)[:, None, :]
                i, j = self.par[:, 0], self.par[:, 1]
                cands.append(_solve3(self.rows[i][None], self.rows[j][None], row_e,
                                     self.c[i][None], self.c[j][None], s[:, e, None]))
        if ne == 2:
            row0 = np.concatenate([m[:, 0], ones], axis=1)[:, None, :]
            row1 = np.concatenate([m[:, 1], ones], axis=1)[:, None, :]
            cands.append(_solve3(self.rows[None], row0, row1, self.c[None], s[:, 0, None], s[:, 1, None]))
        if cands:
            sol = np.concatenate(cands, axis=1)
            good = np.all(np.isfinite(sol), axis=2)
            sol = np.where(good[..., None], sol, 0.0)
            x, r = sol[..., :2], sol[..., 2]
            good &= r >= 0
            good &= np.all(x @ self.n.T + r[..., None] <= self.c + self.tol, axis=2)
            good &= np.all(np.einsum("bti,bei->bte", x, m) + r[..., None] <= s[:, None, :] + self.tol, axis=2)
            best = np.maximum(best, np.where(good, r, 0.0).max(axis=1))
        return best

    def __call__(self, m, s):
        """Magnitude of each piece, NaN where the piece has empty interior."""
        out = np.empty(len(s))
        ch = self.chunk
        for a in range(0, len(s), ch):
            mm, ss = m[a:a + ch], s[a:a + ch]
            if self.name == "inradius":
                # A piece has interior exactly when it holds a disk.
                val = self._inradius(mm, ss)
                out[a:a + ch] = np.where(val > self.tol, val, np.nan)
                continue
            p, ok = self.vertices(mm, ss)
            w = self._width(p, mm)
            if self.name == "width":
                val = w
            else:
                val = self._diameter(p)
            out[a:a + ch] = np.where(w > self.tol, val, np.nan)
        return out

    def extent(self, m, s, u):
        """(low, high) of <x, u> over each piece."""
        lo = np.empty(len(s))
        hi = np.empty(len(s))
        ch = self.chunk
        for a in range(0, len(s), ch):
            p, ok = self.vertices(m[a:a + ch], s[a:a + ch])
            proj = np.einsum("bpi,bi->bp", p, u[a:a + ch])
            hi[a:a + ch] = proj.max(axis=1)
            lo[a:a + ch] = proj.min(axis=1)
        return lo, hi


def _units(theta):
    return np.stack([np.cos(theta), np.sin(theta)], axis=-1)


def _combine(vals, objective):
    """Worst piece per division; invalid divisions score as worst possible."""
    bad = np.any(np.isnan(vals), axis=0)
    if objective == "minMax":
        out = np.max(vals, axis=0)
        out[bad] = np.inf
        return out
    out = np.min(vals, axis=0)
    out[bad] = -np.inf
    return out


def _check_objective(objective):
    if objective not in ("minMax", "maxMin"):
        raise ValueError("objective must be 'minMax' or 'maxMin'")


class _TwoCut:
    """Score of 2-divisions parametrized by (theta, lambda)."""

    def __init__(self, ev: PieceEvaluator, objective: str):
        self.ev = ev
        self.obj = objective
        self.count = 0

    def cut(self, theta, lam):
        u = _units(theta)
        p = self.ev.v @ u.T  # (k, B)
        t = p.min(axis=0) + lam * (p.max(axis=0) - p.min(axis=0))
        return u, t

    def pieces(self, theta, lam):
        u, t = self.cut(theta, lam)
        self.count += len(t)
        return self.ev(u[:, None, :], t[:, None]), self.ev(-u[:, None, :], -t[:, None])

    def __call__(self, params):
        left, right = self.pieces(params[:, 0], params[:, 1])
        return _combine(np.stack([left, right]), self.obj)

    def balanced(self, theta, iters=80):
        """Offset fractions where both pieces have the same magnitude.

        The left piece grows and the right piece shrinks with the offset, so
        for a fixed angle both objectives are optimal at the balance point.
        The sign change of left - right is located by the Illinois variant
        of regula falsi, all angles at once.
        """
        def diff(lam):
            a, b = self.pieces(theta, lam)
            return np.nan_to_num(a) - np.nan_to_num(b)

        lo = np.zeros(len(theta))
        hi = np.ones(len(theta))
        f_lo, f_hi = diff(lo), diff(hi)
        side = np.zeros(len(theta))
        for _ in range(iters):
            with np.errstate(divide="ignore", invalid="ignore"):
                x = (lo * f_hi - hi * f_lo) / (f_hi - f_lo)
            bad = ~np.isfinite(x) | (x <= lo) | (x >= hi)
            x = np.where(bad, 0.5 * (lo + hi), x)
            fx = diff(x)
            up = fx < 0
            lo, f_lo = np.where(up, x, lo), np.where(up, fx, f_lo)
            hi, f_hi = np.where(up, hi, x), np.where(up, f_hi, fx)
            # Halve the stale endpoint value when the same side moves twice.
            f_hi = np.where(up & (side > 0), 0.5 * f_hi, f_hi)
            f_lo = np.where(~up & (side < 0), 0.5 * f_lo, f_lo)
            side = np.where(up, 1.0, -1.0)
            if np.all((hi - lo <= 1e-13) | (np.abs(fx) <= 1e-15 * self.ev.scale)):
                break
        return np.where(np.abs(f_lo) < np.abs(f_hi), lo, hi)

    def along_balance(self, theta):
        theta = np.atleast_1d(np.asarray(theta, dtype=float))
        lam = self.balanced(theta)
        return self(np.column_stack([theta, lam])), lam


class _ThreeCut:
    """Score of 3-divisions: first cut (theta1, lambda1) over [0, 2 pi) and the
    right-hand piece split by (theta2, lambda2)."""

    def __init__(self, ev: PieceEvaluator, objective: str):
        self.ev = ev
        self.obj = objective
        self.count = 0

    def cuts(self, params):
        th1, l1, th2, l2 = params.T
        u1 = _units(th1)
        p = self.ev.v @ u1.T
        t1 = p.min(axis=0) + l1 * (p.max(axis=0) - p.min(axis=0))
        u2 = _units(th2)
        m_r = -u1[:, None, :]
        s_r = -t1[:, None]
        lo, hi = self.ev.extent(m_r, s_r, u2)
        t2 = lo + l2 * (hi - lo)
        return u1, t1, u2, t2

    def __call__(self, params):
        u1, t1, u2, t2 = self.cuts(params)
        self.count += len(t1)
        left = self.ev(u1[:, None, :], t1[:, None])
        m_a = np.stack([-u1, u2], axis=1)
        s_a = np.stack([-t1, t2], axis=1)
        m_b = np.stack([-u1, -u2], axis=1)
        s_b = np.stack([-t1, -t2], axis=1)
        a = self.ev(m_a, s_a)
        b = self.ev(m_b, s_b)
        return _combine(np.stack([left, a, b]), self.obj)


def _product(*axes):
    """Cartesian product of 1-d arrays as rows, last axis varying fastest."""
    grids = np.meshgrid(*axes, indexing="ij")
    return np.stack([g.ravel() for g in grids], axis=1)


def _better(objective):
    return (lambda a, b: a < b) if objective == "minMax" else (lambda a, b: a > b)


def _zoom(score, objective, center, span, lower, upper, rounds, points, shrink):
    """Repeatedly sample a box around the incumbent and recenter on the best."""
    better = _better(objective)
    best_p = np.array(center, dtype=float)
    best_v = float(score(best_p[None, :])[0])
    history = [best_v]
    span = np.array(span, dtype=float)
    d = len(best_p)
    offs = np.linspace(-1.0, 1.0, points)
    mesh = _product(*([offs] * d))
    for _ in range(rounds):
        cand = best_p[None, :] + mesh * span[None, :]
        cand = np.clip(cand, lower, upper)
        vals = score(cand)
        i = int(np.argmin(vals) if objective == "minMax" else np.argmax(vals))
        if better(vals[i], best_v):
            best_v = float(vals[i])
            best_p = cand[i]
        history.append(best_v)
        span = span / shrink
    return best_p, best_v, history


def _seeds(vals, params, objective, count, spacing=None):
    """Best grid points, skipping any whose parameters all lie within
    ``spacing`` of an already chosen seed (angles compared modulo 2 pi)."""
    order = np.argsort(vals) if objective == "minMax" else np.argsort(-vals)
    order = [i for i in order if np.isfinite(vals[i])]
    if spacing is None:
        return [params[i] for i in order[:count]]
    chosen = []
    for i in order:
        p = params[i]
        near = False
        for q in chosen:
            d = np.abs(p - q)
            d[0] = min(d[0], 2 * math.pi - d[0])
            if np.all(d <= spacing):
                near = True
                break
        if not near:
            chosen.append(p)
            if len(chosen) == count:
                break
    return chosen


def _error_estimate(history, shrink):
    if len(history) < 2:
        return float("inf")
    last = abs(history[-1] - history[-2])
    return last / max(shrink - 1.0, 1.0) + 1e-15


def _golden_balance(score, sign, lo, hi, iters=48):
    """Golden-section search of the balanced score on each bracket [lo, hi],
    all brackets advanced together.  Returns (angles, values, offsets,
    spread of the last two probes)."""
    r = (math.sqrt(5.0) - 1.0) / 2.0
    lo, hi = np.array(lo, dtype=float), np.array(hi, dtype=float)
    x1, x2 = hi - r * (hi - lo), lo + r * (hi - lo)
    f1, f2 = sign * score.along_balance(x1)[0], sign * score.along_balance(x2)[0]
    for _ in range(iters):
        left = f1 <= f2
        hi = np.where(left, x2, hi)
        lo = np.where(left, lo, x1)
        nx = np.where(left, hi - r * (hi - lo), lo + r * (hi - lo))
        nf = sign * score.along_balance(nx)[0]
        x1, x2, f1, f2 = (np.where(left, nx, x2), np.where(left, x1, nx),
                          np.where(left, nf, f2), np.where(left, f1, nf))
    x = np.where(f1 <= f2, x1, x2)
    val, lam = score.along_balance(x)
    return x, val, lam, np.abs(f1 - f2)


def brute_2division(body: ConvexPolygon, magnitude: str, objective: str, grid: SearchGrid = DEFAULT_GRID,
                    seeds: int = 6) -> OracleResult:
    """Best sampled 2-division.

    A grid over (cut angle, offset fraction) is refined by zooming around
    the best cells.  A second pass pairs every grid angle with its balanced
    offset and refines the best angles by golden-section search.
    """
    _check_objective(objective)
    ev = PieceEvaluator(body, magnitude)
    score = _TwoCut(ev, objective)
    th = (np.arange(grid.angle_samples) + 0.5) * (math.pi / grid.angle_samples)
    la = (np.arange(grid.offset_samples) + 0.5) / grid.offset_samples
    params = _product(th, la)
    vals = score(params)
    step = np.array([math.pi / grid.angle_samples, 1.0 / grid.offset_samples])
    lower, upper = np.array([-np.inf, 1e-9]), np.array([np.inf, 1 - 1e-9])
    better = _better(objective)
    best = None
    for p0 in _seeds(vals, params, objective, seeds):
        p, v, hist = _zoom(score, objective, p0, step, lower, upper, grid.refine_rounds, 21, 10.0)
        if best is None or better(v, best[1]):
            best = (p, v, hist)
    p, v, hist = best
    err = _error_estimate(hist, 10.0)

    # The second pass catches optima on a sharp ridge between grid cells.
    sign = 1.0 if objective == "minMax" else -1.0
    g, lam = score.along_balance(th)
    order = np.argsort(sign * g)
    picked = []
    for i in order:
        if len(picked) == seeds:
            break
        if np.isfinite(g[i]) and all(min(abs(i - j), len(th) - abs(i - j)) > 1 for j in picked):
            picked.append(i)
    if picked:
        th_best, g_best, lam_best, spread = _golden_balance(score, sign, th[picked] - step[0], th[picked] + step[0])
        j = int(np.argmin(sign * g_best))
        if better(float(g_best[j]), v):
            p, v = np.array([th_best[j], lam_best[j]]), float(g_best[j])
            err = float(spread[j]) + 1e-15
    u, t = score.cut(p[:1], p[1:])
    cut = LineCut(Direction.from_vector(u[0]), float(t[0]))
    return OracleResult(v, (cut,), err, tuple(p), score.count)


def brute_3division(body: ConvexPolygon, magnitude: str, objective: str, grid: SearchGrid = DEFAULT_GRID_3,
                    seeds: int = 8) -> OracleResult:
    """Best sampled 3-division: a first cut, then a cut of one of its pieces.

    The coarse scan covers first-cut angles in [0, 2 pi) (which side gets
    split is encoded by the orientation), second-cut angles in [0, pi) and
    offset fractions on both levels; the best cells are refined jointly in
    all four parameters.
    """
    _check_objective(objective)
    ev = PieceEvaluator(body, magnitude)
    score = _ThreeCut(ev, objective)
    na, no = grid.angle_samples, grid.offset_samples
    th1 = (np.arange(na) + 0.5) * (2 * math.pi / na)
    th2 = (np.arange(max(na // 2, 1)) + 0.5) * (math.pi / max(na // 2, 1))
    la = (np.arange(no) + 0.5) / no
    params = _product(th1, la, th2, la)
    vals = np.concatenate([score(params[a:a + 8192]) for a in range(0, len(params), 8192)])
    step = np.array([2 * math.pi / na, 1.0 / no, math.pi / max(na // 2, 1), 1.0 / no])
    lower = np.array([-np.inf, 1e-9, -np.inf, 1e-9])
    upper = np.array([np.inf, 1 - 1e-9, np.inf, 1 - 1e-9])
    better = _better(objective)
    best = None
    for p0 in _seeds(vals, params, objective, seeds, spacing=2 * step):
        p, v, hist = _zoom(score, objective, p0, step, lower, upper, grid.refine_rounds, 5, 2.0)
        if best is None or better(v, best[1]):
            best = (p, v, hist)
    p, v, hist = best
    u1, t1, u2, t2 = score.cuts(p[None, :])
    cuts = (LineCut(Direction.from_vector(u1[0]), float(t1[0])), LineCut(Direction.from_vector(u2[0]), float(t2[0])))
    return OracleResult(v, cuts, _error_estimate(hist, 2.0), tuple(p), score.count)


def random_division(body, n: int, seed: int = 0, margin: float = 0.05, max_tries: int = 1000) -> DivisionTree:
    """n - 1 random successive cuts; every piece keeps a non-empty interior."""
    if n < 1:
        raise ValueError("n must be positive")
    rng = np.random.default_rng(seed)
    tree = DivisionTree.leaf(body)
    area0 = body.area
    for _ in range(n - 1):
        for _attempt in range(max_tries):
            paths = tree.leaf_paths()
            path = paths[int(rng.integers(len(paths)))]
            region = tree.node(path).region
            theta = float(rng.uniform(0.0, 2 * math.pi))
            u = unit(theta)
            hi = region.support(u)
            lo = -region.support(-u)
            t = lo + float(rng.uniform(margin, 1.0 - margin)) * (hi - lo)
            try:
                cand = tree.split(path, LineCut(Direction(theta), t))
            except CutMissesInterior:
                continue
            if min(cand.areas()) > 1e-9 * area0:
                tree = cand
                break
        else:
            raise RuntimeError("could not place a valid random cut")
    return tree
