"""Deterministic SVG drawings of a body and a division.

The view box is the bounding box of the body with a 5% margin.  Leaves are
shaded, each cut is drawn as the chord it makes in the region it splits
(in the order the cuts were applied) and leaf values are written at the
leaf centroids.  Output depends only on the inputs, so identical inputs
give byte-identical files.
"""
from __future__ import annotations

from typing import List, Optional, Sequence

import numpy as np

from .division import DivisionTree
from .geometry import ConvexPolygon, LineCut

_SHADES = ("#dbe9f6", "#f6e3cf", "#dff1dc", "#efdcef", "#f4f1cf", "#d9eeee")


def _fmt(x: float) -> str:
    s = f"{x:.6f}".rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


def chord(region, cut: LineCut) -> Optional[np.ndarray]:
    """Endpoints (2, 2) of the part of the cut line inside a polygon region."""
    v = region.vertices if isinstance(region, ConvexPolygon) else region.to_polygon().vertices
    s = cut.signed(v)
    w = np.roll(v, -1, axis=0)
    sw = np.roll(s, -1)
    pts = []
    for a, b, sa, sb in zip(v, w, s, sw):
        if sa == 0.0:
            pts.append(a)
        if (sa < 0 < sb) or (sb < 0 < sa):
            pts.append(a + (b - a) * (sa / (sa - sb)))
    if len(pts) < 2:
        return None
    pts = np.array(pts)
    t = pts @ cut.normal.perpendicular().vector
    return np.array([pts[np.argmin(t)], pts[np.argmax(t)]])


class _Frame:
    def __init__(self, body, margin=0.05, size=480.0):
        v = body.vertices if isinstance(body, ConvexPolygon) else body.to_polygon().vertices
        lo, hi = v.min(axis=0), v.max(axis=0)
        pad = margin * float(max(hi - lo))
        self.lo = lo - pad
        self.hi = hi + pad
        span = self.hi - self.lo
        self.unit = float(max(span)) / size
        self.span = span

    def xy(self, p):
        # SVG's y axis points down.
        return p[0], self.lo[1] + self.hi[1] - p[1]

    def points(self, pts) -> str:
        return " ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in (self.xy(p) for p in pts))

    def view_box(self) -> str:
        return f"{_fmt(self.lo[0])} {_fmt(self.lo[1])} {_fmt(self.span[0])} {_fmt(self.span[1])}"


def _escape(text: str) -> str:
    return text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")


def render_svg(body, tree: Optional[DivisionTree] = None, values: Optional[Sequence[float]] = None,
               title: str = "") -> str:
    """SVG 1.1 document for ``body`` and an optional division of it."""
    tree = tree if tree is not None else DivisionTree.leaf(body)
    fr = _Frame(body)
    stroke = _fmt(2 * fr.unit)
    font = _fmt(12 * fr.unit)
    out: List[str] = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" viewBox="{fr.view_box()}" '
        f'width="{_fmt(fr.span[0] / fr.unit)}" height="{_fmt(fr.span[1] / fr.unit)}">',
    ]
    if title:
        out.append(f"<title>{_escape(title)}</title>")
    out.append('<g id="leaves" stroke="none">')
    leaves = tree.regions()
    for i, region in enumerate(leaves):
        pts = region.vertices if isinstance(region, ConvexPolygon) else region.to_polygon().vertices
        out.append(f'<polygon points="{fr.points(pts)}" fill="{_SHADES[i % len(_SHADES)]}"/>')
    out.append("</g>")
    outline = body.vertices if isinstance(body, ConvexPolygon) else body.to_polygon().vertices
    out.append(f'<polygon id="body" points="{fr.points(outline)}" fill="none" stroke="#222" stroke-width="{stroke}"/>')
    out.append(f'<g id="cuts" stroke="#c0392b" stroke-width="{stroke}">')
    for k, (path, cut) in enumerate(tree.cuts()):
        seg = chord(tree.node(path).region, cut)
        if seg is None:
            continue
        (x1, y1), (x2, y2) = fr.xy(seg[0]), fr.xy(seg[1])
        out.append(f'<line data-order="{k}" data-path="{path or "root"}" x1="{_fmt(x1)}" y1="{_fmt(y1)}" '
                   f'x2="{_fmt(x2)}" y2="{_fmt(y2)}"/>')
    out.append("</g>")
    if values is not None:
        out.append(f'<g id="values" font-family="sans-serif" font-size="{font}" text-anchor="middle" fill="#111">')
        for region, val in zip(leaves, values):
            c = region.centroid if isinstance(region, ConvexPolygon) else region.to_polygon().centroid
            x, y = fr.xy(c)
            out.append(f'<text x="{_fmt(x)}" y="{_fmt(y)}">{float(val):.6g}</text>')
        out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"
