"""Divisions by successive line cuts.

A :class:`DivisionTree` node holds a region.  Internal nodes also hold the
cut that split it and the two children (left = ``<x, normal> <= offset``).
Trees are immutable; splitting returns a new tree.

Leaves are listed left-to-right (in-order) and cuts in pre-order.  A cut is
addressed by the path of the node it splits, written as a string of ``L``
and ``R`` from the root (the root itself is ``""``).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from .geometry import ConvexPolygon, LineCut, diameter_value, inradius_value, width_value

MAGNITUDES: Dict[str, Callable] = {
    "width": width_value,
    "diameter": diameter_value,
    "inradius": inradius_value,
}


def magnitude(name: str) -> Callable:
    try:
        return MAGNITUDES[name]
    except KeyError:
        raise ValueError(f"unknown magnitude {name!r}; expected one of {sorted(MAGNITUDES)}") from None


@dataclass(frozen=True)
class DivisionTree:
    region: object
    cut: Optional[LineCut] = None
    left: Optional["DivisionTree"] = None
    right: Optional["DivisionTree"] = None

    @property
    def is_leaf(self) -> bool:
        return self.cut is None

    @classmethod
    def leaf(cls, region) -> "DivisionTree":
        return cls(region)

    @classmethod
    def split_region(cls, region, cut: LineCut) -> "DivisionTree":
        a, b = region.clip(cut)
        return cls(region, cut, cls(a), cls(b))

    def leaves(self) -> List["DivisionTree"]:
        if self.is_leaf:
            return [self]
        return self.left.leaves() + self.right.leaves()

    def regions(self) -> list:
        return [lf.region for lf in self.leaves()]

    def __len__(self) -> int:
        """Number of leaves."""
        return 1 if self.is_leaf else len(self.left) + len(self.right)

    def cuts(self) -> List[Tuple[str, LineCut]]:
        out = []

        def walk(node, path):
            if node.is_leaf:
                return
            out.append((path, node.cut))
            walk(node.left, path + "L")
            walk(node.right, path + "R")

        walk(self, "")
        return out

    def leaf_paths(self) -> List[str]:
        out = []

        def walk(node, path):
            if node.is_leaf:
                out.append(path)
            else:
                walk(node.left, path + "L")
                walk(node.right, path + "R")

        walk(self, "")
        return out

    def node(self, path: str) -> "DivisionTree":
        cur = self
        for step in path:
            if cur.is_leaf:
                raise KeyError(f"path {path!r} runs past a leaf")
            cur = cur.left if step == "L" else cur.right
        return cur

    def split(self, path: str, cut: LineCut) -> "DivisionTree":
        """New tree with the leaf at ``path`` split by ``cut``."""
        if not path:
            if not self.is_leaf:
                raise ValueError("only leaves can be split")
            return DivisionTree.split_region(self.region, cut)
        if self.is_leaf:
            raise KeyError(f"path {path!r} runs past a leaf")
        if path[0] == "L":
            return DivisionTree(self.region, self.cut, self.left.split(path[1:], cut), self.right)
        return DivisionTree(self.region, self.cut, self.left, self.right.split(path[1:], cut))

    def path_of_point(self, point) -> str:
        """Path of the leaf whose region contains ``point`` (ties go left)."""
        path, cur = "", self
        while not cur.is_leaf:
            s = float(np.dot(point, cur.cut.normal.vector) - cur.cut.offset)
            if s <= 0:
                path, cur = path + "L", cur.left
            else:
                path, cur = path + "R", cur.right
        return path

    def split_at_point(self, point, cut: LineCut) -> "DivisionTree":
        return self.split(self.path_of_point(point), cut)

    def values(self, name: str) -> List[float]:
        f = magnitude(name)
        return [f(r) for r in self.regions()]

    def areas(self) -> List[float]:
        return [r.area for r in self.regions()]

    def iter_nodes(self) -> Iterator["DivisionTree"]:
        yield self
        if not self.is_leaf:
            yield from self.left.iter_nodes()
            yield from self.right.iter_nodes()


def replay(body, cuts: Sequence[Tuple[str, LineCut]]) -> DivisionTree:
    """Rebuild a tree from pre-ordered ``(path, cut)`` pairs."""
    tree = DivisionTree.leaf(body)
    for path, cut in cuts:
        tree = tree.split(path, cut)
    return tree


def parallel_division(body, cuts: Sequence[LineCut]) -> DivisionTree:
    """Successive parallel cuts sorted by offset, each splitting the right-most piece."""
    cuts = sorted(cuts, key=lambda c: c.offset)
    tree = DivisionTree.leaf(body)
    path = ""
    for c in cuts:
        tree = tree.split(path, c)
        path += "R"
    return tree


def is_polygon(body) -> bool:
    return isinstance(body, ConvexPolygon)
