"""JSON documents for polygons and solver reports.

Both document kinds carry ``"schema": 1``.  Floats are written with
Python's shortest round-trip representation, so reading a document back
gives bit-identical numbers.

A cut is stored as ``{"path", "normalAngle", "offset"}``; cuts are listed in
the order they are applied (pre-order of the division tree), so replaying
them with :func:`convexcuts.division.replay` rebuilds the division.
"""
from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import List, Optional

from .division import DivisionTree, magnitude, replay
from .errors import SchemaError
from .geometry import ConvexPolygon, Direction, LineCut, validate_polygon

SCHEMA = 1
PROBLEMS = ("minmax", "maxmin")
STATUSES = ("ok", "unsupported: bounds only", "infeasible")


def _number(x, what) -> float:
    if isinstance(x, bool) or not isinstance(x, (int, float)):
        raise SchemaError(f"{what} must be a number, got {x!r}")
    x = float(x)
    if not math.isfinite(x):
        raise SchemaError(f"{what} must be finite")
    return x


def _check_schema(doc, kind):
    if not isinstance(doc, dict):
        raise SchemaError(f"{kind} document must be a JSON object")
    if doc.get("schema") != SCHEMA:
        raise SchemaError(f"{kind} document has unsupported schema {doc.get('schema')!r}")


# -- polygons ---------------------------------------------------------------

def polygon_document(name: str, poly: ConvexPolygon) -> dict:
    return {"schema": SCHEMA, "name": name, "vertices": [[float(x), float(y)] for x, y in poly.vertices]}


def parse_polygon(doc) -> tuple:
    """(name, ConvexPolygon) from a polygon document.

    Malformed documents raise SchemaError; well-formed but non-convex or
    degenerate vertex lists raise the matching GeometryError.
    """
    _check_schema(doc, "polygon")
    name = doc.get("name", "")
    if not isinstance(name, str):
        raise SchemaError("name must be a string")
    verts = doc.get("vertices")
    if not isinstance(verts, list):
        raise SchemaError("vertices must be a list of [x, y] pairs")
    pts = []
    for i, p in enumerate(verts):
        if not isinstance(p, list) or len(p) != 2:
            raise SchemaError(f"vertex {i} must be an [x, y] pair")
        pts.append((_number(p[0], f"vertex {i}"), _number(p[1], f"vertex {i}")))
    return name, validate_polygon(pts)


def load_polygon(path) -> tuple:
    try:
        doc = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: invalid JSON ({exc})") from exc
    return parse_polygon(doc)


def dump_polygon(name: str, poly: ConvexPolygon, path) -> None:
    Path(path).write_text(json.dumps(polygon_document(name, poly), indent=1) + "\n")


# -- reports ----------------------------------------------------------------

@dataclass
class CutRecord:
    path: str
    normalAngle: float
    offset: float

    def to_cut(self) -> LineCut:
        return LineCut(Direction(self.normalAngle), self.offset)


@dataclass
class ReportDocument:
    problem: str
    magnitude: str
    n: int
    value: Optional[float]
    cuts: List[CutRecord] = field(default_factory=list)
    perSubsetValues: List[float] = field(default_factory=list)
    balanced: bool = False
    tolerance: float = 0.0
    status: str = "ok"
    name: str = ""
    bounds: Optional[dict] = None        # lower, upper, lowerStrict, meshTuple
    feasibility: Optional[dict] = None   # Max-min diameter: feasible, a, b, delta, maxN, type
    oracle: Optional[dict] = None        # value, delta, gridError
    schema: int = SCHEMA

    def to_json(self) -> dict:
        out = {"schema": self.schema}
        for k, v in asdict(self).items():
            if k != "schema" and v is not None:
                out[k] = v
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=1, allow_nan=False)

    def cut_list(self):
        return [(c.path, c.to_cut()) for c in self.cuts]

    def replay(self, body) -> DivisionTree:
        return replay(body, self.cut_list())


def parse_report(doc) -> ReportDocument:
    _check_schema(doc, "report")
    try:
        problem, mag, n = doc["problem"], doc["magnitude"], doc["n"]
    except KeyError as exc:
        raise SchemaError(f"report lacks field {exc.args[0]!r}") from None
    if problem not in PROBLEMS:
        raise SchemaError(f"unknown problem {problem!r}")
    try:
        magnitude(mag)
    except ValueError as exc:
        raise SchemaError(str(exc)) from None
    if isinstance(n, bool) or not isinstance(n, int) or n < 2:
        raise SchemaError("n must be an integer >= 2")
    value = doc.get("value")
    if value is not None:
        value = _number(value, "value")
    cuts = []
    for i, c in enumerate(doc.get("cuts", [])):
        if not isinstance(c, dict) or not isinstance(c.get("path"), str) or set(c["path"]) - {"L", "R"}:
            raise SchemaError(f"cut {i} must have a path made of L and R")
        cuts.append(CutRecord(c["path"], _number(c.get("normalAngle"), f"cut {i} angle"),
                              _number(c.get("offset"), f"cut {i} offset")))
    status = doc.get("status", "ok")
    if status not in STATUSES:
        raise SchemaError(f"unknown status {status!r}")
    return ReportDocument(
        problem=problem,
        magnitude=mag,
        n=n,
        value=value,
        cuts=cuts,
        perSubsetValues=[_number(v, "perSubsetValues") for v in doc.get("perSubsetValues", [])],
        balanced=bool(doc.get("balanced", False)),
        tolerance=_number(doc.get("tolerance", 0.0), "tolerance"),
        status=status,
        name=str(doc.get("name", "")),
        bounds=doc.get("bounds"),
        feasibility=doc.get("feasibility"),
        oracle=doc.get("oracle"),
        schema=SCHEMA,
    )


def loads_report(text: str) -> ReportDocument:
    try:
        return parse_report(json.loads(text))
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON ({exc})") from exc


def load_report(path) -> ReportDocument:
    return loads_report(Path(path).read_text())


def _cut_records(tree: Optional[DivisionTree]) -> List[CutRecord]:
    if tree is None:
        return []
    return [CutRecord(p, c.normal.angle, float(c.offset)) for p, c in tree.cuts()]


def _bounds(b) -> Optional[dict]:
    if b is None:
        return None
    return {
        "lower": float(b.lower),
        "upper": float(b.upper),
        "lowerStrict": bool(b.lower_strict),
        "meshTuple": list(b.mesh_tuple) if b.mesh_tuple is not None else None,
    }


def report_from_solve(rep, name: str = "") -> ReportDocument:
    """ReportDocument for a SolveReport."""
    feas = rep.diagnostics.get("feasibility")
    status = "ok"
    if feas is not None:
        feas = {k: (v if isinstance(v, (bool, str)) else int(v)) for k, v in feas.items()}
        if not feas["feasible"]:
            status = "infeasible"
    return ReportDocument(
        problem=rep.problem,
        magnitude=rep.magnitude,
        n=int(rep.n),
        value=None if rep.value is None else float(rep.value),
        cuts=_cut_records(rep.division),
        perSubsetValues=[float(v) for v in rep.per_subset],
        balanced=bool(rep.balanced),
        tolerance=float(rep.tolerance),
        status=status,
        name=name,
        bounds=_bounds(rep.bounds),
        feasibility=feas,
    )


def report_from_bounds(problem: str, mag: str, n: int, bounds, name: str = "",
                       status: str = "unsupported: bounds only") -> ReportDocument:
    """ReportDocument carrying bounds only (no division)."""
    return ReportDocument(problem, mag, int(n), None, status=status, name=name, bounds=_bounds(bounds))


def replay_values(body, doc: ReportDocument) -> List[float]:
    """Magnitudes of the leaves obtained by replaying the report's cuts."""
    return doc.replay(body).values(doc.magnitude)
