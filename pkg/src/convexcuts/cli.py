"""Command-line interface.

    convexcuts solve --problem minmax --magnitude inradius --n 3 --input tri.json [--oracle] [--svg out.svg]
    convexcuts render tri.json report.json out.svg
    convexcuts corpus corpus/

Exit codes: 0 ok, 1 input error (or a failed corpus check), 2 the
combination only has bounds, 3 no optimal Max-min diameter division
exists for this n.
"""
from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path
from typing import List, Optional

from .documents import (
    CutRecord,
    ReportDocument,
    load_polygon,
    load_report,
    report_from_bounds,
    report_from_solve,
)
from .errors import GeometryError, SchemaError
from .geometry import inradius
from .maxmin import (
    maxmin_diameter_solve,
    maxmin_inradius_2_solve,
    maxmin_width_2_solve,
    maxmin_width_bounds,
    maxmin_width_witness,
)
from .minmax import BoundsReport, conway_solve, minmax_diameter_solve, minmax_width_solve
from .oracle import brute_2division, brute_3division
from .render import render_svg

EXIT_OK, EXIT_INPUT, EXIT_UNSUPPORTED, EXIT_INFEASIBLE = 0, 1, 2, 3
MAGNITUDE_CHOICES = ("diameter", "width", "inradius")


def solve(body, problem: str, mag: str, n: int, tol: Optional[float] = None, name: str = ""):
    """Run the solver for one problem.  Returns (exit code, ReportDocument, SolveReport or None)."""
    if n < 2:
        raise ValueError("n must be an integer >= 2")
    kw = {} if tol is None else {"tol": tol}
    if problem == "minmax":
        if mag == "width":
            rep = minmax_width_solve(body, n)
        elif mag == "inradius":
            rep = conway_solve(body, n, **({} if tol is None else {"rtol": tol}))
        else:
            # Bounds only; the grid witness of the upper bound is kept as cuts.
            rep = minmax_diameter_solve(body, n)
            doc = report_from_solve(rep, name)
            doc.status = "unsupported: bounds only"
            return EXIT_UNSUPPORTED, doc, rep
        return EXIT_OK, report_from_solve(rep, name), rep
    if mag == "diameter":
        rep = maxmin_diameter_solve(body, n)
        doc = report_from_solve(rep, name)
        return (EXIT_OK if doc.status == "ok" else EXIT_INFEASIBLE), doc, rep
    if n == 2:
        rep = maxmin_width_2_solve(body, **kw) if mag == "width" else maxmin_inradius_2_solve(body, **kw)
        return EXIT_OK, report_from_solve(rep, name), rep
    if mag == "inradius":
        inr = inradius(body)[0]
        return EXIT_UNSUPPORTED, report_from_bounds(problem, mag, n, BoundsReport(inr / n, inr), name), None
    # Width: the best strip division is reported as a witness for the lower bound.
    bounds = maxmin_width_bounds(body, n)
    val, tree = maxmin_width_witness(body, n)
    bounds.lower = max(bounds.lower, min(val, bounds.upper))
    bounds.witness = tree
    doc = report_from_bounds(problem, mag, n, bounds, name)
    doc.cuts = [CutRecord(p, c.normal.angle, float(c.offset)) for p, c in tree.cuts()]
    doc.perSubsetValues = [float(v) for v in tree.values("width")]
    return EXIT_UNSUPPORTED, doc, None


def oracle_block(body, doc: ReportDocument) -> dict:
    """Brute-force value for the same problem (n = 2 or 3) and its gap to the report."""
    if doc.n > 3:
        return {"error": "oracle covers n = 2 and n = 3 only"}
    objective = "minMax" if doc.problem == "minmax" else "maxMin"
    brute = brute_2division if doc.n == 2 else brute_3division
    try:
        res = brute(body, doc.magnitude, objective)
    except ValueError as exc:
        return {"error": str(exc)}
    out = {"value": float(res.value), "gridError": float(res.grid_error)}
    if doc.value is not None:
        out["delta"] = float(res.value - doc.value)
    return out


def _err(msg: str) -> None:
    print(f"convexcuts: {msg}", file=sys.stderr)


def cmd_solve(args) -> int:
    try:
        name, body = load_polygon(args.input)
        code, doc, rep = solve(body, args.problem, args.magnitude, args.n, args.tol, name)
    except (OSError, SchemaError, GeometryError, ValueError) as exc:
        _err(str(exc))
        return EXIT_INPUT
    if args.oracle:
        doc.oracle = oracle_block(body, doc)
    print(doc.dumps())
    if args.svg:
        tree = doc.replay(body)
        Path(args.svg).write_text(render_svg(body, tree, doc.perSubsetValues or None, _title(doc)))
    return code


def _title(doc: ReportDocument) -> str:
    val = "bounds only" if doc.value is None else f"{doc.value:.6g}"
    return f"{doc.name}: {doc.problem} {doc.magnitude}, n={doc.n}, value {val}"


def cmd_render(args) -> int:
    try:
        _, body = load_polygon(args.input)
        doc = load_report(args.report)
        tree = doc.replay(body)
    except (OSError, SchemaError, GeometryError, KeyError, ValueError) as exc:
        _err(str(exc))
        return EXIT_INPUT
    Path(args.svg).write_text(render_svg(body, tree, doc.perSubsetValues or None, _title(doc)))
    return EXIT_OK


# -- corpus -----------------------------------------------------------------

def _close(a, b, tol):
    return abs(a - b) <= tol


def corpus_row(name: str, body, oracle: bool = True) -> dict:
    """Solver suite on one polygon; ``failures`` lists broken invariants."""
    fails: List[str] = []
    row = {"name": name, "k": len(body)}

    code, doc, rep = solve(body, "minmax", "width", 3)
    row["minmax width n=3"] = doc.value
    if not all(_close(v, doc.value, 1e-9 * doc.value) for v in doc.replay(body).values("width")):
        fails.append("width replay")

    code, doc, rep = solve(body, "minmax", "inradius", 2)
    row["conway n=2"] = doc.value
    if not all(_close(v, doc.value, 1e-8 * doc.value) for v in doc.replay(body).values("inradius")):
        fails.append("conway replay")
    if oracle and len(body) <= 32:
        ob = oracle_block(body, doc)
        row["oracle delta"] = ob["delta"]
        if not -1e-9 <= ob["delta"] <= max(1e-4, ob["gridError"]):
            fails.append("conway vs oracle")
    else:
        row["oracle delta"] = None

    code, doc, rep = solve(body, "minmax", "diameter", 4)
    b = doc.bounds
    row["D_4 bounds"] = f"[{b['lower']:.6g}, {b['upper']:.6g}]"
    if not b["lower"] < b["upper"] or max(doc.perSubsetValues) > b["upper"] * (1 + 1e-9):
        fails.append("diameter bounds")

    code, doc, rep = solve(body, "maxmin", "diameter", 2)
    row["maxN"] = doc.feasibility["maxN"]

    code, doc, rep = solve(body, "maxmin", "width", 2)
    row["maxmin width n=2"] = doc.value
    lo_hi = maxmin_width_bounds(body, 2)
    if not (lo_hi.lower * (1 - 1e-9) <= doc.value <= lo_hi.upper * (1 + 1e-9)) or not doc.balanced:
        fails.append("maxmin width bounds")
    row["failures"] = fails
    return row


def _cell(v) -> str:
    if v is None:
        return "-"
    if isinstance(v, float):
        return f"{v:.3e}" if abs(v) < 1e-3 and v != 0 else f"{v:.6g}"
    return str(v)


def markdown_table(rows: List[dict]) -> str:
    cols = [c for c in rows[0] if c != "failures"] + ["status"]
    lines = ["| " + " | ".join(cols) + " |", "|" + "---|" * len(cols)]
    for r in rows:
        status = "ok" if not r["failures"] else "FAIL: " + ", ".join(r["failures"])
        lines.append("| " + " | ".join([_cell(r[c]) for c in cols[:-1]] + [status]) + " |")
    return "\n".join(lines)


def cmd_corpus(args) -> int:
    d = Path(args.dir)
    files = sorted(d.glob("*.json")) if d.is_dir() else []
    if not files:
        _err(f"no polygon documents in {d}")
        return EXIT_INPUT
    bodies, bad = [], []
    for f in files:
        try:
            bodies.append(load_polygon(f))
        except (SchemaError, GeometryError) as exc:
            bad.append(f"{f.name}: {exc}")
    if bad:
        for line in bad:
            _err(f"invalid polygon {line}")
        return EXIT_INPUT
    t0 = time.perf_counter()
    rows = [corpus_row(name or f.stem, body, oracle=not args.no_oracle) for f, (name, body) in zip(files, bodies)]
    print(markdown_table(rows))
    failed = [r["name"] for r in rows if r["failures"]]
    print(f"\n{len(rows) - len(failed)}/{len(rows)} polygons passed in {time.perf_counter() - t0:.1f} s")
    return EXIT_INPUT if failed else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="convexcuts", description="Optimal divisions of convex polygons by line cuts.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("solve", help="solve one problem and print a JSON report")
    s.add_argument("--problem", required=True, choices=("minmax", "maxmin"))
    s.add_argument("--magnitude", required=True, choices=MAGNITUDE_CHOICES)
    s.add_argument("--n", required=True, type=int)
    s.add_argument("--input", required=True, help="polygon document (JSON)")
    s.add_argument("--tol", type=float, default=None, help="solver tolerance (solver default if omitted)")
    s.add_argument("--svg", default=None, help="also draw the division to this file")
    s.add_argument("--oracle", action="store_true", help="compare with the brute-force search (n = 2, 3)")
    s.set_defaults(func=cmd_solve)

    r = sub.add_parser("render", help="draw a polygon and a report's division as SVG")
    r.add_argument("input")
    r.add_argument("report")
    r.add_argument("svg")
    r.set_defaults(func=cmd_render)

    c = sub.add_parser("corpus", help="run the solver suite on every polygon document in a directory")
    c.add_argument("dir")
    c.add_argument("--no-oracle", action="store_true", help="skip the brute-force comparison")
    c.set_defaults(func=cmd_corpus)
    return p


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
