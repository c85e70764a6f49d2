"""Diameter: bounds for the min-Max problem, feasibility for the Max-min one.

The min-Max diameter has no closed form; a grid aligned with the bounding
rectangle gives an upper bound and D/n a strict lower bound.  The Max-min
diameter always equals D(C), but an optimal n-division exists only when
enough diameter segments fit with disjoint interiors.
Run:  python3 demos/diameter_divisions.py [output_dir]
"""
import math
import sys
from pathlib import Path

from convexcuts.errors import InfeasibleN
from convexcuts.geometry import ConvexPolygon, rectangle, regular_polygon
from convexcuts.maxmin import maxmin_diameter_division, maxmin_diameter_feasible
from convexcuts.minmax import minmax_diameter_solve
from convexcuts.render import render_svg

out = Path(sys.argv[1] if len(sys.argv) > 1 else "demo_output")
out.mkdir(exist_ok=True)

square = rectangle(1.0, 1.0)
rep = minmax_diameter_solve(square, 7)
b = rep.bounds
print(f"unit square, n = 7: {b.lower:.6f} < D_7 <= {b.upper:.6f} (sqrt(13)/6 = {math.sqrt(13) / 6:.6f})")
print(f"  grid {b.mesh_tuple} uses {len(rep.division)} pieces, largest diameter {max(rep.per_subset):.6f}")
(out / "square_diameter_7.svg").write_text(render_svg(square, rep.division, rep.per_subset, "unit square, grid 2 x 3"))

# Long thin rectangles: the two bounds close in.
for L in (10, 100, 1000):
    bl = minmax_diameter_solve(rectangle(1.0, L), 5).bounds
    print(f"1 x {L:<4d} n = 5: upper / lower = {bl.upper / bl.lower:.6f}")

print()
bodies = {
    "triangle": ConvexPolygon([(0, 0), (1, 0), (0.5, math.sqrt(3) / 2)]),
    "square": square,
    "pentagon": regular_polygon(5),
    "heptagon": regular_polygon(7),
}
for name, body in bodies.items():
    ok, max_n, best = maxmin_diameter_feasible(body, 2)
    print(f"{name:9s} {best.kind:8s} family: a={best.a} b={best.b} -> optimal divisions up to n = {max_n}")
try:
    maxmin_diameter_division(bodies["triangle"], 3)
except InfeasibleN as exc:
    print(f"triangle, n = 3: {exc}")

tree = maxmin_diameter_division(bodies["heptagon"], 4)
(out / "heptagon_fan_4.svg").write_text(render_svg(bodies["heptagon"], tree, tree.values("diameter"), "heptagon fan"))
print(f"\nwrote SVGs to {out}/")
