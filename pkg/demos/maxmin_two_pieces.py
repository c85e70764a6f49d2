"""Largest possible smaller piece when cutting once, for width and inradius.

Every optimal 2-division is balanced, so only one offset per direction
matters.  For the inradius the answer is the fixed point 2 rho = w~_2(C^rho).
Run:  python3 demos/maxmin_two_pieces.py [output_dir]
"""
import math
import sys
from pathlib import Path

from convexcuts.geometry import ConvexPolygon, rectangle, regular_polygon
from convexcuts.maxmin import maxmin_inradius_2_solve, maxmin_width_2_solve, maxmin_width_bounds
from convexcuts.render import render_svg

out = Path(sys.argv[1] if len(sys.argv) > 1 else "demo_output")
out.mkdir(exist_ok=True)

bodies = {
    "square": rectangle(1.0, 1.0),
    "isosceles 4-5-5": ConvexPolygon([(-2, 0), (2, 0), (0, math.sqrt(21))]),
    "256-gon": regular_polygon(256),
}
print("Max-min width, n = 2")
for name, body in bodies.items():
    rep = maxmin_width_2_solve(body)
    b = maxmin_width_bounds(body, 2)
    cut = rep.division.cut
    print(f"  {name:16s} {rep.value:.8f}  bounds [{b.lower:.4f}, {b.upper:.4f}]  cut normal {math.degrees(cut.normal.angle):7.3f} deg")
    fname = name.split()[0] + "_width_2.svg"
    (out / fname).write_text(render_svg(body, rep.division, rep.per_subset, f"{name}: Max-min width"))

print("\nMax-min inradius, n = 2")
for name in ("square", "256-gon"):
    rep = maxmin_inradius_2_solve(bodies[name])
    inr = rep.diagnostics["inradius"]
    print(f"  {name:16s} {rep.value:.8f}  (I/2 = {inr / 2:.4f}, I = {inr:.4f})")
print(f"\nwrote SVGs to {out}/")
