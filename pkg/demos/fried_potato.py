"""Cutting a triangle into n pieces with the smallest possible largest inradius.

For a convex polygon the optimal value rho solves, for some side L,
w_L(C^rho) = 2 n rho, where C^rho is the union of all radius-rho disks in C.
For the equilateral triangle with inradius r this gives 3 r / (2 n + 1).
Run:  python3 demos/fried_potato.py [output_dir]
"""
import math
import sys
from pathlib import Path

from convexcuts.geometry import ConvexPolygon, inradius
from convexcuts.medial import relative_width_function
from convexcuts.minmax import conway_solve
from convexcuts.oracle import brute_2division, brute_3division
from convexcuts.render import render_svg

out = Path(sys.argv[1] if len(sys.argv) > 1 else "demo_output")
out.mkdir(exist_ok=True)

tri = ConvexPolygon([(0, 0), (1, 0), (0.5, math.sqrt(3) / 2)])
r = inradius(tri)[0]
print(f"inradius r = {r:.12f}")

# The relative width across side 0 falls linearly from the height to 2r.
fn = relative_width_function(tri, 0)
print(f"w_L(C^rho) on [0, r]: breakpoints {fn.breakpoints}, slopes {fn.slopes}")

print("\n n   solver          3r/(2n+1)")
for n in range(2, 6):
    rep = conway_solve(tri, n)
    print(f"{n:2d}   {rep.value:.12f}  {3 * r / (2 * n + 1):.12f}")

# The brute-force search over all 2- and 3-divisions cannot do better.
for n, brute in ((2, brute_2division), (3, brute_3division)):
    res = brute(tri, "inradius", "minMax")
    print(f"n={n}: brute force {res.value:.9f}, gap to solver {res.value - conway_solve(tri, n).value:.2e}")

rep = conway_solve(tri, 4)
path = out / "triangle_conway_4.svg"
path.write_text(render_svg(tri, rep.division, rep.per_subset, "equilateral triangle, n = 4"))
print(f"\nwrote {path}")
