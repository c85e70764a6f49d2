"""Optimal divisions of planar convex bodies by successive line cuts."""
