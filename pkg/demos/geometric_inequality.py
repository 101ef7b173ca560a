"""Hyperbolic density of Riemann maps against half the inverse boundary distance.

For convex domains the margin is nonnegative everywhere; the L-shaped
hexagon shows points where it turns negative.
"""

import numpy as np

from tmlab.conformal import (l_shape, random_convex_polygon, regular_polygon, relative_margin,
                             sc_map, unit_square)

for poly in [unit_square(), regular_polygon(6), random_convex_polygon(7), l_shape()]:
    F = sc_map(poly)
    z = poly.sample_interior(2000, 1e-3 * poly.diameter, seed=0)
    rel = relative_margin(poly, F, z)
    worst = z[np.argmin(rel)]
    print(f"{poly.name:22s} vertices={poly.n:2d} min relative margin={rel.min():+.3e} "
          f"at {worst.real:+.3f}{worst.imag:+.3f}i  vertex error={F.vertex_error:.1e}")
