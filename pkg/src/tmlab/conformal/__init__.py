"""Riemann maps of convex domains and the hyperbolic-density inequality.

For a convex domain the hyperbolic density ``|F'(z)| / (1 - |F(z)|^2)`` of
any Riemann map ``F`` onto the disc is at least ``1 / (2 d(z))`` with
``d`` the distance to the boundary.  :func:`geometric_inequality_margin`
returns the difference of the two sides.
"""

from __future__ import annotations

import numpy as np

from .domains import (ConvexPolygon, Domain, HalfPlane, Polygon, Strip, UnitDisc, l_shape,
                      load_polygon, random_convex_polygon, regular_polygon, unit_square)
from .maps import (ConformalMap, HalfPlaneMap, IdentityMap, NormalizedMap, StripMap,
                   SupportingHalfPlaneMap, catalog_map, cauchy_riemann_residual,
                   derivative_fd_error, normalized_map, supporting_halfplane_map)
from .sc import SCMap, sc_map


def boundary_distance(omega: Domain, z):
    """Distance from interior point(s) ``z`` to the boundary of ``omega``."""
    return omega.boundary_distance(z)


def geometric_inequality_margin(omega: Domain, F: ConformalMap, z0):
    """``|F'(z0)| / (1 - |F(z0)|^2) - 1 / (2 d(z0))``."""
    d = np.asarray(omega.boundary_distance(z0))
    m = np.asarray(F.density(z0)) - 0.5 / d
    return m if m.ndim else float(m)


def relative_margin(omega: Domain, F: ConformalMap, z0):
    """``2 d(z0) |F'(z0)| / (1 - |F(z0)|^2) - 1``, the margin in units of ``1/(2d)``."""
    d = np.asarray(omega.boundary_distance(z0))
    m = 2.0 * d * np.asarray(F.density(z0)) - 1.0
    return m if m.ndim else float(m)


__all__ = [
    "ConformalMap", "ConvexPolygon", "Domain", "HalfPlane", "HalfPlaneMap", "IdentityMap",
    "NormalizedMap", "Polygon", "SCMap", "Strip", "StripMap", "SupportingHalfPlaneMap",
    "UnitDisc", "boundary_distance", "catalog_map", "cauchy_riemann_residual",
    "derivative_fd_error", "geometric_inequality_margin", "l_shape", "load_polygon",
    "normalized_map", "random_convex_polygon", "regular_polygon", "relative_margin",
    "sc_map", "supporting_halfplane_map", "unit_square",
]
