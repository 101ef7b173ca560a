"""Schwarz-Christoffel maps from the disc onto polygons.

The disc-to-polygon map is

    f(w) = A + C * int_0^w prod_k (1 - zeta/w_k)^(alpha_k - 1) dzeta

with prevertices ``w_k`` on the unit circle and interior angles
``alpha_k pi``.  The Riemann map of the polygon is its inverse, evaluated
by Newton's method.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

import numpy as np
from scipy.spatial import cKDTree
from scipy.special import roots_jacobi

from ..errors import InversionFailure, NonConvergence, OutsideDomain, ParameterNonConvergence
from ..numerics import damped_newton
from .domains import ConvexPolygon, Polygon
from .maps import ConformalMap

GL_NODES = 16
_GL_X, _GL_W = np.polynomial.legendre.leggauss(GL_NODES)


@functools.lru_cache(maxsize=64)
def _jacobi(beta: float, n: int = GL_NODES):
    return roots_jacobi(n, 0.0, beta)


@dataclass(frozen=True)
class SCParameters:
    prevertices: np.ndarray
    betas: np.ndarray
    A: complex
    C: complex
    residual: float


def _density(zeta: np.ndarray, w: np.ndarray, beta: np.ndarray) -> np.ndarray:
    """``prod_k (1 - zeta/w_k)^beta_k`` for an array ``zeta``."""
    z = zeta[..., None]
    return np.exp(np.sum(beta * np.log(1.0 - z / w), axis=-1))


def _graded_integral(start: np.ndarray, end: np.ndarray, w: np.ndarray,
                     beta: np.ndarray, ratio: float = 0.5) -> np.ndarray:
    """``int_start^end`` of the density along straight segments.

    Each panel is at most ``ratio`` times the distance from its start to
    the nearest prevertex, which keeps every singularity well outside the
    Bernstein ellipse of the Gauss-Legendre rule on that panel.
    """
    start = np.asarray(start, dtype=complex).ravel()
    end = np.asarray(end, dtype=complex).ravel()
    length = np.abs(end - start)
    direction = np.where(length > 0, (end - start) / np.where(length > 0, length, 1.0), 0.0)
    s = np.zeros(start.size)
    total = np.zeros(start.size, dtype=complex)
    active = length > 0
    for _ in range(100000):
        if not np.any(active):
            break
        idx = np.nonzero(active)[0]
        pos = start[idx] + s[idx] * direction[idx]
        dist = np.min(np.abs(pos[:, None] - w[None, :]), axis=1)
        step = np.minimum(length[idx] - s[idx], ratio * dist)
        if np.any(step <= 0):
            raise NonConvergence("integration path touches a prevertex")
        nodes = pos[:, None] + (0.5 * step)[:, None] * (1.0 + _GL_X)[None, :] * direction[idx, None]
        vals = _density(nodes, w, beta)
        total[idx] += 0.5 * step * direction[idx] * (vals @ _GL_W)
        s[idx] += step
        active[idx] = s[idx] < length[idx] * (1.0 - 1e-15)
    else:  # pragma: no cover
        raise NonConvergence("graded quadrature did not terminate")
    return total


def _prevertex_integrals(w: np.ndarray, beta: np.ndarray) -> np.ndarray:
    """``I_k = int_0^{w_k}`` of the density, singular at the endpoint."""
    n = w.size
    out = np.empty(n, dtype=complex)
    gaps = np.abs(w[:, None] - w[None, :]) + np.diag(np.full(n, np.inf))
    h = np.minimum(0.5, 0.5 * gaps.min(axis=1))
    mid = w * (1.0 - h)
    body = _graded_integral(np.zeros(n, dtype=complex), mid, w, beta)
    for k in range(n):
        x, wt = _jacobi(float(beta[k]))
        tau = 0.5 * h[k] * (1.0 + x)
        zeta = w[k] * (1.0 - tau)
        others = np.delete(np.arange(n), k)
        g = np.exp(np.sum(beta[others] * np.log(1.0 - zeta[:, None] / w[others]), axis=1))
        out[k] = body[k] + w[k] * (0.5 * h[k]) ** (beta[k] + 1.0) * np.sum(wt * g)
    return out


def _angles_from_params(y: np.ndarray) -> np.ndarray:
    e = np.exp(np.concatenate([y, [0.0]]) - max(0.0, float(np.max(y))))
    gaps = 2.0 * np.pi * e / e.sum()
    return np.concatenate([[0.0], np.cumsum(gaps[:-1])])


def solve_parameters(poly: Polygon, center: complex, tol: float = 1e-13,
                     maxiter: int = 80) -> SCParameters:
    """Prevertices with ``f(0) = center`` and the polygon's side-length ratios."""
    v = poly.vertices
    n = v.size
    beta = poly.interior_angles - 1.0
    L = poly.side_lengths
    diam = poly.diameter

    theta0 = np.unwrap(np.angle(v - center))
    theta0 = theta0 - theta0[0]
    if theta0[-1] < 0:
        theta0 = -theta0
    gaps0 = np.diff(np.concatenate([theta0, [2 * np.pi]]))
    gaps0 = np.clip(gaps0, 1e-3, None)
    y0 = np.log(gaps0[:-1] / gaps0[-1])

    def parts(y):
        w = np.exp(1j * _angles_from_params(y))
        I = _prevertex_integrals(w, beta)
        C = (v[1] - v[0]) / (I[1] - I[0])
        return w, I, C

    def residual(y):
        w, I, C = parts(y)
        side = np.abs(np.roll(I, -1) - I)
        r = np.log(side[1:n - 2] / side[0]) - np.log(L[1:n - 2] / L[0])
        c = (v[0] - C * I[0] - center) / diam
        return np.concatenate([r, [c.real, c.imag]])

    try:
        y, res = damped_newton(residual, y0, tol=tol, maxiter=maxiter, fd_step=1e-7)
    except NonConvergence as exc:
        raise ParameterNonConvergence(str(exc)) from exc
    w, I, C = parts(y)
    A = v[0] - C * I[0]
    # f(rot * w) has derivative |C| at 0 and prevertices rot * w_k
    rot = C / abs(C)
    return SCParameters(w * rot, beta, A, abs(C), res)


class SCMap(ConformalMap):
    """Riemann map of a polygon via the inverse of a Schwarz-Christoffel map."""

    def __init__(self, poly: Polygon, tol: float = 1e-13, *, center: complex | None = None):
        self.domain = poly
        if center is None:
            center = poly.center()[0]
        self.center = complex(center)
        self.params = solve_parameters(poly, self.center, tol)
        self.prevertices = self.params.prevertices
        self.betas = self.params.betas
        self.A, self.C = self.params.A, self.params.C
        self.diameter = poly.diameter
        verts = self._vertex_images()
        self.vertex_error = float(np.max(np.abs(verts - poly.vertices)))
        self.accuracy = max(self.vertex_error, 1e-14 * self.diameter)
        self._build_table()

    # -- disc -> polygon ---------------------------------------------------
    def _vertex_images(self) -> np.ndarray:
        return self.A + self.C * _prevertex_integrals(self.prevertices, self.betas)

    def sc(self, w):
        """The Schwarz-Christoffel map ``f`` (disc to polygon)."""
        w = np.asarray(w, dtype=complex)
        val = self.A + self.C * _graded_integral(np.zeros(w.size, dtype=complex), w.ravel(),
                                                 self.prevertices, self.betas)
        return val.reshape(w.shape) if w.ndim else complex(val[0])

    def sc_derivative(self, w):
        w = np.asarray(w, dtype=complex)
        return self.C * _density(w, self.prevertices, self.betas)

    inverse = sc

    def _build_table(self):
        t = np.linspace(0.0, 2 * np.pi, 512, endpoint=False)
        extra = [np.angle(self.prevertices)[:, None] + s * np.geomspace(1e-7, 0.3, 30)[None, :]
                 for s in (-1.0, 1.0)]
        ang = np.concatenate([t, *[e.ravel() for e in extra]])
        radii = np.concatenate([np.linspace(0.0, 0.9, 10), 1.0 - np.geomspace(0.1, 1e-7, 40)])
        wg = radii[:, None] * np.exp(1j * ang)[None, :]
        # integrate ring to ring along each ray and accumulate
        pieces = _graded_integral(wg[:-1].ravel(), wg[1:].ravel(), self.prevertices,
                                  self.betas).reshape(wg[1:].shape)
        zg = self.A + self.C * np.concatenate([np.zeros((1, ang.size)),
                                               np.cumsum(pieces, axis=0)]).ravel()
        wg = wg.ravel()
        self._table_w = wg
        self._tree = cKDTree(np.column_stack([zg.real, zg.imag]))

    # -- polygon -> disc ----------------------------------------------------
    def forward(self, z, *, check: bool = True):
        z_arr = np.atleast_1d(np.asarray(z, dtype=complex)).ravel()
        if check and not np.all(self.domain.contains(z_arr)):
            bad = z_arr[~self.domain.contains(z_arr)][0]
            raise OutsideDomain(f"{bad!r} is not inside the polygon")
        _, idx = self._tree.query(np.column_stack([z_arr.real, z_arr.imag]))
        w = self._table_w[idx].copy()
        fz = self.sc(w)
        res = np.abs(fz - z_arr)
        tol = 1e-13 * self.diameter
        done = res <= tol
        for _ in range(60):
            if np.all(done):
                break
            a = np.nonzero(~done)[0]
            step = (fz[a] - z_arr[a]) / self.sc_derivative(w[a])
            lam = np.ones(a.size)
            pending = np.ones(a.size, dtype=bool)
            for _ in range(40):
                trial = w[a] - lam * step
                inside = np.abs(trial) < 1.0
                ft = np.full(a.size, np.nan + 0j)
                if np.any(inside & pending):
                    sel = inside & pending
                    ft[sel] = self.sc(trial[sel])
                ok = pending & inside & (np.abs(ft - z_arr[a]) < res[a])
                upd = a[ok]
                w[upd], fz[upd] = trial[ok], ft[ok]
                res[upd] = np.abs(ft[ok] - z_arr[upd])
                pending &= ~ok
                lam = np.where(pending, 0.5 * lam, lam)
                if not np.any(pending):
                    break
            stalled = a[pending]
            done = res <= tol
            if stalled.size:
                # accept points whose step has fallen to rounding level
                small = np.abs(step[pending]) <= 4e-16 * np.maximum(1.0, np.abs(w[stalled]))
                near = res[stalled] <= 1e3 * tol
                done[stalled[small | near]] = True
                bad = stalled[~(small | near)]
                if bad.size:
                    raise InversionFailure(f"Newton inversion stalled with residual "
                                           f"{res[bad[0]]:.3g}", point=complex(z_arr[bad[0]]))
        if not np.all(done):
            i = int(np.nonzero(~done)[0][0])
            raise InversionFailure(f"Newton inversion did not converge (residual {res[i]:.3g})",
                                   point=complex(z_arr[i]))
        out = w.reshape(np.shape(z))
        return out if np.ndim(z) else complex(out)

    def derivative(self, z):
        w = np.asarray(self.forward(z), dtype=complex)
        d = 1.0 / self.sc_derivative(w)
        return d if np.ndim(d) else complex(d)

    def density(self, z):
        w = np.asarray(self.forward(z), dtype=complex)
        r = np.abs(w)
        return 1.0 / (np.abs(self.sc_derivative(w)) * (1.0 - r) * (1.0 + r))

    def side_length_ratios(self) -> np.ndarray:
        v = self._vertex_images()
        side = np.abs(np.roll(v, -1) - v)
        return side / self.domain.side_lengths * (self.domain.side_lengths[0] / side[0])


def sc_map(poly: Polygon, tol: float = 1e-13) -> SCMap:
    """Schwarz-Christoffel Riemann map normalized at the polygon's center."""
    return SCMap(poly, tol)


__all__ = ["SCMap", "SCParameters", "sc_map", "solve_parameters", "ConvexPolygon"]
