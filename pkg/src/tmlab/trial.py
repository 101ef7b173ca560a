"""Compactly supported trial functions and a polar quadrature for them.

A trial function knows its value and Euclidean gradient (as the complex
number ``u_x + i u_y``), the curves across which it is not smooth, and
the curves on which it crosses a given level.  :func:`integrate_trial`
integrates ``g(z, u, grad u)`` in polar coordinates about the trial's
center, placing radial knots on every such curve so that each radial
panel sees a smooth integrand.

Two polar frames are available.  The Euclidean frame uses
``z = o + s e^{i theta}`` and ``dx dy = s ds dtheta``.  The geodesic frame
uses ``z = psi_c(tanh(s/2) e^{i theta})`` and ``dV = sinh(s) ds dtheta``,
so integrands are densities against the hyperbolic area.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Callable, Optional, Sequence

import numpy as np

from .errors import DegenerateInput, NonConvergence, OutsideDomain
from .hyperbolic import cayley, cayley_inverse, hyp_distance, hyperbolic_circle, psi
from .numerics import QuadratureResult, RadialProfile

GL_NODES = 12
_GL_X, _GL_W = np.polynomial.legendre.leggauss(GL_NODES)
_SECTOR_X, _SECTOR_W = np.polynomial.legendre.leggauss(16)


# ---------------------------------------------------------------------------
# curves
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Circle:
    """The circle ``|z - center| = radius``."""

    center: complex
    radius: float

    def ray_hits(self, origin: complex, direction: np.ndarray) -> np.ndarray:
        """Positive ``s`` with ``|origin + s e - center| = radius``.

        Returns an array of shape ``direction.shape + (2,)`` padded with NaN.
        """
        d = complex(origin) - self.center
        b = (np.conj(direction) * d).real
        disc = b * b - (abs(d) ** 2 - self.radius ** 2)
        sq = np.sqrt(np.where(disc >= 0.0, disc, np.nan))
        hits = np.stack([-b - sq, -b + sq], axis=-1)
        return np.where(hits > 0.0, hits, np.nan)

    def image(self, fun: Callable) -> "Circle":
        """Image under a Moebius map, from the circumcircle of three image points."""
        pts = self.center + self.radius * np.exp(2j * np.pi * np.arange(3) / 3)
        a, b, c = (complex(x) for x in np.asarray(fun(pts)))
        w = (c - a) / (b - a)
        if abs(w.imag) < 1e-15 * abs(w):
            raise DegenerateInput("image of the circle is a line")
        center = (b - a) * (w - abs(w) ** 2) / (w - w.conjugate()) + a
        return Circle(complex(center), float(abs(a - center)))


@dataclass(frozen=True)
class GaugeCurve:
    """Level set ``{m(z) = level}`` of a polygon gauge ``m`` centered at ``origin``.

    ``m(origin + s e) = s max_k Re(conj(normals_k) e)``, so each ray from the
    origin meets the curve once.
    """

    origin: complex
    normals: np.ndarray
    level: float

    def ray_hits(self, origin: complex, direction: np.ndarray) -> np.ndarray:
        if abs(complex(origin) - self.origin) > 1e-14 * (1.0 + abs(self.origin)):
            raise ValueError("gauge curves are only resolved from their own origin")
        slope = np.max((np.conj(self.normals) * direction[..., None]).real, axis=-1)
        return (self.level / slope)[..., None]

    def image(self, fun: Callable) -> "GaugeCurve":
        raise DegenerateInput("gauge curves cannot be carried to another frame")


# ---------------------------------------------------------------------------
# radial profiles
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MoserProfile:
    """``q = height`` on ``[0, inner]``, ``height log(outer/x)/log(outer/inner)`` up to ``outer``."""

    inner: float
    outer: float
    height: float = 1.0

    def __post_init__(self):
        if not 0.0 < self.inner < self.outer:
            raise DegenerateInput("need 0 < inner < outer")

    @property
    def log_ratio(self) -> float:
        return math.log(self.outer / self.inner)

    @property
    def support(self) -> float:
        return self.outer

    @property
    def kinks(self) -> tuple[float, ...]:
        return (self.inner, self.outer)

    @property
    def sup(self) -> float:
        return abs(self.height)

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        with np.errstate(divide="ignore"):
            mid = self.height * np.log(self.outer / np.maximum(x, self.inner)) / self.log_ratio
        return np.where(x <= self.outer, mid, 0.0)

    def derivative(self, x):
        x = np.asarray(x, dtype=float)
        inside = (x > self.inner) & (x < self.outer)
        return np.where(inside, -self.height / (np.where(inside, x, 1.0) * self.log_ratio), 0.0)

    def level_radii(self, level: float) -> list[float]:
        if not 0.0 < level < abs(self.height):
            return []
        return [self.outer * (self.inner / self.outer) ** (level / abs(self.height))]


@dataclass(frozen=True)
class PowerProfile:
    """``q = height (1 - x/radius)^power`` on ``[0, radius]``."""

    radius: float
    power: float = 2.0
    height: float = 1.0

    def __post_init__(self):
        if self.radius <= 0 or self.power < 1:
            raise DegenerateInput("need radius > 0 and power >= 1")

    @property
    def support(self) -> float:
        return self.radius

    @property
    def kinks(self) -> tuple[float, ...]:
        return (self.radius,)

    @property
    def sup(self) -> float:
        return abs(self.height)

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        return self.height * np.clip(1.0 - x / self.radius, 0.0, None) ** self.power

    def derivative(self, x):
        x = np.asarray(x, dtype=float)
        base = np.clip(1.0 - x / self.radius, 0.0, None)
        return -self.height * self.power / self.radius * base ** (self.power - 1)

    def level_radii(self, level: float) -> list[float]:
        if not 0.0 < level < abs(self.height):
            return []
        return [self.radius * (1.0 - (level / abs(self.height)) ** (1.0 / self.power))]


@dataclass(frozen=True)
class LinearProfile:
    """A compactly supported piecewise-linear profile wrapping :class:`RadialProfile`."""

    profile: RadialProfile

    def __post_init__(self):
        p = self.profile
        if p.tail != "zero" or p.values[-1] != 0.0:
            raise DegenerateInput("piecewise-linear trial profiles must end at zero")
        if p.grid[0] != 0.0:
            raise DegenerateInput("piecewise-linear trial profiles must start at 0")

    @property
    def support(self) -> float:
        return float(self.profile.grid[-1])

    @property
    def kinks(self) -> tuple[float, ...]:
        return tuple(float(g) for g in self.profile.grid[1:])

    @property
    def sup(self) -> float:
        return float(np.max(np.abs(self.profile.values)))

    def __call__(self, x):
        return self.profile(x)

    def derivative(self, x):
        return self.profile.slope(x)

    def level_radii(self, level: float) -> list[float]:
        g, v = self.profile.grid, np.abs(self.profile.values)
        out = []
        for k in range(g.size - 1):
            lo, hi = v[k] - level, v[k + 1] - level
            if lo * hi < 0:
                out.append(float(g[k] + (g[k + 1] - g[k]) * lo / (lo - hi)))
        return out


# ---------------------------------------------------------------------------
# trial functions
# ---------------------------------------------------------------------------

class TrialFunction:
    """Base class; see the module docstring for the interface."""

    kind = "trial"
    center: complex = 0j
    normalization: float = 1.0
    ambient = "disc"

    def value(self, z):
        raise NotImplementedError

    def grad(self, z):
        raise NotImplementedError

    def evaluate(self, z, offset=None):
        """Value and gradient; ``offset = z - center`` may be passed exactly."""
        return self.value(z), self.grad(z)

    @property
    def sup_abs(self) -> float:
        raise NotImplementedError

    @property
    def support_curve(self):
        raise NotImplementedError

    def kink_curves(self) -> list:
        return []

    def level_curves(self, level: float) -> list:
        return []

    @property
    def theta_breaks(self) -> np.ndarray:
        return np.zeros(0)

    def scaled(self, c: float) -> "TrialFunction":
        return replace(self, normalization=self.normalization * c)

    @property
    def is_zero(self) -> bool:
        return self.normalization == 0.0

    def parameters(self) -> dict:
        return {"kind": self.kind, "normalization": self.normalization}

    def __call__(self, z):
        return self.value(z)


@dataclass(frozen=True)
class RadialTrial(TrialFunction):
    """``u(z) = normalization * q(dist(z, center))``.

    ``metric`` is ``'euclidean'`` or ``'hyperbolic'`` (disc distance);
    ``ambient`` is ``'disc'``, ``'half-plane'`` or ``'plane'`` (for use in
    other domains, which check containment themselves).
    """

    profile: object
    center: complex = 0j
    metric: str = "euclidean"
    normalization: float = 1.0
    ambient: str = "disc"

    def __post_init__(self):
        object.__setattr__(self, "center", complex(self.center))
        if self.metric not in ("euclidean", "hyperbolic"):
            raise ValueError(f"unknown metric {self.metric!r}")
        if self.ambient not in ("disc", "half-plane", "plane"):
            raise ValueError(f"unknown ambient domain {self.ambient!r}")
        if self.metric == "hyperbolic" and self.ambient != "disc":
            raise ValueError("hyperbolic radial trials live on the disc")
        sc = self.support_curve
        if self.ambient == "disc" and abs(sc.center) + sc.radius >= 1.0:
            raise OutsideDomain("trial support is not strictly inside the disc")
        if self.ambient == "half-plane" and sc.center.imag - sc.radius <= 0.0:
            raise OutsideDomain("trial support is not strictly inside the half-plane")

    @property
    def kind(self) -> str:
        if isinstance(self.profile, MoserProfile):
            return "radial-moser"
        return "radial-bump"

    def _circle(self, radius: float) -> Circle:
        if self.metric == "euclidean":
            return Circle(self.center, radius)
        c, r = hyperbolic_circle(self.center, radius)
        return Circle(c, r)

    def distance(self, z):
        z = np.asarray(z, dtype=complex)
        if self.metric == "euclidean":
            return np.abs(z - self.center)
        return np.asarray(hyp_distance(z, self.center))

    def value(self, z):
        return self.normalization * np.asarray(self.profile(self.distance(z)))

    def evaluate(self, z, offset=None):
        if offset is None:
            return self.value(z), self.grad(z)
        z = np.asarray(z, dtype=complex)
        if self.metric == "euclidean":
            r = np.abs(offset)
            unit = np.where(r > 0, offset / np.where(r > 0, r, 1.0), 0.0)
            return (self.normalization * self.profile(r),
                    self.normalization * self.profile.derivative(r) * unit)
        c = self.center
        w = -offset / (1.0 - np.conj(c) * z)
        rho = 2.0 * np.arctanh(np.abs(w))
        return self.normalization * self.profile(rho), self._hyperbolic_grad(z, w)

    def grad(self, z):
        z = np.asarray(z, dtype=complex)
        if self.metric == "euclidean":
            d = z - self.center
            r = np.abs(d)
            unit = np.where(r > 0, d / np.where(r > 0, r, 1.0), 0.0)
            return self.normalization * self.profile.derivative(r) * unit
        return self._hyperbolic_grad(z, np.asarray(psi(self.center, z)))

    def _hyperbolic_grad(self, z, w):
        c = self.center
        t = np.abs(w)
        dpsi = (abs(c) ** 2 - 1.0) / (1.0 - np.conj(c) * z) ** 2
        unit = np.where(t > 0, np.conj(dpsi) * w / np.where(t > 0, t, 1.0), 0.0)
        rho = 2.0 * np.arctanh(t)
        return self.normalization * self.profile.derivative(rho) * 2.0 / (1.0 - t * t) * unit

    @property
    def sup_abs(self) -> float:
        return abs(self.normalization) * self.profile.sup

    @property
    def support_curve(self) -> Circle:
        return self._circle(self.profile.support)

    def kink_curves(self) -> list:
        return [self._circle(k) for k in self.profile.kinks if k > 0]

    def level_curves(self, level: float) -> list:
        if self.normalization == 0.0:
            return []
        return [self._circle(r) for r in self.profile.level_radii(level / abs(self.normalization))]

    def parameters(self) -> dict:
        p = {"kind": self.kind, "metric": self.metric, "center": [self.center.real, self.center.imag],
             "normalization": self.normalization, "ambient": self.ambient}
        prof = self.profile
        if isinstance(prof, MoserProfile):
            p.update(inner=prof.inner, outer=prof.outer, height=prof.height)
        elif isinstance(prof, PowerProfile):
            p.update(radius=prof.radius, power=prof.power, height=prof.height)
        else:
            p.update(support=prof.support)
        return p


@dataclass(frozen=True)
class CayleyPullback(TrialFunction):
    """``u = F o cayley_inverse`` for a trial ``F`` on the upper half-plane."""

    base: RadialTrial
    normalization: float = 1.0

    kind = "cayley-pullback"
    ambient = "disc"

    def __post_init__(self):
        if self.base.ambient != "half-plane":
            raise ValueError("the base trial must live on the half-plane")

    @property
    def center(self) -> complex:
        return complex(cayley(self.base.center))

    def value(self, z):
        return self.normalization * self.base.value(cayley_inverse(z))

    def grad(self, z):
        z = np.asarray(z, dtype=complex)
        dg = 2j / (1.0 - z) ** 2
        return self.normalization * np.conj(dg) * self.base.grad(cayley_inverse(z))

    @property
    def sup_abs(self) -> float:
        return abs(self.normalization) * self.base.sup_abs

    @property
    def support_curve(self) -> Circle:
        return self.base.support_curve.image(cayley)

    def kink_curves(self) -> list:
        return [c.image(cayley) for c in self.base.kink_curves()]

    def level_curves(self, level: float) -> list:
        if self.normalization == 0.0:
            return []
        return [c.image(cayley) for c in self.base.level_curves(level / abs(self.normalization))]

    def parameters(self) -> dict:
        return {"kind": self.kind, "normalization": self.normalization, "base": self.base.parameters()}


@dataclass(frozen=True)
class PolygonBump(TrialFunction):
    """``u = height (1 - (m/scale)^2)^2`` on a shrunken copy of a convex polygon.

    ``m`` is the gauge of the polygon about ``center`` (equal to 1 on the
    boundary), so the support is ``center + scale (omega - center)``.
    """

    omega: object
    scale: float = 0.8
    center: Optional[complex] = None
    height: float = 1.0
    normalization: float = 1.0

    kind = "polygon-bump"

    def __post_init__(self):
        if not getattr(self.omega, "convex", False) or not hasattr(self.omega, "vertices"):
            raise DegenerateInput("polygon bumps need a convex polygon")
        if not 0.0 < self.scale < 1.0:
            raise DegenerateInput("scale must lie in (0, 1)")
        c = self.omega.center()[0] if self.center is None else complex(self.center)
        if not bool(self.omega.contains(np.array([c]))[0]):
            raise OutsideDomain("bump center is outside the polygon")
        object.__setattr__(self, "center", complex(c))
        a, b = self.omega.edges
        e = b - a
        nu = -1j * e / np.abs(e)
        h = (np.conj(nu) * (a - c)).real
        object.__setattr__(self, "_gauge_normals", nu / h)

    @property
    def ambient(self):
        return self.omega

    def _gauge(self, z, offset=None):
        d = np.asarray(z, dtype=complex) - self.center if offset is None else offset
        proj = (np.conj(self._gauge_normals) * d[..., None]).real
        k = np.argmax(proj, axis=-1)
        return np.take_along_axis(proj, k[..., None], axis=-1)[..., 0], k

    def value(self, z):
        m, _ = self._gauge(z)
        q = np.clip(m / self.scale, 0.0, 1.0)
        return self.normalization * self.height * (1.0 - q * q) ** 2

    def grad(self, z):
        return self.evaluate(z)[1]

    def evaluate(self, z, offset=None):
        m, k = self._gauge(z, offset)
        q = np.clip(m / self.scale, 0.0, 1.0)
        amp = self.normalization * self.height
        dq = self._gauge_normals[k] / self.scale
        return amp * (1.0 - q * q) ** 2, amp * (-4.0 * q * (1.0 - q * q)) * dq

    @property
    def sup_abs(self) -> float:
        return abs(self.normalization * self.height)

    @property
    def support_curve(self) -> GaugeCurve:
        return GaugeCurve(self.center, self._gauge_normals, self.scale)

    def level_curves(self, level: float) -> list:
        amp = abs(self.normalization * self.height)
        if not 0.0 < level < amp:
            return []
        q = math.sqrt(1.0 - math.sqrt(level / amp))
        return [GaugeCurve(self.center, self._gauge_normals, q * self.scale)]

    @property
    def theta_breaks(self) -> np.ndarray:
        return np.sort(np.mod(np.angle(self.omega.vertices - self.center), 2 * np.pi))

    def parameters(self) -> dict:
        return {"kind": self.kind, "omega": self.omega.name, "scale": self.scale,
                "center": [self.center.real, self.center.imag], "height": self.height,
                "normalization": self.normalization}


# ---------------------------------------------------------------------------
# constructors
# ---------------------------------------------------------------------------

def moser_trial(center: complex = 0j, inner: float = 0.01, outer: float = 0.5,
                height: float = 1.0, ambient: str = "disc") -> RadialTrial:
    """Truncated-logarithm Moser function about ``center`` (Euclidean radii)."""
    return RadialTrial(MoserProfile(inner, outer, height), center, "euclidean", ambient=ambient)


def power_bump(center: complex = 0j, radius: float = 1.0, power: float = 2.0,
               height: float = 1.0, metric: str = "hyperbolic") -> RadialTrial:
    """``height (1 - dist/radius)_+^power`` with hyperbolic distance by default."""
    return RadialTrial(PowerProfile(radius, power, height), center, metric)


def linear_bump(profile: RadialProfile, center: complex = 0j,
                metric: str = "hyperbolic") -> RadialTrial:
    return RadialTrial(LinearProfile(profile), center, metric)


def polygon_bump(omega, scale: float = 0.8, center: Optional[complex] = None,
                 height: float = 1.0) -> PolygonBump:
    return PolygonBump(omega, scale, center, height)


def halfplane_bump(center: complex = 1j, radius: float = 0.5, power: float = 2.0,
                   height: float = 1.0) -> RadialTrial:
    """Euclidean radial bump on the upper half-plane."""
    return RadialTrial(PowerProfile(radius, power, height), center, "euclidean", ambient="half-plane")


def halfplane_moser(center: complex = 1j, inner: float = 0.05, outer: float = 0.5,
                    height: float = 1.0) -> RadialTrial:
    return RadialTrial(MoserProfile(inner, outer, height), center, "euclidean", ambient="half-plane")


def cayley_pullback(base: RadialTrial) -> CayleyPullback:
    return CayleyPullback(base)


def zero_trial() -> RadialTrial:
    """The zero function, as a Moser trial with vanishing normalization."""
    return RadialTrial(MoserProfile(0.1, 0.5), 0j, "euclidean", normalization=0.0)


def catalog_trials() -> dict[str, TrialFunction]:
    """A fixed, named set of disc trial functions covering every trial kind."""
    pl = RadialProfile(np.array([0.0, 0.3, 0.8, 1.5]), np.array([1.0, 0.9, 0.4, 0.0]))
    return {
        "hyperbolic-square-bump": power_bump(0j, 1.0, 2.0),
        "hyperbolic-bump-offcenter": power_bump(0.4 + 0.2j, 1.5, 3.0),
        "moser-center": moser_trial(0j, 0.01, 0.5),
        "moser-offcenter": moser_trial(0.3 - 0.2j, 1e-3, 0.4),
        "euclidean-bump": power_bump(-0.2j, 0.6, 2.0, metric="euclidean"),
        "piecewise-linear": linear_bump(pl, 0.1 + 0.1j),
        "cayley-pullback": cayley_pullback(halfplane_bump(0.3 + 1.2j, 0.7, 2.0)),
    }


def random_trial(seed: int) -> RadialTrial:
    """Seeded compactly supported radial trial on the disc.

    The kind cycles between hyperbolic power bumps, Moser functions and
    piecewise-linear hyperbolic profiles; the center lies in ``|c| < 0.7``.
    """
    rng = np.random.default_rng(seed)
    c = 0.7 * math.sqrt(rng.uniform()) * np.exp(2j * np.pi * rng.uniform())
    kind = seed % 3
    if kind == 0:
        return power_bump(c, float(rng.uniform(0.1, 3.0)), float(rng.choice([2.0, 3.0, 4.0])),
                          float(rng.uniform(0.2, 2.0)))
    if kind == 1:
        room = 1.0 - abs(c)
        outer = float(rng.uniform(0.2, 0.9) * room)
        inner = outer * math.exp(-rng.uniform(0.5, 6.0))
        return moser_trial(c, inner, outer, float(rng.uniform(0.2, 2.0)))
    k = int(rng.integers(3, 7))
    grid = np.concatenate([[0.0], np.sort(rng.uniform(0.05, 2.5, k - 1))])
    grid = np.concatenate([grid, [grid[-1] + rng.uniform(0.1, 1.0)]])
    vals = np.concatenate([rng.uniform(0.1, 2.0, k), [0.0]])
    return linear_bump(RadialProfile(grid, vals), c)


# ---------------------------------------------------------------------------
# quadrature
# ---------------------------------------------------------------------------

@dataclass
class _Frame:
    kind: str
    origin: complex
    curves: list = field(default_factory=list)
    support: object = None
    wall: object = None

    def point(self, s, e):
        """Points ``z`` and their exact offsets ``z - origin``."""
        if self.kind == "euclidean":
            d = s * e
            return self.origin + d, d
        c = self.origin
        w = np.tanh(0.5 * s) * e
        d = -w * (1.0 - abs(c) ** 2) / (1.0 - np.conj(c) * w)
        return c + d, d

    def jacobian(self, s):
        return s if self.kind == "euclidean" else np.sinh(s)

    def hits(self, curve, e):
        h = curve.ray_hits(0j if self.kind == "geodesic" else self.origin, e)
        if self.kind == "geodesic":
            h = 2.0 * np.arctanh(np.minimum(h, 1.0 - 1e-16))
        return h


def _make_frame(trial: TrialFunction, frame: str, levels: Sequence[float]) -> _Frame:
    curves = list(trial.kink_curves())
    for lv in levels:
        curves.extend(trial.level_curves(lv))
    support = trial.support_curve
    if frame == "euclidean":
        wall = Circle(0j, 1.0) if trial.ambient == "disc" else None
        return _Frame("euclidean", complex(trial.center), curves, support, wall)
    if frame == "geodesic":
        if trial.ambient != "disc":
            raise ValueError("the geodesic frame needs a trial on the disc")
        c = complex(trial.center)
        mob = lambda z: psi(c, z)  # noqa: E731  (psi_c is an involution)
        return _Frame("geodesic", c, [k.image(mob) for k in curves], support.image(mob))
    raise ValueError(f"unknown frame {frame!r}")


def _knots(fr: _Frame, e: np.ndarray, extra) -> np.ndarray:
    smax = np.nanmax(fr.hits(fr.support, e), axis=-1)
    if np.any(~np.isfinite(smax)):
        raise NonConvergence("frame origin is not inside the trial support")
    cols = [np.zeros_like(smax)[:, None], smax[:, None]]
    cols.extend(fr.hits(c, e) for c in fr.curves)
    if extra is not None:
        cols.append(np.asarray(extra(fr.origin, e), dtype=float).reshape(e.size, -1))
    k = np.concatenate(cols, axis=1)
    k = np.where(np.isfinite(k), k, 0.0)
    k = np.sort(np.clip(k, 0.0, smax[:, None]), axis=1)
    # drop columns that are zero in every row (padding), keeping one
    zero = np.all(k == 0.0, axis=0)
    zero[0] = False
    return k[:, ~zero]


def _row_integrals(fr, e, knots, m, integrand, trial):
    """Radial integrals along each direction with ``m`` equal splits per graded panel."""
    a, b = knots[:, :-1], knots[:, 1:]
    # panels are graded geometrically toward the origin, or toward the disc
    # boundary when the trial reaches close to it
    if fr.wall is not None:
        sw = np.nanmax(fr.hits(fr.wall, e), axis=-1)[:, None]
    else:
        sw = np.full((e.size, 1), np.inf)
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = np.where(a > 0, b / np.where(a > 0, a, 1.0), 1.0)
        wall_ratio = np.where(np.isfinite(sw), (sw - a) / (sw - b), 1.0)
    to_wall = wall_ratio > ratio
    ratio = np.maximum(ratio, wall_ratio)
    grades = np.clip(np.ceil(np.log2(np.max(ratio, axis=0))), 1, 400).astype(int)
    pts = []
    for j, g in enumerate(grades):
        frac = np.arange(g + 1) / g
        aj, bj = a[:, j:j + 1], b[:, j:j + 1]
        geo = aj * np.where(aj > 0, bj / np.where(aj > 0, aj, 1.0), 1.0) ** frac
        lin = aj + (bj - aj) * frac
        p = np.where(aj > 0, geo, lin)
        if np.any(to_wall[:, j]):
            da, db = sw - aj, sw - bj
            with np.errstate(divide="ignore", invalid="ignore"):
                near = sw - da * (db / da) ** frac
            p = np.where(to_wall[:, j:j + 1], near, p)
        pts.append(p[:, :-1] if j < len(grades) - 1 else p)
    edges = np.concatenate(pts, axis=1)
    lo, hi = edges[:, :-1], edges[:, 1:]
    t = np.arange(m + 1) / m
    sub = lo[..., None] + (hi - lo)[..., None] * t
    slo, shi = sub[..., :-1], sub[..., 1:]
    half = 0.5 * (shi - slo)
    s = (0.5 * (shi + slo))[..., None] + half[..., None] * _GL_X
    z, offset = fr.point(s, e[:, None, None, None])
    u, g = trial.evaluate(z, offset)
    vals = np.asarray(integrand(z, u, g), dtype=float) * fr.jacobian(s)
    vals = np.where(half[..., None] > 0, vals, 0.0)
    if not np.all(np.isfinite(vals)):
        raise NonConvergence("integrand is not finite on the trial support")
    return np.sum((vals @ _GL_W) * half, axis=(1, 2)), s.size


def _theta_rule(breaks: np.ndarray, level: int):
    """Periodic trapezoid (no breaks) or composite Gauss-Legendre over sectors."""
    if breaks.size == 0:
        n = 16 * 2 ** level
        th = 2 * np.pi * np.arange(n) / n
        return th, np.full(n, 2 * np.pi / n)
    b = np.concatenate([breaks, [breaks[0] + 2 * np.pi]])
    parts = 2 ** level
    th, wt = [], []
    for lo, hi in zip(b[:-1], b[1:]):
        edges = np.linspace(lo, hi, parts + 1)
        half = 0.5 * np.diff(edges)
        mid = 0.5 * (edges[1:] + edges[:-1])
        th.append((mid[:, None] + half[:, None] * _SECTOR_X).ravel())
        wt.append((half[:, None] * _SECTOR_W).ravel())
    return np.concatenate(th), np.concatenate(wt)


def integrate_trial(
    trial: TrialFunction,
    integrand: Callable[[np.ndarray, np.ndarray, np.ndarray], np.ndarray],
    *,
    frame: str = "euclidean",
    levels: Sequence[float] = (),
    extra_knots: Optional[Callable] = None,
    theta_breaks: Sequence[float] = (),
    rtol: float = 1e-10,
    atol: float = 1e-300,
    max_level: int = 8,
) -> QuadratureResult:
    """Integrate ``integrand(z, u, grad u)`` over the support of ``trial``.

    The integrand is a density against ``dx dy`` in the Euclidean frame and
    against ``dV`` in the geodesic frame.  ``levels`` adds knots where
    ``|u|`` crosses those values, and ``extra_knots(origin, e)`` may add
    radial knots from a weight (both in the frame's radial variable).
    ``theta_breaks`` lists directions where the weight has angular kinks;
    with any breaks present the angular rule is composite Gauss-Legendre
    over sectors instead of the periodic trapezoid.
    """
    if trial.is_zero:
        return QuadratureResult(0.0, 0.0, 0)
    fr = _make_frame(trial, frame, levels)
    breaks = np.concatenate([trial.theta_breaks, np.asarray(theta_breaks, dtype=float)])
    breaks = np.unique(np.round(np.mod(breaks, 2 * np.pi), 14))
    if frame != "euclidean" and breaks.size:
        raise ValueError("sector breaks are only supported in the Euclidean frame")

    def total(level, m):
        th, wt = _theta_rule(breaks, level)
        e = np.exp(1j * th)
        out, nev = 0.0, 0
        rows = np.empty(th.size)
        lo, chunk = 0, 256
        while lo < th.size:
            sl = slice(lo, lo + chunk)
            kn = _knots(fr, e[sl], extra_knots)
            rows[sl], n = _row_integrals(fr, e[sl], kn, m, integrand, trial)
            nev += n
            lo += chunk
            # keep roughly two million nodes per batch
            chunk = max(8, int(2e6 * (sl.stop - sl.start) / max(n, 1)))
        out = float(rows @ wt)
        return out, rows, wt, nev

    # radial refinement on a coarse set of directions
    start = 0 if breaks.size else 1
    m = 1
    val, rows, wt, nev = total(start, m)
    err_s = math.inf
    while m < 64:
        val2, rows2, _, n2 = total(start, 2 * m)
        nev += n2
        err_s = float(np.abs(rows2 - rows) @ wt)
        m, val, rows = 2 * m, val2, rows2
        if err_s <= max(atol, rtol * abs(val)) / 4:
            break
    else:
        raise NonConvergence(f"radial quadrature did not converge (error {err_s:.3g})")
    # angular refinement
    level = start
    while True:
        level += 1
        val2, _, _, n2 = total(level, m)
        nev += n2
        err_t = abs(val2 - val)
        val = val2
        if err_t <= max(atol, rtol * abs(val)) / 2 and level >= start + 1:
            break
        if level >= max_level:
            raise NonConvergence(f"angular quadrature did not converge (error {err_t:.3g})")
    return QuadratureResult(val, err_t + err_s, nev)


def support_inside(trial: TrialFunction, domain, samples: int = 256) -> bool:
    """Whether the closed support of ``trial`` lies in the open ``domain``."""
    th = 2 * np.pi * np.arange(samples) / samples
    e = np.exp(1j * th)
    smax = np.nanmax(trial.support_curve.ray_hits(trial.center, e), axis=-1)
    return bool(np.all(domain.contains(trial.center + smax * e)))


__all__ = [
    "Circle", "GaugeCurve", "MoserProfile", "PowerProfile", "LinearProfile",
    "TrialFunction", "RadialTrial", "CayleyPullback", "PolygonBump",
    "moser_trial", "power_bump", "linear_bump", "polygon_bump", "halfplane_bump",
    "halfplane_moser", "cayley_pullback", "zero_trial", "catalog_trials", "random_trial",
    "integrate_trial", "support_inside",
]
