"""Poincare disc primitives.

The disc carries the metric ``4|dz|^2 / (1-|z|^2)^2``, volume element
``dV = (2/(1-|z|^2))^2 dxdy`` and geodesic polar measure
``dV = sinh(rho) drho dtheta``.  All functions accept complex scalars or
arrays.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from .errors import DomainViolation
from .numerics import (QUAD_TOL, QuadratureResult, TailBound, integrate_adaptive,
                       integrate_semi_infinite)


@dataclass(frozen=True)
class DiscPoint:
    """A point of the open unit disc."""

    z: complex

    def __post_init__(self):
        if not abs(self.z) < 1.0:
            raise DomainViolation(f"|z| = {abs(self.z)} is not < 1")

    def __complex__(self) -> complex:
        return complex(self.z)


def as_disc(z) -> np.ndarray | complex:
    """Coerce to complex and check ``|z| < 1``."""
    if isinstance(z, DiscPoint):
        return z.z
    arr = np.asarray(z, dtype=complex)
    if np.any(~(np.abs(arr) < 1.0)):
        raise DomainViolation("point(s) outside the open unit disc")
    return arr if arr.ndim else complex(arr)


def psi(alpha, z):
    """The involutive disc automorphism ``(alpha - z) / (1 - conj(alpha) z)``."""
    alpha = np.asarray(alpha, dtype=complex)
    z = np.asarray(z, dtype=complex)
    out = (alpha - z) / (1.0 - np.conj(alpha) * z)
    return out if out.ndim else complex(out)


@dataclass(frozen=True)
class MobiusMap:
    """Disc automorphism ``z -> exp(i theta) * psi_alpha(z)``."""

    alpha: complex
    theta: float = 0.0

    def __post_init__(self):
        if not abs(self.alpha) < 1.0:
            raise DomainViolation(f"|alpha| = {abs(self.alpha)} is not < 1")

    def __call__(self, z):
        return mobius_apply(self, z)

    def derivative(self, z):
        a = complex(self.alpha)
        z = np.asarray(z, dtype=complex)
        out = np.exp(1j * self.theta) * (abs(a) ** 2 - 1.0) / (1.0 - np.conj(a) * z) ** 2
        return out if out.ndim else complex(out)


def mobius_apply(m: MobiusMap, z):
    """Apply ``m`` to disc point(s) ``z``."""
    z = as_disc(z)
    out = np.exp(1j * m.theta) * np.asarray(psi(m.alpha, z))
    return out if out.ndim else complex(out)


def pseudo_distance(z1, z2):
    """``|psi_{z2}(z1)| = |z1 - z2| / |1 - conj(z2) z1|``, in ``[0, 1)``."""
    z1 = np.asarray(z1, dtype=complex)
    z2 = np.asarray(z2, dtype=complex)
    return np.abs(z1 - z2) / np.abs(1.0 - np.conj(z2) * z1)


def hyp_distance(z1, z2):
    """Geodesic distance ``2 artanh |psi_{z2}(z1)|`` of the disc metric.

    With this normalization ``hyp_distance(z, 0) = log((1+|z|)/(1-|z|))``.
    """
    z1 = as_disc(z1)
    z2 = as_disc(z2)
    d = 2.0 * np.arctanh(pseudo_distance(z1, z2))
    return d if np.ndim(d) else float(d)


def conformal_factor(z):
    """Density ``2 / (1 - |z|^2)`` of the disc metric relative to ``|dz|``."""
    z = np.asarray(z, dtype=complex)
    return 2.0 / (1.0 - np.abs(z) ** 2)


def volume_density(z):
    """``dV/dxdy = (2/(1-|z|^2))^2``."""
    return conformal_factor(z) ** 2


def radius_to_rho(r):
    """Hyperbolic distance from 0 of a point at Euclidean radius ``r``."""
    return 2.0 * np.arctanh(r)


def rho_to_radius(rho):
    """Euclidean radius of the hyperbolic circle of radius ``rho`` about 0."""
    return np.tanh(np.asarray(rho, dtype=float) / 2.0)


def hyperbolic_circle(center, rho: float) -> tuple[complex, float]:
    """Euclidean center and radius of the hyperbolic circle ``{rho(z, c) = rho}``."""
    p = complex(as_disc(center))
    tau = math.tanh(rho / 2.0)
    den = 1.0 - tau * tau * abs(p) ** 2
    return p * (1.0 - tau * tau) / den, tau * (1.0 - abs(p) ** 2) / den


def ball_volume(rho):
    """Hyperbolic area ``2 pi (cosh rho - 1)`` of a geodesic ball."""
    rho = np.asarray(rho, dtype=float)
    return 4.0 * np.pi * np.sinh(rho / 2.0) ** 2


def cayley(z):
    """Upper half-plane to disc: ``(z - i) / (z + i)``."""
    z = np.asarray(z, dtype=complex)
    if np.any(~(z.imag > 0)):
        raise DomainViolation("cayley map requires Im z > 0")
    out = (z - 1j) / (z + 1j)
    return out if out.ndim else complex(out)


def cayley_inverse(w):
    """Disc to upper half-plane: ``i (1 + w) / (1 - w)``."""
    w = as_disc(w)
    out = 1j * (1.0 + np.asarray(w)) / (1.0 - np.asarray(w))
    return out if np.ndim(out) else complex(out)


def polar_integrate(
    f: Callable[[np.ndarray], np.ndarray],
    tol: float = QUAD_TOL,
    *,
    rho_max: Optional[float] = None,
    tail: Optional[TailBound] = None,
    breakpoints: Sequence[float] = (),
    rtol: float = 0.0,
) -> QuadratureResult:
    """``int_B f dV = 2 pi int_0^inf f(rho) sinh(rho) drho`` for radial ``f``.

    Either ``rho_max`` (support bound) or ``tail`` (envelope of
    ``f(rho) sinh(rho)``) must be given.
    """

    def g(rho):
        return f(rho) * np.sinh(rho)

    if rho_max is not None:
        if rho_max <= 0:
            return QuadratureResult(0.0, 0.0, 0)
        res = integrate_adaptive(g, 0.0, rho_max, tol / (2 * math.pi), rtol,
                                 points=breakpoints)
    elif tail is not None:
        res = integrate_semi_infinite(g, 0.0, tol / (2 * math.pi), tail=tail, rtol=rtol,
                                      points=breakpoints)
    else:
        raise ValueError("polar_integrate needs rho_max or a declared tail")
    return res.scaled(2.0 * math.pi)


@dataclass(frozen=True)
class NormIdentity:
    """Both sides of the Euclidean/hyperbolic form of the Hardy-adjusted norm."""

    euclidean: float
    hyperbolic: float
    error_estimate: float

    @property
    def relative_difference(self) -> float:
        scale = max(abs(self.euclidean), abs(self.hyperbolic))
        return 0.0 if scale == 0.0 else abs(self.euclidean - self.hyperbolic) / scale


def norm_identity_check(u, tol: float = 1e-10) -> NormIdentity:
    """Evaluate ``int |grad u|^2 - u^2/(1-|z|^2)^2 dxdy`` and ``int |grad_H u|^2 - u^2/4 dV``.

    The first integral runs in Euclidean polar coordinates about the
    trial's center, the second in geodesic polar coordinates with the
    hyperbolic gradient, so the two values come from separate pipelines.
    """
    from .functionals import hardy_norm_disc, hardy_norm_hyperbolic

    a = hardy_norm_disc(u, tol)
    b = hardy_norm_hyperbolic(u, tol)
    return NormIdentity(a.value, b.value, a.error_estimate + b.error_estimate)
