"""Hardy-adjusted norms, Trudinger-Moser functionals and Beckner margins.

Every quantity is an integral over the support of a trial function and
is computed by :func:`tmlab.trial.integrate_trial`.  Results carry an
absolute error estimate from successive refinement.

Notation: ``E(u) = int |grad u|^2 dx dy`` is the Dirichlet energy, which
is conformally invariant and equals the hyperbolic energy
``int |grad_H u|^2 dV``; ``dV = 4 dx dy / (1 - |z|^2)^2`` on the disc and
``dnu = dx dy / y^2`` on the upper half-plane.
"""

from __future__ import annotations

import math
from itertools import combinations
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np
from scipy.optimize import minimize_scalar

from .conformal.domains import ConvexPolygon, Domain, Polygon, UnitDisc
from .errors import DomainViolation, OutsideDomain, OverflowDetected, ZeroFunction
from .numerics import QuadratureResult
from .trial import (TrialFunction, integrate_trial, moser_trial, power_bump,
                    support_inside)

FOUR_PI = 4.0 * math.pi
EXP_CAP = 700.0
LEVEL_SET_BOUND = 4.0 / math.pi
REMAINDER_BOUND = 4.0 / math.pi * math.exp(4.0 * math.pi)
DEFAULT_TOL = 1e-10

BECKNER_VARIANTS = {
    "p6-c3/16": (6.0, 4.0 * math.pi ** (-2.0 / 3.0), 3.0 / 16.0),
    "p6-c1/4": (6.0, 4.0 / 3.0 * math.pi ** (-2.0 / 3.0), 0.25),
    "p4-c1/4": (4.0, 2.0 * math.pi ** (-0.5), 0.25),
}


# ---------------------------------------------------------------------------
# weights
# ---------------------------------------------------------------------------

def disc_volume_density(z):
    return 4.0 / (1.0 - np.abs(z) ** 2) ** 2


def _require_disc(u: TrialFunction) -> None:
    if u.ambient != "disc":
        raise DomainViolation(f"{u.kind} trial is not supported in the disc")


def _require_inside(u: TrialFunction, omega) -> None:
    if isinstance(omega, UnitDisc):
        _require_disc(u)
        return
    if u.ambient is omega:
        return
    if u.ambient == "half-plane" or not (u.ambient in ("disc", "plane") or
                                         isinstance(u.ambient, Domain)):
        raise DomainViolation("trial and domain do not share an ambient plane")
    if not support_inside(u, omega):
        raise OutsideDomain(f"trial support is not inside the {omega.name}")


@dataclass(frozen=True)
class DistanceWeight:
    """Boundary distance of a convex domain with radial knots at its kinks.

    On a convex polygon ``d(z) = min_k (h_k - <nu_k, z - o>)`` over the
    edge lines, so along a ray from ``o`` it is the lower envelope of
    linear functions; every pairwise crossing is a candidate kink.
    """

    omega: object

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        if isinstance(self.omega, ConvexPolygon):
            a, b = self.omega.edges
            nu = -1j * (b - a) / np.abs(b - a)
            return np.min((np.conj(nu) * (a - z[..., None])).real, axis=-1)
        if isinstance(self.omega, Polygon):
            flat = z.ravel()
            return self.omega._distance(flat).reshape(z.shape)
        return self.omega._distance(z)

    def knots(self, origin: complex, e: np.ndarray) -> Optional[np.ndarray]:
        if not isinstance(self.omega, ConvexPolygon):
            return np.zeros((e.size, 0))
        a, b = self.omega.edges
        nu = -1j * (b - a) / np.abs(b - a)
        h = (np.conj(nu) * (a - origin)).real
        slope = (np.conj(nu)[None, :] * e[:, None]).real
        j, k = np.triu_indices(h.size, 1)
        with np.errstate(divide="ignore", invalid="ignore"):
            s = (h[j] - h[k]) / (slope[:, j] - slope[:, k])
        # crossings at the origin itself (rounded to tiny values) are not kinks
        s = np.where(np.isfinite(s) & (s > 1e-10 * np.max(np.abs(h))), s, np.nan)
        # keep only crossings on the lower envelope, where d really kinks
        lines = h[None, None, :] - s[..., None] * slope[:, None, :]
        env = np.min(np.where(np.isnan(lines), np.inf, lines), axis=-1)
        on = np.take_along_axis(lines, np.broadcast_to(j, s.shape)[..., None], -1)[..., 0]
        return np.where(np.abs(on - env) <= 1e-12 * (1.0 + np.abs(env)), s, np.nan)

    def theta_breaks(self, origin: complex) -> np.ndarray:
        """Directions from ``origin`` to the vertices of the medial axis.

        Rays through these points are where the structure of the lower
        envelope changes, so the angular integrand has kinks there.
        """
        if not isinstance(self.omega, ConvexPolygon):
            return np.zeros(0)
        a, b = self.omega.edges
        nu = -1j * (b - a) / np.abs(b - a)
        c = (np.conj(nu) * a).real
        pts = list(self.omega.vertices)
        for tri in combinations(range(a.size), 3):
            k = list(tri)
            A = np.column_stack([nu[k].real, nu[k].imag, np.ones(3)])
            try:
                x, y, r = np.linalg.solve(A, c[k])
            except np.linalg.LinAlgError:
                continue
            p = complex(x, y)
            if r > 0 and self.omega.contains(np.array([p]))[0] and \
                    abs(float(self(np.array([p]))[0]) - r) <= 1e-12 * (1.0 + r):
                pts.append(p)
        pts = np.asarray(pts)
        pts = pts[np.abs(pts - origin) > 1e-14]
        return np.angle(pts - origin)


def _area(omega) -> float:
    if isinstance(omega, UnitDisc):
        return math.pi
    if isinstance(omega, Polygon):
        return omega.signed_area
    raise DomainViolation(f"{getattr(omega, 'name', omega)} is not a bounded domain")


# ---------------------------------------------------------------------------
# norms
# ---------------------------------------------------------------------------

def dirichlet_energy(u: TrialFunction, tol: float = DEFAULT_TOL) -> QuadratureResult:
    """``int |grad u|^2 dx dy`` over the support."""
    return integrate_trial(u, lambda z, v, g: np.abs(g) ** 2, rtol=tol)


def hardy_norm_disc(u: TrialFunction, tol: float = DEFAULT_TOL) -> QuadratureResult:
    """``int |grad u|^2 dx dy - int u^2 / (1 - |z|^2)^2 dx dy`` on the disc."""
    _require_disc(u)
    return integrate_trial(
        u, lambda z, v, g: np.abs(g) ** 2 - v * v / (1.0 - np.abs(z) ** 2) ** 2, rtol=tol)


def hardy_norm_hyperbolic(u: TrialFunction, tol: float = DEFAULT_TOL) -> QuadratureResult:
    """``int |grad_H u|^2 dV - (1/4) int u^2 dV`` in geodesic polar coordinates."""
    _require_disc(u)

    def f(z, v, g):
        lam = 0.5 * (1.0 - np.abs(z) ** 2)
        return lam * lam * np.abs(g) ** 2 - 0.25 * v * v

    return integrate_trial(u, f, frame="geodesic", rtol=tol)


def hardy_norm_convex(u: TrialFunction, omega, tol: float = DEFAULT_TOL) -> QuadratureResult:
    """``int |grad u|^2 dx dy - (1/4) int u^2 / d(z)^2 dx dy`` on a convex domain."""
    _require_inside(u, omega)
    d = DistanceWeight(omega)
    return integrate_trial(u, lambda z, v, g: np.abs(g) ** 2 - 0.25 * v * v / d(z) ** 2,
                           extra_knots=d.knots, theta_breaks=d.theta_breaks(u.center), rtol=tol)


def l2_norm_sq(u: TrialFunction, measure: str = "euclidean",
               tol: float = DEFAULT_TOL) -> QuadratureResult:
    """``int u^2`` against ``dx dy`` or the hyperbolic area of ``u``'s ambient model."""
    return lp_integral(u, 2.0, measure, tol)


def lp_integral(u: TrialFunction, p: float, measure: str = "hyperbolic",
                tol: float = DEFAULT_TOL) -> QuadratureResult:
    """``int |u|^p`` against ``dx dy`` (``'euclidean'``) or the hyperbolic area."""
    if measure == "euclidean":
        return integrate_trial(u, lambda z, v, g: np.abs(v) ** p, rtol=tol)
    if measure != "hyperbolic":
        raise ValueError(f"unknown measure {measure!r}")
    if u.ambient == "half-plane":
        return integrate_trial(u, lambda z, v, g: np.abs(v) ** p / z.imag ** 2, rtol=tol)
    _require_disc(u)
    return integrate_trial(u, lambda z, v, g: np.abs(v) ** p * disc_volume_density(z), rtol=tol)


# ---------------------------------------------------------------------------
# Trudinger-Moser functionals
# ---------------------------------------------------------------------------

def tm_integrand(x):
    """``e^x - 1 - x`` without cancellation for small ``x``."""
    x = np.asarray(x, dtype=float)
    small = np.abs(x) < 1e-3
    xs = np.where(small, x, 0.0)
    series = xs * xs * (0.5 + xs * (1 / 6 + xs * (1 / 24 + xs * (1 / 120 + xs / 720))))
    big = np.where(small, 0.0, x)
    return np.where(small, series, np.expm1(big) - big)


def _check_exponent(u: TrialFunction, beta: float) -> None:
    top = beta * u.sup_abs ** 2
    if top > EXP_CAP:
        raise OverflowDetected(f"exponent beta*u^2 reaches {top:.4g} > {EXP_CAP:g}; "
                               "the trial function is not admissible")


def _weight(u: TrialFunction, weight: str, omega):
    if weight == "disc":
        _require_disc(u)
        return (lambda z: 1.0 / (1.0 - np.abs(z) ** 2) ** 2), None, ()
    if weight == "distance":
        if omega is None:
            raise ValueError("the distance weight needs a domain")
        _require_inside(u, omega)
        d = DistanceWeight(omega)
        return (lambda z: 1.0 / d(z) ** 2), d.knots, d.theta_breaks(u.center)
    if weight == "none":
        if omega is not None:
            _require_inside(u, omega)
        return (lambda z: 1.0), None, ()
    raise ValueError(f"unknown weight {weight!r}")


def tm_defect(u: TrialFunction, weight: str = "disc", omega=None, tol: float = DEFAULT_TOL,
              *, beta: float = FOUR_PI) -> QuadratureResult:
    """``int (e^{beta u^2} - 1 - beta u^2) w dx dy``.

    ``weight`` is ``'disc'`` (``w = (1 - |z|^2)^-2``), ``'distance'``
    (``w = d(z, boundary)^-2`` on ``omega``) or ``'none'`` (``w = 1``).
    The integrand vanishes off the support, so only the support is
    integrated.
    """
    _check_exponent(u, beta)
    w, knots, breaks = _weight(u, weight, omega)
    if beta == 0.0:
        return QuadratureResult(0.0, 0.0, 0)
    return integrate_trial(u, lambda z, v, g: tm_integrand(beta * v * v) * w(z),
                           extra_knots=knots, theta_breaks=breaks, rtol=tol)


@dataclass(frozen=True)
class PlainExpResult:
    """``int_omega e^{4 pi u^2}`` and its decomposition into defect, area and ``L^2`` parts."""

    value: float
    defect: float
    area: float
    l2: float
    decomposition: float
    error_estimate: float

    @property
    def relative_gap(self) -> float:
        return abs(self.value - self.decomposition) / abs(self.value)


def plain_exp_integral(u: TrialFunction, omega, tol: float = DEFAULT_TOL) -> PlainExpResult:
    """``int_omega e^{4 pi u^2} dx dy`` on a bounded domain.

    The value is ``|omega| + int (e^{4 pi u^2} - 1)`` over the support; the
    decomposition ``tm_defect(none) + |omega| + 4 pi int u^2`` is
    assembled from separate quadratures.
    """
    _check_exponent(u, FOUR_PI)
    area = _area(omega)
    _require_inside(u, omega)
    excess = integrate_trial(u, lambda z, v, g: np.expm1(FOUR_PI * v * v), rtol=tol)
    defect = tm_defect(u, "none", None, tol)
    l2 = l2_norm_sq(u, "euclidean", tol)
    value = area + excess.value
    decomp = defect.value + area + FOUR_PI * l2.value
    err = excess.error_estimate + defect.error_estimate + FOUR_PI * l2.error_estimate
    return PlainExpResult(value, defect.value, area, l2.value, decomp, err)


# ---------------------------------------------------------------------------
# Beckner inequalities
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BecknerResult:
    """``margin = c (E - lam ||u||_2^2) - ||u||_p^2`` for one variant."""

    variant: str
    p: float
    c: float
    lam: float
    energy: float
    l2: float
    lp_norm_sq: float
    margin: float
    error_budget: float

    @property
    def rhs(self) -> float:
        return self.c * (self.energy - self.lam * self.l2)

    @property
    def holds(self) -> bool:
        return self.margin >= -self.error_budget


def beckner_check(u: TrialFunction, variant: str = "p4-c1/4",
                  tol: float = DEFAULT_TOL) -> BecknerResult:
    """Margin of a Beckner inequality for a trial on the disc or the half-plane.

    Norms are taken against the hyperbolic area of the trial's model; the
    energy term is the Dirichlet energy ``int |grad u|^2 dx dy``.
    """
    try:
        p, c, lam = BECKNER_VARIANTS[variant]
    except KeyError:
        raise ValueError(f"unknown Beckner variant {variant!r}; "
                         f"choose from {sorted(BECKNER_VARIANTS)}") from None
    if u.ambient not in ("disc", "half-plane"):
        raise DomainViolation("Beckner checks run on the disc or the half-plane")
    energy = dirichlet_energy(u, tol)
    l2 = lp_integral(u, 2.0, "hyperbolic", tol)
    lp = lp_integral(u, p, "hyperbolic", tol)
    lp_sq = lp.value ** (2.0 / p) if lp.value > 0 else 0.0
    margin = c * (energy.value - lam * l2.value) - lp_sq
    dlp = (2.0 / p) * lp_sq / lp.value * lp.error_estimate if lp.value > 0 else 0.0
    budget = c * (energy.error_estimate + lam * l2.error_estimate) + dlp
    return BecknerResult(variant, p, c, lam, energy.value, l2.value, lp_sq, margin, budget)


@dataclass(frozen=True)
class TransferCheck:
    halfplane: BecknerResult
    disc: BecknerResult

    @property
    def relative_difference(self) -> float:
        """Largest relative difference among energy, ``L^2``, ``L^p`` and margin."""
        pairs = [(self.halfplane.energy, self.disc.energy), (self.halfplane.l2, self.disc.l2),
                 (self.halfplane.lp_norm_sq, self.disc.lp_norm_sq),
                 (self.halfplane.margin, self.disc.margin)]
        return max(abs(a - b) / max(abs(a), abs(b), 1e-300) for a, b in pairs)


def beckner_transfer_check(F: TrialFunction, variant: str = "p4-c1/4",
                           tol: float = DEFAULT_TOL) -> TransferCheck:
    """Evaluate one variant on a half-plane trial and on its Cayley pullback."""
    from .trial import cayley_pullback

    if F.ambient != "half-plane":
        raise DomainViolation("the transfer check starts from a half-plane trial")
    return TransferCheck(beckner_check(F, variant, tol),
                         beckner_check(cayley_pullback(F), variant, tol))


# ---------------------------------------------------------------------------
# level sets and the remainder
# ---------------------------------------------------------------------------

def level_set_measure(u: TrialFunction, level: float = 1.0,
                      tol: float = DEFAULT_TOL) -> QuadratureResult:
    """Hyperbolic area of ``{|u| >= level}``."""
    _require_disc(u)
    if u.sup_abs < level:
        return QuadratureResult(0.0, 0.0, 0)
    return integrate_trial(
        u, lambda z, v, g: np.where(np.abs(v) >= level, disc_volume_density(z), 0.0),
        levels=(level,), rtol=tol)


@dataclass(frozen=True)
class RemainderCheck:
    lhs: float
    rhs: float
    l4: float
    error_estimate: float

    @property
    def passed(self) -> bool:
        return self.lhs <= self.rhs


def remainder_bound_check(u: TrialFunction, tol: float = DEFAULT_TOL) -> RemainderCheck:
    """``int_{|u| < 1} (e^{4 pi u^2} - 1 - 4 pi u^2) dV`` against ``4/pi e^{4 pi}``."""
    _require_disc(u)

    def f(z, v, g):
        inside = np.abs(v) < 1.0
        return np.where(inside, tm_integrand(FOUR_PI * np.where(inside, v * v, 0.0)), 0.0) \
            * disc_volume_density(z)

    lhs = integrate_trial(u, f, levels=(1.0,), rtol=tol)
    l4 = lp_integral(u, 4.0, "hyperbolic", tol)
    return RemainderCheck(lhs.value, REMAINDER_BOUND, l4.value, lhs.error_estimate)


# ---------------------------------------------------------------------------
# Rayleigh quotients
# ---------------------------------------------------------------------------

def hardy_rayleigh(u: TrialFunction, mode: str = "disc", omega=None,
                   tol: float = DEFAULT_TOL) -> float:
    """Hardy-adjusted norm divided by ``int u^2 dx dy``.

    ``mode='disc'`` uses the disc weight, ``mode='convex'`` the boundary
    distance of ``omega``.  Every value is an upper bound for the best
    constant of the corresponding improved Hardy inequality.
    """
    den = l2_norm_sq(u, "euclidean", tol).value
    if den == 0.0:
        raise ZeroFunction("the Rayleigh quotient of the zero function is undefined")
    if mode == "disc":
        num = hardy_norm_disc(u, tol).value
    elif mode == "convex":
        if omega is None:
            raise ValueError("convex mode needs a domain")
        num = hardy_norm_convex(u, omega, tol).value
    else:
        raise ValueError(f"unknown mode {mode!r}")
    return num / den


@dataclass(frozen=True)
class RayleighMinimum:
    radius: float
    value: float
    power: float
    evaluations: int


def minimize_rayleigh(power: float = 2.0, bounds: tuple[float, float] = (0.05, 12.0),
                      tol: float = 1e-8) -> RayleighMinimum:
    """Minimize the disc Rayleigh quotient over centered hyperbolic power bumps.

    The family is ``(1 - rho/a)_+^power`` with the hyperbolic radius ``a``
    searched on a log scale; the minimum is an empirical upper bound for
    the improved Hardy constant on the disc.
    """
    def f(log_a):
        return hardy_rayleigh(power_bump(0j, math.exp(log_a), power), "disc", tol=1e-10)

    res = minimize_scalar(f, bounds=(math.log(bounds[0]), math.log(bounds[1])),
                          method="bounded", options={"xatol": tol})
    return RayleighMinimum(math.exp(res.x), float(res.fun), power, int(res.nfev))


# ---------------------------------------------------------------------------
# Moser family and sharpness
# ---------------------------------------------------------------------------

def normalize_hardy(u: TrialFunction, tol: float = DEFAULT_TOL) -> TrialFunction:
    """Rescale ``u`` so that its disc Hardy-adjusted norm equals 1."""
    n = hardy_norm_disc(u, tol).value
    if n <= 0.0:
        raise ZeroFunction("cannot normalize a function with nonpositive Hardy norm")
    return u.scaled(1.0 / math.sqrt(n))


def moser_family(concentrations: Sequence[float] = tuple(np.linspace(1.0, 40.0, 20)),
                 center: complex = 0j, outer: float = 0.5,
                 tol: float = DEFAULT_TOL) -> list[TrialFunction]:
    """Moser functions with ``log(outer/inner)`` equal to each concentration, Hardy-normalized."""
    return [normalize_hardy(moser_trial(center, outer * math.exp(-L), outer), tol)
            for L in concentrations]


@dataclass
class SweepCurve:
    """Trudinger-Moser values along a concentration sweep.

    ``overflow_at`` is the first concentration whose exponent exceeds the
    cap; the curve ends there.
    """

    beta: float
    concentrations: list[float] = field(default_factory=list)
    values: list[float] = field(default_factory=list)
    errors: list[float] = field(default_factory=list)
    overflow_at: Optional[float] = None

    @property
    def final_value(self) -> float:
        return self.values[-1] if self.values else math.nan

    @property
    def max_value(self) -> float:
        return max(self.values) if self.values else math.nan


def sharpness_sweep(beta: float, concentrations: Sequence[float] = tuple(np.linspace(1.0, 40.0, 20)),
                    center: complex = 0j, outer: float = 0.5,
                    tol: float = 1e-9) -> SweepCurve:
    """``int (e^{beta u^2} - 1 - beta u^2) / (1 - |z|^2)^2 dx dy`` on the normalized Moser family."""
    curve = SweepCurve(beta)
    for L, u in zip(concentrations, moser_family(concentrations, center, outer, tol)):
        try:
            r = tm_defect(u, "disc", tol=tol, beta=beta)
        except OverflowDetected:
            curve.overflow_at = float(L)
            break
        curve.concentrations.append(float(L))
        curve.values.append(r.value)
        curve.errors.append(r.error_estimate)
    return curve


# ---------------------------------------------------------------------------
# summary
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FunctionalReport:
    hardy_norm: float
    tm_defect: float
    level_set_measure: float
    parameters: dict
    plain_exp: Optional[float] = None


def functional_report(u: TrialFunction, omega=None, tol: float = DEFAULT_TOL) -> FunctionalReport:
    """Hardy norm, Trudinger-Moser defect and level-set area of a disc trial.

    With a bounded ``omega`` the plain exponential integral is added.
    """
    h = hardy_norm_disc(u, tol).value
    tm = tm_defect(u, "disc", tol=tol).value
    lv = level_set_measure(u, 1.0, tol).value
    pe = plain_exp_integral(u, omega, tol).value if omega is not None else None
    return FunctionalReport(h, tm, lv, u.parameters(), pe)


__all__ = [
    "BECKNER_VARIANTS", "LEVEL_SET_BOUND", "REMAINDER_BOUND", "EXP_CAP",
    "DistanceWeight", "dirichlet_energy", "hardy_norm_disc", "hardy_norm_hyperbolic",
    "hardy_norm_convex", "l2_norm_sq", "lp_integral", "tm_integrand", "tm_defect",
    "PlainExpResult", "plain_exp_integral", "BecknerResult", "beckner_check",
    "TransferCheck", "beckner_transfer_check", "level_set_measure", "RemainderCheck",
    "remainder_bound_check", "hardy_rayleigh", "RayleighMinimum", "minimize_rayleigh",
    "normalize_hardy", "moser_family", "SweepCurve", "sharpness_sweep",
    "FunctionalReport", "functional_report",
]
