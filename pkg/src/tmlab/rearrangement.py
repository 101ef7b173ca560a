"""Distribution functions and decreasing rearrangements on the disc.

Measures are hyperbolic volumes.  For radial functions the superlevel set
``{u > s}`` is a union of geodesic annuli, each of volume
``2 pi (cosh b - cosh a)``, so distribution functions of piecewise-linear
radial profiles are computed exactly.  The kernel ``phi`` is strictly
decreasing in ``rho``, which gives its rearrangement in closed form:

    phi*(t) = phi(rho_t),    t = 2 pi (cosh rho_t - 1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np
from scipy.optimize import brentq

from . import kernel
from .errors import NotDecreasing, OutOfRange, UnsupportedProfile
from .numerics import (QuadratureResult, RadialProfile, FunctionProfile, TailBound,
                       find_root_monotone, integrate_adaptive, integrate_semi_infinite)

# Range of rho on which lambda_phi inverts phi.
RHO_MIN = 1e-12
RHO_MAX = 1e6

Profile = Union[RadialProfile, FunctionProfile]


def ball_measure(rho):
    """``2 pi (cosh rho - 1)`` written without cancellation."""
    rho = np.asarray(rho, dtype=float)
    return 4.0 * np.pi * np.sinh(0.5 * rho) ** 2


def measure_to_radius(t):
    """Inverse of :func:`ball_measure`: ``2 asinh(sqrt(t / 4 pi))``."""
    t = np.asarray(t, dtype=float)
    return 2.0 * np.arcsinh(np.sqrt(t / (4.0 * np.pi)))


def annulus_measure(lo, hi):
    """``2 pi (cosh hi - cosh lo)`` for ``0 <= lo <= hi``."""
    lo = np.asarray(lo, dtype=float)
    hi = np.asarray(hi, dtype=float)
    return 4.0 * np.pi * np.sinh(0.5 * (hi - lo)) * np.sinh(0.5 * (hi + lo))


@dataclass(frozen=True)
class DistributionFunction:
    """Sampled pairs ``(s, lambda(s))`` with ``s`` decreasing."""

    levels: np.ndarray
    measures: np.ndarray

    def __post_init__(self):
        levels = np.asarray(self.levels, dtype=float)
        measures = np.asarray(self.measures, dtype=float)
        if levels.shape != measures.shape or levels.ndim != 1:
            raise ValueError("levels and measures must be 1-D of equal length")
        if np.any(np.diff(levels) >= 0):
            raise ValueError("levels must be strictly decreasing")
        if np.any(levels <= 0):
            raise ValueError("levels must be positive")
        if np.any(np.diff(measures) < 0) or np.any(measures < 0):
            raise ValueError("measures must be nonnegative and nondecreasing")
        object.__setattr__(self, "levels", levels)
        object.__setattr__(self, "measures", measures)


# -- the kernel --------------------------------------------------------------

def _log_phi(rho: float) -> float:
    return math.log(kernel.phi_scaled_sub1(rho).value) - 0.5 * rho


def phi_radius(s: float) -> float:
    """The radius ``rho_s`` solving ``phi(rho_s) = s``."""
    s = float(s)
    if not s > 0:
        raise OutOfRange(f"level s = {s} must be positive")
    log_s = math.log(s)
    lo, hi = math.log(RHO_MIN), math.log(RHO_MAX)
    f_lo, f_hi = _log_phi(RHO_MIN) - log_s, _log_phi(RHO_MAX) - log_s
    if f_lo < 0:
        raise OutOfRange(f"level {s} exceeds phi({RHO_MIN}) = {math.exp(f_lo + log_s):.6g}")
    if f_hi > 0:
        raise OutOfRange(f"level {s} is below phi({RHO_MAX})")
    # narrow the bracket using phi ~ 1/(2 pi rho) near 0 and exp(-rho/2)/(pi rho) far out
    guesses = [-log_s - math.log(2 * math.pi)]
    x = max(0.0, -2.0 * log_s)
    for _ in range(60):
        x = -2.0 * (log_s + math.log(math.pi * max(x, 1e-300)))
        x = max(x, 1e-300)
    guesses.append(math.log(x) if x > 0 else lo)
    for g in sorted(guesses):
        for width in (0.5, 2.0):
            a, b = max(lo, g - width), min(hi, g + width)
            if a < b and _log_phi(math.exp(a)) - log_s > 0 > _log_phi(math.exp(b)) - log_s:
                lo, hi = a, b
                break
        else:
            continue
        break
    x = find_root_monotone(lambda y: _log_phi(math.exp(y)) - log_s, lo, hi, tol=1e-15,
                           samples=3)
    return math.exp(x)


def lambda_phi(s: float) -> float:
    """Volume of the superlevel set ``{phi > s}``."""
    return float(ball_measure(phi_radius(s)))


def lambda_phi_quadrature(s: float, tol: float = 1e-10) -> QuadratureResult:
    """``lambda_phi(s)`` by polar quadrature of the indicator of ``{phi > s}``.

    The superlevel set is located by bisection on a sampled grid rather
    than by the root finder used in :func:`lambda_phi`.
    """
    from .hyperbolic import polar_integrate

    grid = np.geomspace(RHO_MIN, 50.0, 400)
    vals = kernel.phi_value(grid)
    above = grid[vals > s]
    if above.size == 0:
        return QuadratureResult(0.0, 0.0, 0)
    a = float(above[-1])
    b = float(grid[min(np.searchsorted(grid, a) + 1, grid.size - 1)])
    for _ in range(80):
        m = 0.5 * (a + b)
        if kernel.phi_value(m) > s:
            a = m
        else:
            b = m
    edge = 0.5 * (a + b)
    return polar_integrate(lambda r: np.ones_like(r), tol, rho_max=edge)


def phi_star(t) -> np.ndarray | float:
    """Decreasing rearrangement of ``phi`` at measure ``t > 0``."""
    t_arr = np.asarray(t, dtype=float)
    if np.any(~(t_arr > 0)):
        raise ValueError("phi_star requires t > 0")
    return kernel.phi_value(measure_to_radius(t_arr))


def phi_star_scaled(t) -> np.ndarray | float:
    """``sqrt(4 pi t) phi*(t)``, bounded by 1."""
    t_arr = np.asarray(t, dtype=float)
    return np.sqrt(4.0 * np.pi * t_arr) * phi_star(t_arr)


def distribution_phi(levels) -> DistributionFunction:
    """Distribution function of ``phi`` sampled at decreasing ``levels``."""
    levels = np.asarray(levels, dtype=float)
    return DistributionFunction(levels, np.array([lambda_phi(s) for s in levels]))


@dataclass(frozen=True)
class TailEnergy:
    """``int_a^inf phi*(t)^2 dt`` with the comparison bounds of its finiteness proof."""

    a: float
    b: float
    value: float
    error_estimate: float
    integral_bound: float
    constant_bound: float
    c_b: float


def _tail_integrand(s):
    s = np.atleast_1d(np.asarray(s, dtype=float))
    ps = np.array([kernel.phi_scaled_sub1(x).value for x in s])
    # 2 pi phi^2 sinh s = pi (e^{s/2} phi)^2 (1 - e^{-2s})
    return np.pi * ps * ps * (-np.expm1(-2.0 * s))


def _coth_half_over_square(s):
    s = np.asarray(s, dtype=float)
    return 1.0 / (np.tanh(0.5 * s) * s * s)


def tail_energy(a: float, tol: float = 1e-8) -> TailEnergy:
    """Energy of ``phi*`` on ``[a, inf)``.

    Uses ``t = 2 pi (cosh s - 1)`` so the integral becomes
    ``int_b^inf 2 pi phi(s)^2 sinh(s) ds``.  The integrand decays like
    ``1/(pi s^2)``; the truncation is controlled by
    ``2 pi phi^2 sinh s <= coth(s/2) / (pi s^2)`` whose tail is at most
    ``coth(T/2) / (pi T)``.
    """
    a = float(a)
    if not a > 0:
        raise ValueError("tail_energy requires a > 0")
    b = float(measure_to_radius(a))

    def envelope(s):
        return _coth_half_over_square(s) / np.pi

    def tail_integral(T):
        return 1.0 / (math.tanh(0.5 * T) * math.pi * T)

    bound = TailBound(envelope, tail_integral, start=b)
    res = integrate_semi_infinite(_tail_integrand, b, tol, tail=bound, geometric=True,
                                  max_intervals=20000, truncate_max=1e9)
    # comparison integral 2 int_b^inf coth(s/2)/s^2 ds
    head = integrate_adaptive(lambda s: 2.0 * _coth_half_over_square(s), b, 2.0 * b + 50.0,
                              tol=1e-12)
    far = 2.0 * b + 50.0
    # coth(s/2) = 1 + 2/(e^s - 1) on the far part
    far_part = 2.0 / far + 4.0 * integrate_adaptive(
        lambda s: 1.0 / (np.expm1(s) * s * s), far, far + 60.0, tol=1e-16).value
    c_b = 1.0 / math.tanh(0.5 * b)
    return TailEnergy(a=a, b=b, value=res.value, error_estimate=res.error_estimate,
                      integral_bound=head.value + far_part, constant_bound=2.0 * c_b / b,
                      c_b=c_b)


# -- general radial profiles ---------------------------------------------------

def _segments(u: RadialProfile):
    grid, vals = u.grid, u.values
    lo = np.concatenate([[0.0], grid[:-1]]) if grid[0] > 0 else grid[:-1]
    hi = np.concatenate([[grid[0]], grid[1:]]) if grid[0] > 0 else grid[1:]
    if grid[0] > 0:
        head = vals[0] if u.head == "constant" else 0.0
        if u.head not in ("constant", "zero"):
            raise UnsupportedProfile("power-law head is not supported for rearrangement")
        ua = np.concatenate([[head], vals[:-1]])
        ub = np.concatenate([[head], vals[1:]])
    else:
        ua, ub = vals[:-1], vals[1:]
    return lo, hi, ua, ub


def _superlevel_measure(segs, s: float) -> float:
    lo, hi, ua, ub = segs
    du = ub - ua
    with np.errstate(divide="ignore", invalid="ignore"):
        frac = np.where(du != 0, (s - ua) / du, 0.0)
    cross = lo + np.clip(frac, 0.0, 1.0) * (hi - lo)
    a = np.where(ua > s, lo, np.where(ub > s, cross, hi))
    b = np.where(ua > s, np.where(ub > s, hi, cross), np.where(ub > s, hi, lo))
    return float(np.sum(annulus_measure(a, np.maximum(a, b))))


@dataclass
class RearrangedProfile(FunctionProfile):
    """A non-increasing function of hyperbolic measure ``t``."""

    distribution: DistributionFunction | None = None
    total_measure: float = 0.0


def rearrange_radial(u: Profile) -> RearrangedProfile:
    """Non-increasing rearrangement of ``|u|`` for a radial ``u(rho)``.

    Piecewise-linear profiles with compact support are handled exactly:
    ``lambda_u(s)`` sums annulus volumes and ``u*(t)`` inverts it.
    A monotone callable profile is rearranged by ``u*(t) = u(rho_t)``.
    """
    if isinstance(u, FunctionProfile):
        if not math.isfinite(u.support_end):
            raise UnsupportedProfile("profile has no compact support")
        if not u.monotone_decreasing:
            raise UnsupportedProfile("callable profiles must be flagged monotone_decreasing")
        total = float(ball_measure(u.support_end))
        bps = ball_measure(np.asarray(u.breakpoints, dtype=float))

        def ustar_fn(t):
            return np.abs(u(measure_to_radius(np.maximum(t, 0.0))))

        return RearrangedProfile(ustar_fn, breakpoints=np.asarray(bps), support_end=total,
                                 monotone_decreasing=True, total_measure=total)
    if not isinstance(u, RadialProfile):
        raise UnsupportedProfile(f"cannot rearrange {type(u).__name__}")
    if u.tail != "zero":
        raise UnsupportedProfile("profile has no compact support (tail rule is not 'zero')")
    absu = RadialProfile(u.grid, np.abs(u.values), tail="zero", head=u.head)
    segs = _segments(absu)
    top = float(np.max(np.abs(u.values)))
    total = _superlevel_measure(segs, 0.0)
    node_levels = np.unique(np.abs(u.values))[::-1]
    node_levels = node_levels[node_levels > 0]
    if node_levels.size == 0:
        zero = RearrangedProfile(lambda t: np.zeros_like(np.asarray(t, dtype=float)),
                                 breakpoints=np.zeros(0), support_end=0.0,
                                 monotone_decreasing=True, total_measure=0.0)
        return zero
    node_measures = np.array([_superlevel_measure(segs, s) for s in node_levels])
    dist = DistributionFunction(node_levels, node_measures)

    def lam(s):
        return _superlevel_measure(segs, s)

    def ustar_scalar(t: float) -> float:
        if t >= total:
            return 0.0
        if t < 0:
            return top
        # lambda is nonincreasing; u*(t) = inf{s : lambda(s) <= t}
        i = np.searchsorted(node_measures, t, side="right")
        s_hi = node_levels[i - 1] if i > 0 else top
        s_lo = node_levels[i] if i < node_levels.size else 0.0
        if lam(s_lo) <= t:
            return float(s_lo)
        if lam(s_hi) > t:
            return float(s_hi)
        return float(brentq(lambda s: lam(s) - t, s_lo, s_hi, xtol=1e-15 * max(top, 1.0),
                            rtol=4 * np.finfo(float).eps, maxiter=200))

    def ustar_fn(t):
        t = np.asarray(t, dtype=float)
        return np.array([ustar_scalar(x) for x in t.ravel()]).reshape(t.shape)

    return RearrangedProfile(ustar_fn, breakpoints=np.concatenate([node_measures, [total]]),
                             support_end=total, monotone_decreasing=True, distribution=dist,
                             total_measure=total)


def lp_norm_disc(u: Profile, p: float, tol: float = 1e-11) -> QuadratureResult:
    """``int |u|^p dV`` for a compactly supported radial profile."""
    from .hyperbolic import polar_integrate

    end = u.support_end
    if not math.isfinite(end):
        raise UnsupportedProfile("profile has no compact support")
    bps = [float(x) for x in np.asarray(u.breakpoints) if 0 < x < end]
    return polar_integrate(lambda r: np.abs(u(r)) ** p, tol, rho_max=end, breakpoints=bps)


def lp_norm_line(ustar: RearrangedProfile, p: float, tol: float = 1e-11) -> QuadratureResult:
    """``int_0^inf |u*(t)|^p dt`` for a rearranged profile."""
    end = ustar.support_end
    if end <= 0:
        return QuadratureResult(0.0, 0.0, 0)
    bps = [float(x) for x in np.asarray(ustar.breakpoints) if 0 < x < end]
    return integrate_adaptive(lambda t: np.abs(ustar(t)) ** p, 0.0, end, tol=tol, rtol=1e-11,
                              points=bps)


def check_decreasing(values, tol: float = 0.0) -> None:
    """Raise ``NotDecreasing`` if a sampled sequence increases by more than ``tol``."""
    v = np.asarray(values, dtype=float)
    if np.any(np.diff(v) > tol):
        i = int(np.argmax(np.diff(v)))
        raise NotDecreasing(f"sequence increases at index {i}: {v[i]!r} -> {v[i + 1]!r}")
