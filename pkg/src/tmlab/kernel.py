"""Heat kernel and the radial kernel of ``(-Delta_H - 1/4)^(-1/2)`` on the disc.

The kernel is

    phi(rho) = sqrt(2)/(2 pi^2) * int_rho^inf dr / (r sqrt(cosh r - cosh rho))

and is evaluated in two independent parameterizations of the
inverse-square-root endpoint:

* ``r = rho + s^2`` (primary, Gaussian decay in ``s``);
* ``cosh r = cosh rho + e^rho v^2`` (cross-check, power decay in ``v``).

Both are computed for the scaled kernel ``exp(rho/2) phi(rho)`` so that very
large ``rho`` (needed by the rearrangement tail) does not underflow.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import NonConvergence, SubstitutionDisagreement
from .numerics import (QuadratureResult, TailBound, gaussian_tail, integrate_adaptive,
                       integrate_semi_infinite)

PHI_CONST = math.sqrt(2.0) / (2.0 * math.pi ** 2)
HEAT_CONST = math.sqrt(2.0) / (8.0 * math.pi ** 1.5)
SQRT_PI = math.sqrt(math.pi)  # Gamma(1/2)

PHI_RTOL = 1e-12
CERTIFY_RHO_MIN = 1e-3
# Below this radius 2 pi rho phi(rho) = 1 - 0.2206 rho to double precision.
RHO_ASYMPTOTIC = 1e-14

# sqrt(2 / (1 - e^-1)): bounds exp(rho/2) / sqrt(sinh(rho + x/2)) * exp(x/4) for x >= 1
_SINH_ENV = math.sqrt(2.0 / (1.0 - math.exp(-1.0)))


def _log_sinh(y):
    """``log(sinh y)`` for ``y > 0`` without overflow."""
    y = np.asarray(y, dtype=float)
    return y + np.log(-np.expm1(-2.0 * y)) - math.log(2.0)


def _log_shc(v):
    """``log(sinh(v)/v)`` for ``v >= 0`` (0 at ``v = 0``)."""
    v = np.asarray(v, dtype=float)
    small = v < 1e-4
    vs = np.where(small, 1.0, v)
    big = _log_sinh(vs) - np.log(vs)
    return np.where(small, v * v / 6.0, big)


def _phi_sub1(rho: float):
    """Integrand in ``s`` (``r = rho + s^2``) of the scaled integral ``e^{rho/2} int``."""

    def f(s):
        x = s * s
        r = rho + x
        # rho/2 - log(sinh(rho + x/2))/2, written without cancelling the two rho terms
        log_scaled = (-0.25 * x - 0.5 * np.log(-np.expm1(-(2.0 * rho + x)))
                      + 0.5 * math.log(2.0) - 0.5 * _log_shc(0.5 * x))
        return 2.0 * np.exp(log_scaled) / r

    return f


def _phi_sub2(rho: float):
    """Integrand in ``v`` with ``cosh r = cosh rho + e^rho v^2``, scaled by ``e^{rho/2}``."""
    em = math.exp(-rho)
    a_minus = 0.5 * (-math.expm1(-rho)) ** 2  # (1 - e^-rho)^2 / 2
    a_plus = 0.5 * (1.0 + em) ** 2
    k_minus_1 = 0.5 * math.expm1(-2.0 * rho)  # K - 1 at v = 0

    def f(v):
        v2 = v * v
        root = np.sqrt((a_minus + v2) * (a_plus + v2))  # sqrt(K^2 - e^{-2 rho}) = e^{-rho} sinh r
        r = rho + np.log1p(k_minus_1 + v2 + root)
        return 2.0 / (r * root)

    return f


def _sub2_tail(rho: float) -> TailBound:
    # integrand <= 2 / (v^2 * max(rho, rho + log(2 v^2)))
    def envelope(v):
        v = np.asarray(v, dtype=float)
        return 2.0 / (v * v * np.maximum(rho, rho + np.log(2.0 * v * v)))

    def integral(V):
        return 2.0 / (V * max(rho, rho + math.log(2.0 * V * V)))

    return TailBound(envelope, integral, start=1.0)


def _phi_scale_guess(rho: float) -> float:
    """A cheap value within a small factor of ``e^{rho/2} phi(rho)`` (sets absolute tolerances)."""
    b33 = 1.0 / (4.0 * math.pi * (-math.expm1(-rho)) / 2.0) if rho < 50 else 1.0 / (2.0 * math.pi)
    b34 = 1.0 / (math.pi * rho * (-math.expm1(-rho)))
    return min(b33, b34)


def _phi_small(rho: float) -> QuadratureResult:
    v = math.exp(0.5 * rho) / (2.0 * math.pi * rho)
    return QuadratureResult(v, 0.25 * rho * v, 0)


def phi_scaled_sub1(rho: float, rtol: float = PHI_RTOL) -> QuadratureResult:
    """``e^{rho/2} phi(rho)`` via ``r = rho + s^2``."""
    if not rho > 0:
        raise ValueError("phi is defined for rho > 0")
    if rho < RHO_ASYMPTOTIC:
        return _phi_small(rho)
    f = _phi_sub1(rho)
    scale = PHI_CONST
    atol = rtol * _phi_scale_guess(rho) / scale
    pts = [p for p in (math.sqrt(rho) * k for k in (0.1, 1.0, 3.0)) if p < 1.0]
    head = integrate_adaptive(f, 0.0, 1.0, tol=atol / 2, rtol=rtol / 2, points=pts)
    tail = integrate_semi_infinite(f, 1.0, tol=atol / 2, rtol=rtol / 2,
                                   tail=gaussian_tail(2.0 * _SINH_ENV, 2.0, start=1.0))
    return (head + tail).scaled(scale)


def phi_scaled_sub2(rho: float, rtol: float = PHI_RTOL) -> QuadratureResult:
    """``e^{rho/2} phi(rho)`` via ``cosh r = cosh rho + e^rho v^2``."""
    if not rho > 0:
        raise ValueError("phi is defined for rho > 0")
    if rho < RHO_ASYMPTOTIC:
        return _phi_small(rho)
    f = _phi_sub2(rho)
    scale = PHI_CONST
    atol = rtol * _phi_scale_guess(rho) / scale
    pts = [p for p in (math.sqrt(min(rho, 1.0)) * k for k in (0.1, 0.5)) if p < 1.0]
    head = integrate_adaptive(f, 0.0, 1.0, tol=atol / 2, rtol=rtol / 2, points=pts)
    tail = integrate_semi_infinite(f, 1.0, tol=atol / 2, rtol=rtol / 2, tail=_sub2_tail(rho),
                                   geometric=True, max_intervals=20000)
    return (head + tail).scaled(scale)


@dataclass(frozen=True)
class KernelEvaluation:
    """``phi(rho)`` with error estimate and the cross-check value."""

    rho: float
    value: float
    error_estimate: float
    crosscheck: float = math.nan

    @property
    def relative_disagreement(self) -> float:
        if math.isnan(self.crosscheck):
            return math.nan
        return abs(self.value - self.crosscheck) / abs(self.value)


def phi(rho: float, tol: float = PHI_RTOL, *, check: bool = True) -> KernelEvaluation:
    """Evaluate the fractional kernel at ``rho > 0``.

    ``tol`` is a relative tolerance. With ``check=True`` the second
    substitution is evaluated too and a disagreement beyond the summed
    error estimates raises ``SubstitutionDisagreement``.
    """
    rho = float(rho)
    if not rho > 0:
        raise ValueError("phi is defined for rho > 0")
    scale = math.exp(-0.5 * rho)
    r1 = phi_scaled_sub1(rho, tol)
    if not check:
        return KernelEvaluation(rho, r1.value * scale, r1.error_estimate * scale)
    r2 = phi_scaled_sub2(rho, tol)
    budget = 10.0 * (r1.error_estimate + r2.error_estimate) + 1e-13 * abs(r1.value)
    if abs(r1.value - r2.value) > budget:
        raise SubstitutionDisagreement(
            f"phi({rho}): substitutions give {r1.value!r} and {r2.value!r} "
            f"(budget {budget:.3g})")
    return KernelEvaluation(rho, r1.value * scale,
                            (r1.error_estimate + abs(r1.value - r2.value)) * scale,
                            r2.value * scale)


def phi_value(rho, tol: float = PHI_RTOL) -> np.ndarray | float:
    """``phi`` by the primary substitution only; accepts arrays."""
    rho_arr = np.atleast_1d(np.asarray(rho, dtype=float))
    out = np.array([phi_scaled_sub1(r, tol).value * math.exp(-0.5 * r) for r in rho_arr])
    return out.reshape(np.shape(rho)) if np.ndim(rho) else float(out[0])


def phi_scaled(rho, tol: float = PHI_RTOL) -> np.ndarray | float:
    """``exp(rho/2) phi(rho)``; finite for arbitrarily large ``rho``."""
    rho_arr = np.atleast_1d(np.asarray(rho, dtype=float))
    out = np.array([phi_scaled_sub1(r, tol).value for r in rho_arr])
    return out.reshape(np.shape(rho)) if np.ndim(rho) else float(out[0])


def bound_sinh(rho):
    """``1 / (4 pi sinh(rho/2))``."""
    return 1.0 / (4.0 * np.pi * np.sinh(np.asarray(rho, dtype=float) / 2.0))


def bound_rho_sinh(rho):
    """``1 / (2 pi rho sinh(rho/2))``."""
    rho = np.asarray(rho, dtype=float)
    return 1.0 / (2.0 * np.pi * rho * np.sinh(rho / 2.0))


def heat_kernel(t: float, rho: float, tol: float = 1e-11) -> float:
    """Heat kernel of the disc at time ``t`` and geodesic distance ``rho``.

    ``tol`` is relative. The endpoint singularity is removed with
    ``r = rho + s^2``.
    """
    if not t > 0 or rho < 0:
        raise ValueError("heat kernel needs t > 0 and rho >= 0")
    return heat_kernel_result(t, rho, tol).value


def heat_kernel_result(t: float, rho: float, tol: float = 1e-11) -> QuadratureResult:
    t = float(t)
    pref = HEAT_CONST * t ** -1.5 * math.exp(-t / 4.0)
    return _heat_integral(t, float(rho), tol).scaled(pref)


def _heat_integral(t: float, rho: float, tol: float) -> QuadratureResult:
    """``int_rho^inf r e^{-r^2/4t} / sqrt(cosh r - cosh rho) dr`` via ``r = rho + s^2``."""

    def f_general(s):
        x = s * s
        r = rho + x
        log_den = 0.5 * (_log_sinh(np.maximum(rho + 0.5 * x, 1e-300)) + _log_shc(0.5 * x))
        return 2.0 * r * np.exp(-r * r / (4.0 * t) - log_den)

    # at rho = 0, cosh r - 1 = 2 sinh^2(r/2)
    def f_origin(s):
        x = s * s
        with np.errstate(invalid="ignore"):
            out = 2.0 * s * x * np.exp(-x * x / (4.0 * t)) / (math.sqrt(2.0) * np.sinh(0.5 * x))
        return np.where(s == 0.0, 0.0, out)

    f = f_origin if rho == 0.0 else f_general

    peak = max(rho, math.sqrt(2.0 * t))
    guess = max(peak * math.exp(-peak * peak / (4.0 * t) - 0.5 * rho), 1e-300)
    atol = tol * guess
    # 1/sqrt(sinh(rho + x/2) shc(x/2)) <= _SINH_ENV e^{-x/4} for x >= 1; r e^{-r^2/4t} <= sqrt(2t/e)
    env = 2.0 * _SINH_ENV * math.sqrt(2.0 * t) * math.exp(-0.5)
    s_scale = math.sqrt(max(rho, 1e-3))
    pts = [s_scale * k for k in (0.1, 1.0) if s_scale * k < 1.0]
    head = integrate_adaptive(f, 0.0, 1.0, tol=atol / 2, rtol=tol / 2, points=pts)
    tail = integrate_semi_infinite(f, 1.0, tol=atol / 2, rtol=tol / 2,
                                   tail=gaussian_tail(env, 2.0, start=1.0),
                                   points=[math.sqrt(math.sqrt(4.0 * t) * k) for k in (1, 3, 6)])
    return head + tail


def heat_kernel_mass(t: float, tol: float = 1e-9) -> QuadratureResult:
    """``int_B h(t, .) dV = 2 pi int_0^inf h(t, rho) sinh(rho) drho``.

    The radial truncation uses the envelope
    ``h(t, rho) sinh(rho) <= pref * 1.96 sqrt(pi) (rho + 2) exp(rho/2 - rho^2/4t)``,
    which for ``rho >= 4t + 4`` is below ``pref * 3.92 sqrt(pi) rho exp(-rho^2/8t)``.
    """
    from .hyperbolic import polar_integrate

    t = float(t)
    pref = HEAT_CONST * t ** -1.5 * math.exp(-t / 4.0)
    c = pref * 3.92 * SQRT_PI

    def envelope(rho):
        rho = np.asarray(rho, dtype=float)
        return c * rho * np.exp(-rho * rho / (8.0 * t))

    def integral(T):
        return c * 4.0 * t * math.exp(-T * T / (8.0 * t))

    def f(rho):
        rho = np.atleast_1d(rho)
        return np.array([heat_kernel(t, float(r), tol * 1e-2) for r in rho])

    tail = TailBound(envelope, integral, start=4.0 * t + 4.0)
    return polar_integrate(f, tol, tail=tail, breakpoints=[t, 2 * t + 1])


def subordination_value(rho: float, tol: float = 1e-9) -> QuadratureResult:
    """``(1/Gamma(1/2)) int_0^inf t^{-1/2} e^{t/4} h(t, rho) dt`` by iterated quadrature.

    The outer integral runs in ``tau = log t``; both tails are truncated
    with explicit bounds.
    """
    rho = float(rho)
    if rho < 1e-2:
        raise NonConvergence("subordination integral not attempted for rho < 1e-2")

    # t^{-1/2} e^{t/4} h(t, rho) dt = HEAT_CONST t^{-2} J(t) dt = HEAT_CONST t^{-1} J(t) dtau
    def g(tau):
        tau = np.atleast_1d(tau)
        out = np.empty_like(tau)
        for i, tv in enumerate(tau):
            t = math.exp(tv)
            out[i] = HEAT_CONST * _heat_integral(t, rho, tol * 1e-2).value / t
        return out

    # J(t) <= e^{-rho^2/4t} J_inf with J_inf = lim J(t)
    j_inf = _j_infinity(rho)
    scale = _phi_scale_guess(rho) * math.exp(-rho / 2) * PHI_CONST
    T_hi = max(math.log(HEAT_CONST * j_inf / (tol * 1e-2 * scale)), 5.0)
    right_tail = HEAT_CONST * j_inf * math.exp(-T_hi)
    # int_{-inf}^{T} e^{-rho^2/(4 e^tau)} e^{-tau} dtau = (4/rho^2) e^{-y0},  y0 = rho^2 / (4 e^T)
    y0 = 45.0
    T_lo = math.log(rho * rho / (4.0 * y0))
    left_tail = HEAT_CONST * j_inf * 4.0 / (rho * rho) * math.exp(-y0)
    res = integrate_adaptive(g, T_lo, T_hi, tol=tol * 1e-2 * scale, rtol=tol * 1e-2,
                             points=[math.log(rho * rho / 4.0)])
    return QuadratureResult((res.value + 0.5 * (left_tail + right_tail)) / SQRT_PI,
                            (res.error_estimate + left_tail + right_tail) / SQRT_PI,
                            res.evaluations)


def _j_infinity(rho: float) -> float:
    """``int_rho^inf r / sqrt(cosh r - cosh rho) dr`` (the ``t -> inf`` limit of ``J``)."""

    def f(s):
        x = s * s
        r = rho + x
        log_den = 0.5 * (_log_sinh(rho + 0.5 * x) + _log_shc(0.5 * x))
        return 2.0 * r * np.exp(-log_den)

    def envelope(s):
        s = np.asarray(s, dtype=float)
        return 2.0 * _SINH_ENV * (rho + s * s) * np.exp(-s * s / 4.0)

    def integral(T):
        # int_T^inf (rho + s^2) e^{-s^2/4} ds <= (rho + T^2 + 4) * 2/T e^{-T^2/4}  (T >= 2)
        return 2.0 * _SINH_ENV * (rho + T * T + 4.0) * 2.0 / T * math.exp(-T * T / 4.0)

    head = integrate_adaptive(f, 0.0, 2.0, tol=1e-14, rtol=1e-13)
    tail = integrate_semi_infinite(f, 2.0, tol=1e-13, tail=TailBound(envelope, integral, 2.0))
    return head.value + tail.value


def subordination_crosscheck(rho: float, tol: float = 1e-9) -> float:
    """Relative difference between the subordination double integral and ``phi(rho)``."""
    sub = subordination_value(rho, tol)
    direct = phi(rho).value
    return abs(sub.value - direct) / direct


def time_integral_check(r: float, tol: float = 1e-12) -> QuadratureResult:
    """``int_0^inf t^{-2} e^{-r^2/(4t)} dt`` (exactly ``4/r^2``)."""
    from .numerics import power_tail

    def f(t):
        t = np.asarray(t, dtype=float)
        with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
            out = np.where(t > 0, t ** -2.0 * np.exp(-r * r / (4.0 * np.where(t > 0, t, 1.0))), 0.0)
        return out

    start = r * r
    return integrate_semi_infinite(f, 0.0, tol, tail=power_tail(1.0, 2.0, start=start),
                                   geometric=True, points=[r * r / 8.0, r * r / 4.0, r * r])


@dataclass
class BoundSample:
    rho: float
    phi: float
    error: float
    bound_sinh: float
    bound_rho_sinh: float
    crosscheck_rel: float

    @property
    def margin_sinh(self) -> float:
        return self.bound_sinh - self.phi

    @property
    def margin_rho_sinh(self) -> float:
        return self.bound_rho_sinh - self.phi


@dataclass
class BoundCertificate:
    """Per-point margins of the two kernel bounds on a grid."""

    samples: list[BoundSample] = field(default_factory=list)
    runtime_s: float = 0.0

    @property
    def min_margin(self) -> float:
        certified = [s for s in self.samples if s.rho >= CERTIFY_RHO_MIN]
        if not certified:
            return math.inf
        return min(min(s.margin_sinh, s.margin_rho_sinh) for s in certified)

    @property
    def max_disagreement(self) -> float:
        return max((s.crosscheck_rel for s in self.samples), default=0.0)

    @property
    def error_budget(self) -> float:
        return max((s.error for s in self.samples), default=0.0)

    @property
    def passed(self) -> bool:
        return self.min_margin >= -self.error_budget


def check_phi_bounds(rho_grid: Sequence[float], tol: float = PHI_RTOL) -> BoundCertificate:
    """Evaluate both kernel bounds on ``rho_grid``.

    Points below ``CERTIFY_RHO_MIN`` are evaluated and reported but do not
    enter ``min_margin``.
    """
    t0 = time.perf_counter()
    cert = BoundCertificate()
    for rho in rho_grid:
        rho = float(rho)
        if not rho > 0:
            raise ValueError("rho grid must be positive")
        ev = phi(rho, tol)
        cert.samples.append(BoundSample(rho, ev.value, ev.error_estimate,
                                        float(bound_sinh(rho)), float(bound_rho_sinh(rho)),
                                        ev.relative_disagreement))
    cert.runtime_s = time.perf_counter() - t0
    return cert
