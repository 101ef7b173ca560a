"""Reduction of the critical exponential integral to a one-dimensional lemma.

Given rearranged profiles ``v*`` and ``phi*`` on ``(0, inf)``, the change of
variables ``x = 4 e^{-s}`` produces functions on the real line

    psi(s)    = 2 e^{-s/2} v*(4 e^{-s}),
    varphi(s) = 4 sqrt(pi) e^{-s/2} phi*(4 e^{-s}),

and the kernel

    a(s, t) = varphi(s)                                   for s < t,
    a(s, t) = e^t (int_t^inf e^{-r/2} varphi(r) dr) e^{-s/2}   for s > t.

The exponent ``F(t) = t - (int a(s, t) psi(s) ds)^{n'}`` controls the
integral ``int_0^inf exp(-F(t)) dt``.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence, Union

import numpy as np

from . import kernel
from .errors import Divergence, HypothesisViolated, NotDecreasing, UnsupportedProfile
from .numerics import (ChebyshevTable, FunctionProfile, QuadratureResult, RadialProfile,
                       TailBound, exponential_tail, integrate_adaptive, integrate_semi_infinite)
from .rearrangement import measure_to_radius, phi_star, tail_energy

SQRT_PI = math.sqrt(math.pi)
LOG4 = math.log(4.0)

Profile = Union[RadialProfile, FunctionProfile, "KernelStar"]


# -- profiles on (0, inf) ------------------------------------------------------

@dataclass(frozen=True)
class KernelStar:
    """The rearranged disc kernel ``phi*`` as a profile on ``(0, inf)``."""

    breakpoints: np.ndarray = field(default_factory=lambda: np.zeros(0))
    support_end: float = math.inf
    monotone_decreasing: bool = True
    # sup_x sqrt(x) phi*(x)
    sqrt_sup: float = 1.0 / math.sqrt(4.0 * math.pi)

    def __call__(self, x) -> np.ndarray:
        return np.asarray(phi_star(np.asarray(x, dtype=float)))

    def cumulative(self, X: float, tol: float = 1e-12) -> QuadratureResult:
        """``int_0^X phi*`` computed as ``2 pi int_0^{rho_X} phi(rho) sinh(rho) drho``."""
        if X <= 0:
            return QuadratureResult(0.0, 0.0, 0)
        r = float(measure_to_radius(X))

        def g(rho):
            return 2.0 * np.pi * kernel.phi_value(rho) * np.sinh(rho)

        return integrate_adaptive(g, 0.0, r, tol=tol * max(1.0, math.sqrt(X)), rtol=tol)


def _sup(profile: Profile) -> float:
    v = np.abs(profile(np.array([0.0])))[0] if not isinstance(profile, KernelStar) else math.inf
    return float(v)


def _sqrt_sup(profile: Profile) -> float:
    """An upper bound for ``sup sqrt(x) |f(x)|``."""
    if isinstance(profile, KernelStar):
        return profile.sqrt_sup
    end = profile.support_end
    if not math.isfinite(end):
        raise UnsupportedProfile("profile needs compact support or a declared sqrt bound")
    return _sup(profile) * math.sqrt(end)


def _breakpoints(profile: Profile) -> list[float]:
    return [float(x) for x in np.asarray(profile.breakpoints) if x > 0]


def check_nonincreasing(profile: Profile, name: str = "profile", samples: int = 257) -> None:
    """Sample ``profile`` on a log grid and raise ``NotDecreasing`` on an increase."""
    if isinstance(profile, KernelStar):
        return
    end = profile.support_end if math.isfinite(profile.support_end) else 1e3
    x = np.unique(np.concatenate([np.geomspace(1e-9 * max(end, 1.0), end, samples),
                                  _breakpoints(profile)]))
    y = np.abs(profile(x))
    d = np.diff(y)
    if np.any(d > 1e-12 * max(1.0, float(np.max(y)))):
        i = int(np.argmax(d))
        raise NotDecreasing(f"{name} increases between x={x[i]:.6g} and x={x[i + 1]:.6g}")


def cumulative(profile: Profile, X: float, tol: float = 1e-12) -> QuadratureResult:
    """``int_0^X profile``; an integrable singularity at 0 is allowed."""
    if isinstance(profile, KernelStar):
        return profile.cumulative(X, tol)
    if X <= 0:
        return QuadratureResult(0.0, 0.0, 0)
    end = min(float(X), profile.support_end)
    pts = [p for p in _breakpoints(profile) if p < end]
    return integrate_adaptive(profile, 0.0, end, tol=tol, rtol=tol, points=pts)


def product_tail(v: Profile, p: Profile, t: float, tol: float = 1e-12) -> QuadratureResult:
    """``int_t^inf v(x) p(x) dx`` for profiles of which one has compact support."""
    end = min(v.support_end, p.support_end)
    if not math.isfinite(end):
        raise UnsupportedProfile("one of the profiles must have compact support")
    if t >= end:
        return QuadratureResult(0.0, 0.0, 0)
    pts = [x for x in _breakpoints(v) + _breakpoints(p) if t < x < end]
    return integrate_adaptive(lambda x: v(x) * p(x), t, end, tol=tol, rtol=tol, points=pts)


def oneil_bound(v_star: Profile, phi_star_profile: Profile, t: float,
                tol: float = 1e-12, *, check: bool = True) -> QuadratureResult:
    """``(1/t) int_0^t v* int_0^t phi* + int_t^inf v* phi*``."""
    t = float(t)
    if not t > 0:
        raise ValueError("t must be positive")
    if check:
        check_nonincreasing(v_star, "v*")
        check_nonincreasing(phi_star_profile, "phi*")
    cv = cumulative(v_star, t, tol)
    cp = cumulative(phi_star_profile, t, tol)
    tail = product_tail(v_star, phi_star_profile, t, tol)
    value = cv.value * cp.value / t + tail.value
    err = (abs(cv.value) * cp.error_estimate + abs(cp.value) * cv.error_estimate) / t
    return QuadratureResult(value, err + tail.error_estimate,
                            cv.evaluations + cp.evaluations + tail.evaluations)


def random_profile(seed: int, max_support: float = 8.0) -> RadialProfile:
    """Seeded nonincreasing, compactly supported piecewise-linear profile."""
    rng = np.random.default_rng(seed)
    k = int(rng.integers(2, 8))
    end = float(rng.uniform(0.2, max_support))
    grid = np.concatenate([[0.0], np.sort(rng.uniform(0.0, end, k - 1)), [end]])
    grid = np.unique(grid)
    vals = np.sort(rng.uniform(0.0, 2.0, grid.size))[::-1].copy()
    vals[-1] = 0.0
    return RadialProfile(grid, vals, tail="zero", monotone_decreasing=True)


# -- profiles on the real line -------------------------------------------------

@dataclass(frozen=True)
class LineProfile:
    """A function of ``s`` on the real line.

    It vanishes below ``lower`` and above ``upper``.  Two bounds are
    declared: ``|f| <= sup`` everywhere and ``|f(s)| <= decay_coef * exp(-s/2)``
    (``decay_coef`` is infinite when no such decay holds).
    """

    func: Callable[[np.ndarray], np.ndarray]
    breakpoints: tuple = ()
    lower: float = -math.inf
    upper: float = math.inf
    decay_coef: float = math.inf
    sup: float = math.inf

    def __call__(self, s) -> np.ndarray:
        s = np.asarray(s, dtype=float)
        inside = (s >= self.lower) & (s <= self.upper)
        out = np.zeros_like(s)
        if np.any(inside):
            out[inside] = self.func(s[inside])
        return out


def _to_line(profile: Profile, coef: float) -> LineProfile:
    end = profile.support_end
    lower = math.log(4.0 / end) if math.isfinite(end) else -math.inf
    bps = tuple(sorted(math.log(4.0 / x) for x in _breakpoints(profile) if x < end))

    def f(s):
        s = np.asarray(s, dtype=float)
        return coef * np.exp(-0.5 * s) * profile(4.0 * np.exp(-s))

    # e^{-s/2} = sqrt(x)/2, so |f| <= coef sup(sqrt(x) f*)/2 and |f| <= coef sup(f*) e^{-s/2}
    return LineProfile(f, bps, lower, math.inf, coef * _sup(profile),
                       coef * _sqrt_sup(profile) / 2.0)


def adams_transform(v_star: Profile, phi_star_profile: Profile) -> tuple[LineProfile, LineProfile]:
    """``(psi, varphi)`` obtained from ``(v*, phi*)`` by ``x = 4 e^{-s}``."""
    psi = _to_line(v_star, 2.0)
    varphi = _to_line(phi_star_profile, 4.0 * SQRT_PI)
    return psi, varphi


def _line_integral(f: Callable, lo: float, hi: float, decay: float, rate: float,
                   pts: Sequence[float], tol: float) -> QuadratureResult:
    """``int_lo^hi f`` where ``|f(s)| <= decay * exp(-rate s)`` if ``hi`` is infinite."""
    if not lo < hi:
        return QuadratureResult(0.0, 0.0, 0)
    inner = [p for p in pts if lo < p < hi]
    if math.isfinite(hi):
        return integrate_adaptive(f, lo, hi, tol=tol, rtol=tol, points=inner)
    return integrate_semi_infinite(f, lo, tol=tol, rtol=tol, points=inner,
                                   tail=exponential_tail(decay, rate, start=lo))


def exp_weighted_tail(f: LineProfile, t: float, tol: float = 1e-12) -> QuadratureResult:
    """``int_t^inf e^{-s/2} f(s) ds``."""
    lo = max(t, f.lower)
    if math.isfinite(f.decay_coef):
        coef, rate = f.decay_coef, 1.0
    else:
        coef, rate = f.sup, 0.5
    return _line_integral(lambda s: np.exp(-0.5 * s) * f(s), lo, f.upper, coef, rate,
                          f.breakpoints, tol)


def product_head(psi: LineProfile, varphi: LineProfile, t: float,
                 tol: float = 1e-12) -> QuadratureResult:
    """``int_{-inf}^t psi varphi``; ``psi`` must vanish below a finite point."""
    lo = max(psi.lower, varphi.lower)
    if not math.isfinite(lo):
        raise UnsupportedProfile("psi must vanish below a finite point")
    pts = sorted(set(psi.breakpoints) | set(varphi.breakpoints))
    return _line_integral(lambda s: psi(s) * varphi(s), lo, min(t, psi.upper, varphi.upper),
                          0.0, 1.0, pts, tol)


def l2_norm_line(f: LineProfile, tol: float = 1e-12) -> QuadratureResult:
    """``int f(s)^2 ds``."""
    if math.isinf(f.upper) and math.isinf(f.decay_coef):
        raise UnsupportedProfile("square integrability needs a declared decay")
    return _line_integral(lambda s: f(s) ** 2, f.lower, f.upper, f.decay_coef ** 2, 1.0,
                          f.breakpoints, tol)


def l2_norm_half_line(v: Profile, tol: float = 1e-12) -> QuadratureResult:
    """``int_0^inf v(x)^2 dx`` for a compactly supported profile."""
    end = v.support_end
    if not math.isfinite(end):
        raise UnsupportedProfile("profile has no compact support")
    return integrate_adaptive(lambda x: v(x) ** 2, 0.0, end, tol=tol, rtol=tol,
                              points=[p for p in _breakpoints(v) if p < end])


@dataclass(frozen=True)
class TransformIdentities:
    """Both sides of the two change-of-variables identities at one ``t``."""

    t: float
    product_line: float
    product_half_line: float
    head_line: float
    head_half_line: float

    @property
    def product_rel(self) -> float:
        return abs(self.product_line - self.product_half_line) / max(abs(self.product_half_line), 1e-300)

    @property
    def head_rel(self) -> float:
        return abs(self.head_line - self.head_half_line) / max(abs(self.head_half_line), 1e-300)


def transform_identities(v_star: Profile, phi_star_profile: Profile, t: float,
                         tol: float = 1e-12) -> TransformIdentities:
    """Evaluate both sides of

    ``e^t I_psi(t) I_varphi(t) = (sqrt(pi)/2) e^t int_0^X v* int_0^X phi*`` and
    ``int_{-inf}^t psi varphi = 2 sqrt(pi) int_X^inf v* phi*``, ``X = 4 e^{-t}``,

    the left sides by quadrature in ``s`` and the right sides in ``x``.
    """
    psi, varphi = adams_transform(v_star, phi_star_profile)
    X = 4.0 * math.exp(-t)
    lhs1 = math.exp(t) * exp_weighted_tail(psi, t, tol).value * exp_weighted_tail(varphi, t, tol).value
    rhs1 = (SQRT_PI / 2.0) * math.exp(t) * cumulative(v_star, X, tol).value * \
        cumulative(phi_star_profile, X, tol).value
    lhs2 = product_head(psi, varphi, t, tol).value
    rhs2 = 2.0 * SQRT_PI * product_tail(v_star, phi_star_profile, X, tol).value
    return TransformIdentities(t, lhs1, rhs1, lhs2, rhs2)


def exponent_from_oneil(v_star: Profile, phi_star_profile: Profile, t: float,
                        tol: float = 1e-12) -> tuple[float, float]:
    """``(4 pi u(X)^2, G(t)^2)`` with ``u`` the O'Neil bound at ``X = 4 e^{-t}``.

    The two numbers coincide; ``G`` is computed on the line from the
    transformed profiles.
    """
    X = 4.0 * math.exp(-t)
    u = oneil_bound(v_star, phi_star_profile, X, tol, check=False).value
    psi, varphi = adams_transform(v_star, phi_star_profile)
    g = (math.exp(t) * exp_weighted_tail(psi, t, tol).value *
         exp_weighted_tail(varphi, t, tol).value + product_head(psi, varphi, t, tol).value)
    return 4.0 * math.pi * u * u, g * g


# -- the kernel a(s, t) ---------------------------------------------------------

@dataclass
class AdamsKernel:
    """Kernel ``a(s, t)`` induced by a transformed profile ``varphi``.

    ``table`` is a piecewise Chebyshev interpolant of ``varphi`` on
    ``[s_lo, s_hi]``; ``negative_energy`` is ``int_{-inf}^0 varphi^{n'}``.
    ``b`` is filled in by :func:`kernel_hypotheses`.
    """

    varphi: LineProfile
    table: ChebyshevTable
    negative_energy: QuadratureResult
    n: int = 2
    sup_bound: float = 1.0
    b: float = math.nan
    sup_check: float = math.nan

    @property
    def n_prime(self) -> float:
        return self.n / (self.n - 1.0)

    @property
    def s_lo(self) -> float:
        return self.table.lo

    @property
    def s_hi(self) -> float:
        return self.table.hi

    def inner_tail(self, t) -> np.ndarray:
        """``e^{t/2} int_t^inf e^{-s/2} varphi(s) ds``, table plus a bound beyond ``s_hi``."""
        t = np.atleast_1d(np.asarray(t, dtype=float))
        out = np.array([self.table.exp_tail(x) for x in t])
        beyond = 2.0 * self.sup_bound * np.exp(-0.5 * (self.s_hi - t))
        return out + 0.5 * beyond

    def __call__(self, s, t: float) -> np.ndarray:
        """``a(s, t)``."""
        s = np.asarray(s, dtype=float)
        left = self.varphi(s) if np.any(s < t) else np.zeros_like(s)
        right = math.exp(0.5 * t) * self.inner_tail(t)[0] * np.exp(-0.5 * (s - t))
        return np.where(s < t, left, right)


def _kernel_line(phi_star_profile: Profile) -> LineProfile:
    return adams_transform(RadialProfile([0.0, 1.0], [0.0, 0.0]), phi_star_profile)[1]


def _disc_radius(s: np.ndarray) -> np.ndarray:
    """``rho`` with ``ball_measure(rho) = 4 e^{-s}``, i.e. ``rho = 2 asinh(y)``, ``y = e^{-s/2}/sqrt(pi)``."""
    log_y = -0.5 * s - 0.5 * math.log(math.pi)
    with np.errstate(over="ignore"):
        small = 2.0 * np.arcsinh(np.exp(np.minimum(log_y, 300.0)))
    # asinh(y) = log(2y) + log1p(1/(4y^2) + ...) ~ log(2y) + 1/(4y^2) for large y
    large = 2.0 * (log_y + math.log(2.0)) + 0.5 * np.exp(-2.0 * np.maximum(log_y, 20.0))
    return np.where(log_y < 20.0, small, large)


def _disc_varphi(s):
    s = np.asarray(s, dtype=float)
    rho = _disc_radius(s)
    # varphi = sqrt(4 pi x) phi(rho) = 4 pi sinh(rho/2) phi(rho) = 2 pi (1 - e^{-rho}) e^{rho/2} phi
    return 2.0 * np.pi * (-np.expm1(-rho)) * kernel.phi_scaled(rho)


def disc_negative_energy(tol: float = 1e-6) -> QuadratureResult:
    """``int_{-inf}^0 varphi(s)^2 ds`` for the disc kernel, computed in ``s``.

    From ``phi <= 1/(2 pi rho sinh(rho/2))`` and ``rho >= |s| + log(4/pi)`` for
    ``s <= 0`` the integrand is below ``4 / (|s| + log(4/pi))^2``.
    """
    c = math.log(4.0 / math.pi)

    def f(u):  # u = -s
        return _disc_varphi(-np.asarray(u, dtype=float)) ** 2

    def env(u):
        return 4.0 / (np.asarray(u, dtype=float) + c) ** 2

    tail = TailBound(env, lambda T: 4.0 / (T + c), start=0.0)
    return integrate_semi_infinite(f, 0.0, tol, tail=tail, geometric=True,
                                   max_intervals=20000, truncate_max=1e10)


@functools.lru_cache(maxsize=4)
def disc_kernel(n: int = 2, s_lo: float = -20.0, s_hi: float = 120.0,
                energy_tol: float = 1e-7) -> AdamsKernel:
    """The kernel built from the rearranged disc kernel ``phi*``.

    For ``n = 2`` the negative-line energy is ``4 pi int_4^inf phi*^2``.
    """
    if n != 2:
        raise ValueError("the disc kernel is only tabulated for n = 2")
    varphi = LineProfile(_disc_varphi, (), -math.inf, math.inf, math.inf, 1.0)
    table = ChebyshevTable(_disc_varphi, s_lo, s_hi, tol=1e-14, deg=24,
                           initial=np.arange(s_lo, s_hi, 10.0))
    te = tail_energy(4.0, energy_tol)
    neg = QuadratureResult(4.0 * math.pi * te.value, 4.0 * math.pi * te.error_estimate, 0)
    k = AdamsKernel(varphi, table, neg, n=n, sup_bound=1.0)
    kernel_hypotheses(k)
    return k


def kernel_from_line(varphi: LineProfile, n: int = 2, s_lo: float = -20.0,
                     s_hi: float = 120.0, sup_bound: Optional[float] = None,
                     check: bool = True) -> AdamsKernel:
    """Kernel from a transformed profile that vanishes below ``s_lo``."""
    if varphi.lower < s_lo:
        raise UnsupportedProfile("varphi must vanish below s_lo")
    table = ChebyshevTable(varphi, s_lo, s_hi, tol=1e-14, deg=24,
                           initial=list(np.arange(s_lo, s_hi, 10.0)) + list(varphi.breakpoints))
    npr = n / (n - 1.0)
    neg = integrate_adaptive(lambda s: np.abs(varphi(s)) ** npr, s_lo, 0.0, tol=1e-13,
                             points=[p for p in varphi.breakpoints if s_lo < p < 0]) \
        if s_lo < 0 else QuadratureResult(0.0, 0.0, 0)
    grid = np.linspace(s_lo, s_hi, 2001)
    sup = float(np.max(np.abs(table(grid)))) if sup_bound is None else sup_bound
    k = AdamsKernel(varphi, table, neg, n=n, sup_bound=sup)
    if check:
        kernel_hypotheses(k)
    return k


def kernel_hypotheses(k: AdamsKernel, t_max: float = 50.0, points: int = 501,
                      budget: float = 1e-9) -> tuple[float, float]:
    """Return ``(sup_{0<s} varphi, b)`` and store them on ``k``.

    ``b^{n'} = int_{-inf}^0 varphi^{n'} + sup_t (2/n') (e^{t/2} I(t))^{n'}``;
    the supremum is taken on a grid of ``[0, t_max]`` together with the bound
    ``e^{t/2} I(t) <= 2 sup_{s >= t} varphi`` for ``t > t_max``.
    """
    s = np.concatenate([np.linspace(0.0, k.s_hi, 4001), np.geomspace(1e-8, 1.0, 200)])
    sup_check = float(np.max(k.table(s)))
    if sup_check > 1.0 + budget:
        raise HypothesisViolated(f"sup of varphi on (0, inf) is {sup_check!r} > 1")
    npr = k.n_prime
    t = np.linspace(0.0, t_max, points)
    inner = k.inner_tail(t)
    grid_sup = float(np.max((2.0 / npr) * inner ** npr))
    far = float(np.max(k.table(np.linspace(t_max, k.s_hi, 2001))))
    beyond = (2.0 / npr) * (2.0 * max(far, k.sup_bound if k.s_hi <= t_max else far)) ** npr
    b = (k.negative_energy.value + max(grid_sup, beyond)) ** (1.0 / npr)
    if not math.isfinite(b):
        raise HypothesisViolated("b is not finite")
    k.b, k.sup_check = b, sup_check
    return sup_check, b


# -- the exponential integral ------------------------------------------------------

@dataclass(frozen=True)
class StepProfile:
    """Nonnegative piecewise-constant function on ``[edges[0], edges[-1]]``."""

    edges: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        e = np.asarray(self.edges, dtype=float)
        v = np.asarray(self.values, dtype=float)
        if e.ndim != 1 or v.shape != (e.size - 1,) or np.any(np.diff(e) <= 0):
            raise ValueError("edges must increase and values must have one entry per cell")
        object.__setattr__(self, "edges", e)
        object.__setattr__(self, "values", v)

    def __call__(self, s) -> np.ndarray:
        s = np.asarray(s, dtype=float)
        idx = np.searchsorted(self.edges, s, side="right") - 1
        inside = (idx >= 0) & (idx < self.values.size)
        return np.where(inside, self.values[np.clip(idx, 0, self.values.size - 1)], 0.0)

    def lp_norm(self, p: float) -> float:
        return float(np.sum(np.abs(self.values) ** p * np.diff(self.edges)))

    def scaled(self, c: float) -> "StepProfile":
        return StepProfile(self.edges, c * self.values)


def random_admissible_psi(seed: int, lo: float = -20.0, hi: float = 50.0, n: int = 2,
                          cells: Optional[int] = None) -> StepProfile:
    """Seeded nonnegative step function on ``[lo, hi]`` with ``int psi^n = 1``."""
    rng = np.random.default_rng(seed)
    m = int(cells if cells is not None else rng.integers(4, 64))
    inner = np.sort(rng.uniform(lo, hi, m - 1))
    edges = np.concatenate([[lo], inner, [hi]])
    keep = rng.random(m) < rng.uniform(0.2, 1.0)
    if not np.any(keep):
        keep[rng.integers(m)] = True
    vals = rng.exponential(1.0, m) * keep
    psi = StepProfile(edges, vals)
    return psi.scaled(psi.lp_norm(n) ** (-1.0 / n))


@dataclass(frozen=True)
class ExpIntegral:
    """``int_0^inf exp(-F(t)) dt`` with diagnostics."""

    value: float
    error_estimate: float
    g_infinity: float
    t_support: float
    min_exponent: float


def _g_step(k: AdamsKernel, psi: StepProfile, t: np.ndarray) -> np.ndarray:
    """``int a(s, t) psi(s) ds`` for a step profile, vectorized over ``t``."""
    e, v = psi.edges, psi.values
    a, b = e[:-1], e[1:]
    t2 = t[:, None]
    # head: int_{-inf}^t psi varphi
    upper = np.minimum(t2, b[None, :])
    seg = np.where(upper > a[None, :],
                   k.table.antiderivative(np.maximum(upper, a[None, :])) - k.table.antiderivative(a)[None, :],
                   0.0)
    head = seg @ v
    # e^{t/2} int_t^inf e^{-s/2} psi
    lo = np.maximum(t2, a[None, :])
    part = np.where(b[None, :] > t2,
                    2.0 * (np.exp(-0.5 * (lo - t2)) - np.exp(-0.5 * (b[None, :] - t2))), 0.0)
    tail_psi = part @ v
    return head + tail_psi * k.inner_tail(t)


def exponent(k: AdamsKernel, psi: StepProfile, t) -> np.ndarray:
    """``F(t) = t - G(t)^{n'}``."""
    t = np.atleast_1d(np.asarray(t, dtype=float))
    return t - _g_step(k, psi, t) ** k.n_prime


def adams_exp_integral(k: AdamsKernel, psi: StepProfile, tol: float = 1e-10, *,
                       horizon: float = 1e3, norm_budget: float = 1e-9) -> ExpIntegral:
    """``int_0^inf exp(-F(t)) dt`` for a step profile ``psi`` with ``int psi^n <= 1``.

    Beyond the support of ``psi`` the exponent is ``t - G_inf^{n'}`` exactly,
    so the tail integral ``exp(G_inf^{n'} - T)`` is added analytically.
    ``Divergence`` is raised when ``F(t) >= t/2`` cannot be reached before
    ``horizon``.
    """
    if np.any(psi.values < 0):
        raise ValueError("psi must be nonnegative")
    mass = psi.lp_norm(k.n)
    if mass > 1.0 + norm_budget:
        raise ValueError(f"psi is not admissible: int psi^n = {mass!r} > 1")
    if psi.edges[0] < k.s_lo or psi.edges[-1] > k.s_hi - 60.0:
        raise UnsupportedProfile("psi support must lie inside the tabulated kernel range")
    npr = k.n_prime
    T = max(float(psi.edges[-1]), 0.0)
    g_inf = float(_g_step(k, psi, np.array([T]))[0])
    if 2.0 * g_inf ** npr > horizon:
        raise Divergence(f"F(t) < t/2 up to t = {2.0 * g_inf ** npr:.4g} > horizon {horizon}")
    tail = math.exp(g_inf ** npr - T)
    if T > 0:
        pts = [x for x in psi.edges if 0 < x < T]
        body = integrate_adaptive(lambda t: np.exp(-exponent(k, psi, t)), 0.0, T, tol=tol,
                                  rtol=tol, points=pts)
        grid = np.linspace(0.0, T, 2001)
        fmin = float(np.min(exponent(k, psi, grid)))
    else:
        body = QuadratureResult(0.0, 0.0, 0)
        fmin = -g_inf ** npr
    return ExpIntegral(body.value + tail, body.error_estimate + 1e-15 * tail, g_inf, T, fmin)


@dataclass(frozen=True)
class SuiteResult:
    seeds: tuple
    values: tuple
    maximum: float
    b: float


def random_suite(k: AdamsKernel, seeds: Sequence[int] = range(20), tol: float = 1e-10) -> SuiteResult:
    """Evaluate the exponential integral over seeded admissible profiles."""
    vals = tuple(adams_exp_integral(k, random_admissible_psi(s, n=k.n), tol).value for s in seeds)
    return SuiteResult(tuple(seeds), vals, max(vals), k.b)
