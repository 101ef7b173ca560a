"""Shared numerical kernels.

Adaptive Gauss-Kronrod quadrature on finite and semi-infinite intervals,
tail envelopes for auditable truncation, a monotone root finder, a damped
Newton solver for small systems, and the sampled radial profile type used
throughout the package.

Integrands are called with 1-D float arrays and must return arrays of the
same shape.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np
from scipy.optimize import brentq

from .errors import NoBracket, NonConvergence, NotMonotone, TailUnbounded

QUAD_TOL = 1e-10
ROOT_TOL = 1e-12

_EPS = np.finfo(float).eps
_UFLOW = np.finfo(float).tiny

# 15-point Kronrod extension of the 7-point Gauss rule (QUADPACK qk15).
_XGK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])
_WGK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])

KRONROD_NODES = np.concatenate([-_XGK[:-1], _XGK[::-1]])
KRONROD_WEIGHTS = np.concatenate([_WGK[:-1], _WGK[::-1]])
# Gauss nodes sit at the odd positions of _XGK (indices 1, 3, 5, 7).
GAUSS_WEIGHTS = np.zeros(15)
GAUSS_WEIGHTS[[1, 3, 5]] = _WG[:3]
GAUSS_WEIGHTS[[13, 11, 9]] = _WG[:3]
GAUSS_WEIGHTS[7] = _WG[3]


@dataclass(frozen=True)
class QuadratureResult:
    """Value of a definite integral with an absolute error estimate."""

    value: float
    error_estimate: float
    evaluations: int

    def __float__(self) -> float:
        return float(self.value)

    def __add__(self, other: "QuadratureResult") -> "QuadratureResult":
        return QuadratureResult(self.value + other.value,
                                self.error_estimate + other.error_estimate,
                                self.evaluations + other.evaluations)

    def scaled(self, c: float) -> "QuadratureResult":
        return QuadratureResult(c * self.value, abs(c) * self.error_estimate,
                                self.evaluations)


def _call(f, x: np.ndarray) -> np.ndarray:
    y = np.asarray(f(x), dtype=float)
    if y.shape != x.shape:
        y = np.broadcast_to(y, x.shape).astype(float)
    return y


def _gk15(f, lo: np.ndarray, hi: np.ndarray):
    """Apply the G7-K15 pair to many intervals at once."""
    center = 0.5 * (lo + hi)
    half = 0.5 * (hi - lo)
    x = center[:, None] + half[:, None] * KRONROD_NODES[None, :]
    fx = _call(f, x.ravel()).reshape(x.shape)
    if not np.all(np.isfinite(fx)):
        bad = x[~np.isfinite(fx)][0]
        raise NonConvergence(f"integrand not finite at x={bad!r}")
    resk = fx @ KRONROD_WEIGHTS
    resg = fx @ GAUSS_WEIGHTS
    resabs = np.abs(fx) @ KRONROD_WEIGHTS
    mean = 0.5 * resk
    resasc = np.abs(fx - mean[:, None]) @ KRONROD_WEIGHTS
    value = resk * half
    resabs = resabs * np.abs(half)
    resasc = resasc * np.abs(half)
    err = np.abs((resk - resg) * half)
    with np.errstate(divide="ignore", invalid="ignore"):
        scaled = resasc * np.minimum(1.0, (200.0 * err / resasc) ** 1.5)
    err = np.where((resasc != 0.0) & (err != 0.0), scaled, err)
    floor = 50.0 * _EPS * resabs
    err = np.where(resabs > _UFLOW / (50.0 * _EPS), np.maximum(err, floor), err)
    return value, err


def integrate_adaptive(
    f: Callable[[np.ndarray], np.ndarray],
    a: float,
    b: float,
    tol: float = QUAD_TOL,
    rtol: float = 0.0,
    *,
    singular: Optional[str] = None,
    points: Optional[Sequence[float]] = None,
    max_intervals: int = 5000,
) -> QuadratureResult:
    """Adaptive Gauss-Kronrod quadrature of ``f`` over ``[a, b]``.

    Parameters
    ----------
    f : callable
        Vectorized integrand.
    a, b : float
        Finite limits with ``a < b``.
    tol, rtol : float
        Stop once the summed error estimate is below ``max(tol, rtol*|I|)``.
    singular : {None, 'left', 'right', 'both'}
        Endpoints carrying an inverse-square-root singularity. They are
        removed with the substitution ``x = a + u**2`` (mirrored on the
        right) before integrating.
    points : sequence of float, optional
        Interior breakpoints (kinks, discontinuities) used as the initial
        partition.
    max_intervals : int
        Budget on the number of live subintervals.

    Raises
    ------
    NonConvergence
        If the budget is exhausted or intervals shrink to rounding level.
    """
    a = float(a)
    b = float(b)
    if not a < b:
        raise ValueError(f"need a < b, got a={a}, b={b}")
    pts = sorted(p for p in (points or ()) if a < p < b)
    if singular in ("left", "right", "both"):
        knots = [a] + pts + [b]
        total = QuadratureResult(0.0, 0.0, 0)
        n = len(knots) - 1
        for i in range(n):
            lo, hi = knots[i], knots[i + 1]
            left = singular in ("left", "both") and i == 0
            right = singular in ("right", "both") and i == n - 1
            if left and right:
                mid = 0.5 * (lo + hi)
                total = total + _sqrt_left(f, lo, mid, tol / (2 * n), rtol, max_intervals)
                total = total + _sqrt_right(f, mid, hi, tol / (2 * n), rtol, max_intervals)
            elif left:
                total = total + _sqrt_left(f, lo, hi, tol / n, rtol, max_intervals)
            elif right:
                total = total + _sqrt_right(f, lo, hi, tol / n, rtol, max_intervals)
            else:
                total = total + _adaptive(f, [lo, hi], tol / n, rtol, max_intervals)
        return total
    if singular is not None:
        raise ValueError(f"unknown singular={singular!r}")
    return _adaptive(f, [a] + pts + [b], tol, rtol, max_intervals)


def sqrt_substitution(f: Callable, a: float) -> Callable:
    """Return ``g(u) = 2u f(a + u**2)``, the integrand after ``x = a + u**2``."""

    def g(u):
        u = np.asarray(u, dtype=float)
        return 2.0 * u * _call(f, a + u * u)

    return g


def _sqrt_left(f, lo, hi, tol, rtol, max_intervals):
    g = sqrt_substitution(f, lo)
    return _adaptive(g, [0.0, math.sqrt(hi - lo)], tol, rtol, max_intervals)


def _sqrt_right(f, lo, hi, tol, rtol, max_intervals):
    def g(u):
        u = np.asarray(u, dtype=float)
        return 2.0 * u * _call(f, hi - u * u)

    return _adaptive(g, [0.0, math.sqrt(hi - lo)], tol, rtol, max_intervals)


def _adaptive(f, knots, tol, rtol, max_intervals) -> QuadratureResult:
    lo = np.asarray(knots[:-1], dtype=float)
    hi = np.asarray(knots[1:], dtype=float)
    vals, errs = _gk15(f, lo, hi)
    nevals = 15 * lo.size
    # heap of (-err, lo, hi, val)
    heap = [(-e, l, h, v) for l, h, v, e in zip(lo, hi, vals, errs)]
    heapq.heapify(heap)
    total = float(np.sum(vals))
    total_err = float(np.sum(errs))
    frozen_err = 0.0
    frozen = []
    while True:
        target = max(tol, rtol * abs(total))
        if total_err + frozen_err <= target:
            break
        if not heap:
            break
        if len(heap) >= max_intervals:
            raise NonConvergence(
                f"adaptive quadrature budget exhausted: estimate {total:.16g}, "
                f"error {total_err + frozen_err:.3g} > {target:.3g}")
        share = target / (2 * len(heap))
        chosen = [heapq.heappop(heap)]
        while heap and -heap[0][0] > share and len(chosen) < 200:
            chosen.append(heapq.heappop(heap))
        split_lo, split_hi = [], []
        for negerr, l, h, v in chosen:
            total -= v
            total_err += negerr
            m = 0.5 * (l + h)
            if not (l < m < h) or (h - l) <= 64 * _EPS * max(abs(l), abs(h), 1e-300):
                # cannot be refined further: keep its contribution, freeze its error
                total += v
                frozen_err += -negerr
                frozen.append(v)
                continue
            split_lo += [l, m]
            split_hi += [m, h]
        if not split_lo:
            continue
        nv, ne = _gk15(f, np.asarray(split_lo), np.asarray(split_hi))
        nevals += 15 * len(split_lo)
        for l, h, v, e in zip(split_lo, split_hi, nv, ne):
            heapq.heappush(heap, (-e, l, h, v))
            total += v
            total_err += e
    if frozen_err > max(tol, rtol * abs(total)):
        raise NonConvergence(
            f"quadrature limited by rounding: error {frozen_err:.3g} at value {total:.16g}")
    # re-sum the pieces to shed drift from the running updates
    total = math.fsum([item[3] for item in heap] + frozen)
    return QuadratureResult(float(total), float(max(total_err, 0.0) + frozen_err), nevals)


@dataclass(frozen=True)
class TailBound:
    """Caller-declared envelope of an integrand on ``[start, inf)``.

    ``envelope(x)`` bounds ``|f(x)|`` pointwise for ``x >= start`` and
    ``integral(T)`` bounds ``int_T^inf envelope`` for ``T >= start``.
    """

    envelope: Callable[[np.ndarray], np.ndarray]
    integral: Callable[[float], float]
    start: float = 0.0


def exponential_tail(coef: float, rate: float, start: float = 0.0) -> TailBound:
    """Envelope ``coef * exp(-rate x)``."""
    return TailBound(lambda x: coef * np.exp(-rate * np.asarray(x, dtype=float)),
                     lambda T: coef * math.exp(-rate * T) / rate, start)


def power_tail(coef: float, power: float, start: float = 1.0) -> TailBound:
    """Envelope ``coef * x**(-power)`` with ``power > 1``."""
    if power <= 1.0:
        raise ValueError("power tail must have exponent > 1 to be integrable")
    if start <= 0.0:
        raise ValueError("power tail needs a positive start")
    return TailBound(lambda x: coef * np.asarray(x, dtype=float) ** (-power),
                     lambda T: coef * T ** (1.0 - power) / (power - 1.0), start)


def gaussian_tail(coef: float, width: float = 1.0, start: float = 0.0) -> TailBound:
    """Envelope ``coef * exp(-(x/width)**2)``."""

    def integral(T):
        return coef * width * math.sqrt(math.pi) / 2.0 * math.erfc(T / width)

    return TailBound(lambda x: coef * np.exp(-(np.asarray(x, dtype=float) / width) ** 2),
                     integral, start)


def integrate_semi_infinite(
    f: Callable[[np.ndarray], np.ndarray],
    a: float,
    tol: float = QUAD_TOL,
    *,
    tail: TailBound,
    rtol: float = 0.0,
    singular: Optional[str] = None,
    points: Optional[Sequence[float]] = None,
    geometric: bool = False,
    max_intervals: int = 5000,
    truncate_max: float = 1e300,
) -> QuadratureResult:
    """Integrate ``f`` over ``[a, inf)`` using a declared tail envelope.

    The truncation point ``T`` is the first of ``start + 2**k`` (or
    geometric ``start * 2**k`` when the tail is a slow power law) with
    ``tail.integral(T) <= tol/2``. The envelope is probed at points of
    ``[start, T]``; a violation raises ``TailUnbounded``. The returned
    error estimate includes the tail bound.
    """
    start = max(float(a), float(tail.start))
    budget = max(tol, 0.0) / 2.0
    T = start + 1.0 if not geometric else max(start, 1.0) * 2.0
    while True:
        tb = tail.integral(T)
        if tb <= budget or T >= truncate_max:
            break
        T = start + 2.0 * (T - start) if not geometric else 2.0 * T
    if tb > budget and rtol == 0.0:
        raise NonConvergence(f"tail bound {tb:.3g} still above {budget:.3g} at T={T:.3g}")
    probes = np.unique(np.concatenate([
        np.linspace(start, T, 9)[1:],
        start + (T - start) * np.logspace(-6, 0, 13),
        [2 * T - start, 4 * T - start],
    ]))
    fv = np.abs(_call(f, probes))
    env = np.asarray(tail.envelope(probes), dtype=float)
    bad = fv > env * (1.0 + 1e-9) + 1e-300
    if np.any(bad):
        x = probes[bad][0]
        raise TailUnbounded(f"|f({x:.6g})| = {fv[bad][0]:.6g} exceeds declared envelope "
                            f"{env[bad][0]:.6g}")
    pts = list(points or ())
    if geometric and T > 10 * max(start, 1.0):
        g = max(start, 1.0) * 4.0
        while g < T:
            pts.append(g)
            g *= 4.0
    body = integrate_adaptive(f, a, T, tol=budget, rtol=rtol, singular=singular,
                              points=pts, max_intervals=max_intervals)
    return QuadratureResult(body.value, body.error_estimate + tb, body.evaluations)


def find_root_monotone(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    tol: float = ROOT_TOL,
    *,
    samples: int = 9,
    monotone_slack: float = 0.0,
) -> float:
    """Root of a monotone function on a bracketing interval.

    The bracket is checked for a sign change and ``f`` is sampled at
    ``samples`` interior points to confirm monotonicity (up to
    ``monotone_slack``) before Brent's method runs with ``xtol=tol``.
    """
    flo, fhi = float(f(lo)), float(f(hi))
    if flo == 0.0:
        return float(lo)
    if fhi == 0.0:
        return float(hi)
    if np.sign(flo) == np.sign(fhi):
        raise NoBracket(f"f({lo})={flo:.3g} and f({hi})={fhi:.3g} have the same sign")
    xs = np.linspace(lo, hi, samples + 2)
    ys = np.array([flo] + [float(f(x)) for x in xs[1:-1]] + [fhi])
    d = np.diff(ys) * np.sign(fhi - flo)
    if np.any(d < -monotone_slack):
        raise NotMonotone(f"sampled values not monotone on [{lo}, {hi}]")
    return float(brentq(f, lo, hi, xtol=tol, rtol=4 * _EPS, maxiter=200))


def damped_newton(
    F: Callable[[np.ndarray], np.ndarray],
    x0: Sequence[float],
    tol: float = 1e-13,
    *,
    jac: Optional[Callable[[np.ndarray], np.ndarray]] = None,
    maxiter: int = 60,
    fd_step: float = 1e-7,
) -> tuple[np.ndarray, float]:
    """Solve ``F(x) = 0`` by Newton's method with backtracking.

    The Jacobian is a forward finite difference unless ``jac`` is given.
    Returns the solution and the final residual norm; raises
    ``NonConvergence`` if the residual stalls above ``tol``.
    """
    x = np.array(x0, dtype=float)
    r = np.asarray(F(x), dtype=float)
    norm = float(np.linalg.norm(r))
    for _ in range(maxiter):
        if norm <= tol:
            return x, norm
        if jac is None:
            J = np.empty((r.size, x.size))
            for j in range(x.size):
                h = fd_step * max(1.0, abs(x[j]))
                xp = x.copy()
                xp[j] += h
                J[:, j] = (np.asarray(F(xp), dtype=float) - r) / h
        else:
            J = np.asarray(jac(x), dtype=float)
        step = np.linalg.lstsq(J, -r, rcond=None)[0]
        lam = 1.0
        while lam > 1e-4:
            xn = x + lam * step
            try:
                rn = np.asarray(F(xn), dtype=float)
                nn = float(np.linalg.norm(rn))
            except (FloatingPointError, ValueError, NonConvergence):
                nn = math.inf
            if np.isfinite(nn) and nn < (1.0 - 1e-4 * lam) * norm:
                break
            lam *= 0.5
        else:
            if norm <= 1e3 * tol:
                return x, norm
            raise NonConvergence(f"damped Newton stalled at residual {norm:.3g}")
        x, r, norm = xn, rn, nn
    if norm <= tol:
        return x, norm
    raise NonConvergence(f"damped Newton did not converge: residual {norm:.3g}")


@dataclass
class RadialProfile:
    """A sampled function of one nonnegative variable.

    Values are linearly interpolated between grid points. Outside the grid
    ``head`` and ``tail`` rules apply: ``'zero'``, ``'constant'`` or
    ``('power', p)`` which continues the end value as ``x**p``.
    """

    grid: np.ndarray
    values: np.ndarray
    tail: object = "zero"
    head: object = "constant"
    monotone_decreasing: bool = False
    interpolation_tol: float = 1e-12

    def __post_init__(self):
        self.grid = np.asarray(self.grid, dtype=float)
        self.values = np.asarray(self.values, dtype=float)
        if self.grid.ndim != 1 or self.grid.shape != self.values.shape:
            raise ValueError("grid and values must be 1-D arrays of equal length")
        if self.grid.size < 2 or np.any(np.diff(self.grid) <= 0):
            raise ValueError("grid must be strictly increasing with at least 2 points")
        if self.grid[0] < 0:
            raise ValueError("grid must be nonnegative")
        for rule in (self.head, self.tail):
            if not (rule in ("zero", "constant") or
                    (isinstance(rule, tuple) and rule[0] == "power")):
                raise ValueError(f"unknown extrapolation rule {rule!r}")
        if self.monotone_decreasing and not self.is_decreasing():
            raise ValueError("profile flagged monotone_decreasing is not")

    def is_decreasing(self) -> bool:
        return bool(np.all(np.diff(self.values) <= self.interpolation_tol))

    @property
    def breakpoints(self) -> np.ndarray:
        return self.grid

    @property
    def support_end(self) -> float:
        """Right end of the support (``inf`` unless the tail rule is ``'zero'``)."""
        return float(self.grid[-1]) if self.tail == "zero" else math.inf

    def __call__(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        y = np.interp(x, self.grid, self.values)
        lo, hi = self.grid[0], self.grid[-1]
        y = np.where(x < lo, self._extrap(x, lo, self.values[0], self.head), y)
        y = np.where(x > hi, self._extrap(x, hi, self.values[-1], self.tail), y)
        return y

    @staticmethod
    def _extrap(x, x0, y0, rule):
        if rule == "zero":
            return np.zeros_like(x)
        if rule == "constant":
            return np.full_like(x, y0)
        p = rule[1]
        with np.errstate(divide="ignore", invalid="ignore"):
            out = y0 * (np.where(x > 0, x, np.nan) / x0) ** p
        return np.where(np.isfinite(out), out, np.inf)

    def slope(self, x) -> np.ndarray:
        """Piecewise derivative (right-continuous inside the grid)."""
        x = np.asarray(x, dtype=float)
        d = np.diff(self.values) / np.diff(self.grid)
        idx = np.clip(np.searchsorted(self.grid, x, side="right") - 1, 0, d.size - 1)
        out = d[idx]
        out = np.where((x < self.grid[0]) | (x >= self.grid[-1]), 0.0, out)
        if isinstance(self.tail, tuple):
            p = self.tail[1]
            x0, y0 = self.grid[-1], self.values[-1]
            out = np.where(x >= x0, y0 * p * np.maximum(x, x0) ** (p - 1) / x0 ** p, out)
        if isinstance(self.head, tuple):
            p = self.head[1]
            x0, y0 = self.grid[0], self.values[0]
            with np.errstate(divide="ignore", invalid="ignore"):
                out = np.where(x < x0, y0 * p * x ** (p - 1) / x0 ** p, out)
        return out


@dataclass
class FunctionProfile:
    """A radial profile given by a vectorized callable.

    ``breakpoints`` lists kinks the quadrature must respect and
    ``support_end`` marks where the function vanishes identically.
    """

    func: Callable[[np.ndarray], np.ndarray]
    breakpoints: np.ndarray = field(default_factory=lambda: np.zeros(0))
    support_end: float = math.inf
    monotone_decreasing: bool = False

    def __call__(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        y = _call(self.func, x.ravel()).reshape(x.shape)
        return np.where(x > self.support_end, 0.0, y)


class ChebyshevTable:
    """Piecewise Chebyshev interpolant of an expensive smooth function.

    Panels are bisected until the trailing coefficients of each degree-``deg``
    interpolant fall below ``tol`` times the running scale of ``f``.
    Evaluation, antiderivatives and exponentially weighted integrals are
    then cheap and vectorized.
    """

    def __init__(self, f: Callable[[np.ndarray], np.ndarray], lo: float, hi: float, *,
                 tol: float = 1e-13, deg: int = 20, initial: Sequence[float] = (),
                 min_width: float = 1e-6, max_panels: int = 2000):
        self.lo, self.hi = float(lo), float(hi)
        edges = sorted({self.lo, self.hi, *[float(x) for x in initial if lo < x < hi]})
        todo = list(zip(edges[:-1], edges[1:]))[::-1]
        done: list[tuple[float, float, np.polynomial.Chebyshev]] = []
        scale = 0.0
        while todo:
            a, b = todo.pop()
            p = np.polynomial.Chebyshev.interpolate(lambda x: _call(f, np.asarray(x, float)),
                                                    deg, domain=[a, b])
            scale = max(scale, float(np.max(np.abs(p.coef))))
            if np.max(np.abs(p.coef[-3:])) <= tol * scale or b - a <= min_width:
                done.append((a, b, p))
            else:
                m = 0.5 * (a + b)
                todo.extend([(m, b), (a, m)])
            if len(done) + len(todo) > max_panels:
                raise NonConvergence("Chebyshev table exceeded its panel budget")
        done.sort(key=lambda item: item[0])
        self.edges = np.array([d[0] for d in done] + [done[-1][1]])
        self.pieces = [d[2] for d in done]
        self._anti = [p.integ(lbnd=a) for a, _, p in done]
        widths = [float(q(b)) for q, (_, b, _) in zip(self._anti, done)]
        self._cum = np.concatenate([[0.0], np.cumsum(widths)])
        gx, gw = np.polynomial.legendre.leggauss(32)
        self._gx, self._gw = gx, gw
        # J_k = int_{e_k}^{e_{k+1}} exp(-(s - e_k)/2) f(s) ds
        self._J = np.array([self._exp_piece(k, self.edges[k], self.edges[k + 1])
                            for k in range(len(self.pieces))])

    @property
    def panels(self) -> int:
        return len(self.pieces)

    def _index(self, x: np.ndarray) -> np.ndarray:
        return np.clip(np.searchsorted(self.edges, x, side="right") - 1, 0, len(self.pieces) - 1)

    def __call__(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        if np.any((x < self.lo) | (x > self.hi)):
            raise ValueError("Chebyshev table evaluated outside its range")
        flat = x.ravel()
        idx = self._index(flat)
        out = np.empty_like(flat)
        for k in np.unique(idx):
            sel = idx == k
            out[sel] = self.pieces[k](flat[sel])
        return out.reshape(x.shape)

    def antiderivative(self, x) -> np.ndarray:
        """``int_lo^x f``."""
        x = np.asarray(x, dtype=float)
        flat = np.clip(x.ravel(), self.lo, self.hi)
        idx = self._index(flat)
        out = np.empty_like(flat)
        for k in np.unique(idx):
            sel = idx == k
            out[sel] = self._cum[k] + self._anti[k](flat[sel])
        return out.reshape(x.shape)

    def _exp_piece(self, k: int, a: float, b: float) -> float:
        if b <= a:
            return 0.0
        s = 0.5 * (a + b) + 0.5 * (b - a) * self._gx
        return float(0.5 * (b - a) * np.sum(self._gw * np.exp(-0.5 * (s - a)) * self.pieces[k](s)))

    def exp_tail(self, t: float) -> float:
        """``int_t^hi exp(-(s - t)/2) f(s) ds``."""
        t = float(t)
        if t >= self.hi:
            return 0.0
        t = max(t, self.lo)
        k = int(self._index(np.array([t]))[0])
        out = self._exp_piece(k, t, self.edges[k + 1])
        if k + 1 < len(self.pieces):
            w = np.exp(-0.5 * (self.edges[k + 1:-1] - t))
            out += float(np.sum(w * self._J[k + 1:]))
        return out
