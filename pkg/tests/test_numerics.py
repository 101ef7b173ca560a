import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from tmlab.errors import NoBracket, NonConvergence, NotMonotone, TailUnbounded
from tmlab.numerics import (ChebyshevTable, RadialProfile, damped_newton, exponential_tail,
                            find_root_monotone, integrate_adaptive, integrate_semi_infinite,
                            power_tail)


def test_polynomial_exact():
    r = integrate_adaptive(lambda x: 3 * x ** 2, 0.0, 2.0, tol=1e-12)
    assert r.value == pytest.approx(8.0, rel=1e-14)


def test_endpoint_singularity():
    # int_0^1 x^{-1/2} dx = 2
    r = integrate_adaptive(lambda x: 1 / np.sqrt(x), 0.0, 1.0, tol=1e-12, singular="left")
    assert abs(r.value - 2.0) <= 1e-10
    assert r.error_estimate <= 1e-10


def test_breakpoint_kink():
    r = integrate_adaptive(lambda x: np.abs(x - 0.3), 0.0, 1.0, tol=1e-14, points=[0.3])
    assert r.value == pytest.approx(0.045 + 0.245, rel=1e-13)


def test_semi_infinite_exponential():
    r = integrate_semi_infinite(lambda x: np.exp(-x), 0.0, 1e-12, tail=exponential_tail(1.0, 1.0))
    assert abs(r.value - 1.0) <= 1e-11


def test_semi_infinite_power_law():
    r = integrate_semi_infinite(lambda x: 1 / (1 + x) ** 3, 0.0, 1e-10,
                                tail=power_tail(1.0, 3.0, 1.0), geometric=True)
    assert abs(r.value - 0.5) <= 1e-9


def test_tail_envelope_violation_detected():
    with pytest.raises(TailUnbounded):
        integrate_semi_infinite(lambda x: np.exp(-0.1 * x), 0.0, 1e-10,
                                tail=exponential_tail(1.0, 1.0))


@given(st.floats(0.1, 10.0), st.floats(-0.9, 0.9))
def test_root_of_monotone_function(a, frac):
    b = 10.0 * a * frac
    x = find_root_monotone(lambda t: a * t - b, -10.0, 10.0, tol=1e-14)
    assert abs(a * x - b) <= 1e-12 * max(1.0, abs(b))


def test_root_no_bracket():
    with pytest.raises(NoBracket):
        find_root_monotone(lambda t: t * t + 1, -1.0, 1.0)


def test_root_not_monotone():
    with pytest.raises(NotMonotone):
        find_root_monotone(lambda t: np.cos(5 * t), 0.0, 0.9)


def test_damped_newton_system():
    x, res = damped_newton(lambda v: np.array([v[0] ** 2 + v[1] ** 2 - 1, v[0] - v[1]]), [1.0, 0.2])
    assert res <= 1e-13
    assert x == pytest.approx([math.sqrt(0.5)] * 2, rel=1e-12)


def test_damped_newton_no_solution():
    with pytest.raises(NonConvergence):
        damped_newton(lambda v: np.array([v[0] ** 2 + 1.0]), [0.5])


def test_radial_profile_interpolation():
    p = RadialProfile(np.array([0.0, 1.0, 2.0]), np.array([2.0, 1.0, 0.0]))
    assert p(np.array([0.5, 1.5, 3.0])) == pytest.approx([1.5, 0.5, 0.0])


@given(st.floats(-3.0, 3.0))
def test_chebyshev_table_matches_function(x):
    t = ChebyshevTable(np.sin, -3.0, 3.0, tol=1e-14)
    assert abs(t(np.array([x]))[0] - math.sin(x)) <= 1e-12
