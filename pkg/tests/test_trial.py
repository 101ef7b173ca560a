import cmath
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from tmlab.conformal import UnitDisc, unit_square
from tmlab.errors import DomainViolation
from tmlab.trial import (Circle, catalog_trials, halfplane_bump, integrate_trial, linear_bump,
                         moser_trial, polygon_bump, power_bump, random_trial, support_inside,
                         zero_trial)
from tmlab.hyperbolic import hyperbolic_circle, psi
from tmlab.numerics import RadialProfile

centers = st.builds(lambda r, t: r * cmath.exp(1j * t), st.floats(0.0, 0.6), st.floats(0, 2 * math.pi))


@given(st.floats(0.05, 0.9))
def test_support_area_euclidean(radius):
    u = power_bump(0j, radius, 2.0, metric="euclidean")
    r = integrate_trial(u, lambda z, v, g: np.ones_like(v))
    assert r.value == pytest.approx(math.pi * radius ** 2, rel=1e-9)


@given(st.floats(0.01, 0.4), st.floats(0.5, 8.0))
def test_moser_energy_closed_form(outer, L):
    u = moser_trial(0j, outer * math.exp(-L), outer)
    r = integrate_trial(u, lambda z, v, g: np.abs(g) ** 2)
    assert r.value == pytest.approx(2 * math.pi / L, rel=1e-8)


@given(centers, st.floats(0.0, 2 * math.pi))
def test_gradient_matches_finite_difference(c, theta):
    u = power_bump(c, 1.0, 3.0)
    z = c + 0.1 * cmath.exp(1j * theta)
    h = 1e-6
    gx = (u.value(z + h) - u.value(z - h)) / (2 * h)
    gy = (u.value(z + 1j * h) - u.value(z - 1j * h)) / (2 * h)
    g = complex(u.grad(z))
    assert abs(g - complex(gx, gy)) <= 1e-6 * max(1.0, abs(g))


def test_circle_image_under_rays():
    c = Circle(0.2 + 0.1j, 0.3)
    hits = c.ray_hits(0.2 + 0.1j, np.array([1.0 + 0j, 1j]))
    assert hits.shape == (2, 2)
    assert np.all(np.isnan(hits[:, 0]))
    assert np.allclose(hits[:, 1], 0.3)


@given(centers, st.floats(0.1, 2.0))
def test_circle_image_is_hyperbolic_circle(c, rho):
    # a geodesic circle about 0 moved by psi_c is the geodesic circle about c
    img = Circle(0j, math.tanh(rho / 2)).image(lambda z: psi(c, z))
    cen, r = hyperbolic_circle(c, rho)
    assert abs(img.center - cen) <= 1e-9
    assert img.radius == pytest.approx(r, rel=1e-9)


@given(st.integers(0, 500))
def test_random_trials_inside_disc(seed):
    u = random_trial(seed)
    assert support_inside(u, UnitDisc())
    assert abs(u.center) < 0.7


def test_scaling_and_zero():
    u = power_bump(0.1j, 1.0)
    assert u.scaled(2.5).value(0.1j) == pytest.approx(2.5 * u.value(0.1j))
    z = zero_trial()
    assert z.is_zero
    assert integrate_trial(z, lambda z_, v, g: np.ones_like(v)).value == 0.0


def test_ambient_check():
    with pytest.raises(DomainViolation):
        moser_trial(0.8, 0.01, 0.5)


def test_polygon_bump_inside_square():
    u = polygon_bump(unit_square(), 0.8)
    assert support_inside(u, unit_square())
    assert u.sup_abs == pytest.approx(1.0)


def test_catalog_covers_kinds():
    names = set(catalog_trials())
    assert {"moser-center", "cayley-pullback", "piecewise-linear"} <= names


def test_halfplane_bump_is_not_on_disc():
    with pytest.raises(DomainViolation):
        halfplane_bump(0.1j, 0.5)


def test_linear_bump_levels():
    u = linear_bump(RadialProfile(np.array([0.0, 1.0]), np.array([2.0, 0.0])))
    r = integrate_trial(u, lambda z, v, g: (np.abs(v) >= 1.0).astype(float), levels=(1.0,))
    # the superlevel set {u >= 1} is the Euclidean disc of radius tanh(1/4)
    assert r.value == pytest.approx(math.pi * math.tanh(0.25) ** 2, rel=1e-9)
