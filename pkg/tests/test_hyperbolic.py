import cmath
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from tmlab.errors import DomainViolation
from tmlab.hyperbolic import (DiscPoint, MobiusMap, ball_volume, cayley, cayley_inverse,
                              hyp_distance, hyperbolic_circle, norm_identity_check,
                              polar_integrate, psi, radius_to_rho, rho_to_radius)
from tmlab.trial import catalog_trials

radius = st.floats(0.0, 0.95)
angle = st.floats(0.0, 2 * math.pi)


@st.composite
def disc_points(draw):
    return draw(radius) * cmath.exp(1j * draw(angle))


@given(disc_points(), disc_points())
def test_psi_is_an_involution(a, z):
    assert abs(psi(a, psi(a, z)) - z) <= 1e-12


@given(disc_points(), disc_points(), disc_points(), angle)
def test_distance_is_mobius_invariant(a, z, w, theta):
    m = MobiusMap(a, theta)
    d1, d2 = hyp_distance(z, w), hyp_distance(m(z), m(w))
    assert abs(d1 - d2) <= 1e-9 * max(1.0, d1)


@given(disc_points(), disc_points(), disc_points())
def test_triangle_inequality(x, y, z):
    assert hyp_distance(x, z) <= hyp_distance(x, y) + hyp_distance(y, z) + 1e-10


@given(st.floats(0.0, 0.999))
def test_distance_from_origin(r):
    assert hyp_distance(r, 0.0) == pytest.approx(math.log((1 + r) / (1 - r)), abs=1e-12)
    assert rho_to_radius(radius_to_rho(r)) == pytest.approx(r, abs=1e-14)


@given(disc_points(), st.floats(0.05, 3.0), angle)
def test_hyperbolic_circle_points_at_distance(c, rho, theta):
    cen, r = hyperbolic_circle(c, rho)
    assert hyp_distance(cen + r * cmath.exp(1j * theta), c) == pytest.approx(rho, rel=1e-8)


@given(st.floats(-5, 5), st.floats(0.01, 5))
def test_cayley_round_trip(x, y):
    z = complex(x, y)
    w = cayley(z)
    assert abs(w) < 1
    assert abs(cayley_inverse(w) - z) <= 1e-9 * (1 + abs(z)) ** 2


def test_domain_checks():
    with pytest.raises(DomainViolation):
        DiscPoint(1.0)
    with pytest.raises(DomainViolation):
        cayley(1.0 - 0.0j)
    with pytest.raises(DomainViolation):
        MobiusMap(1.5)


def test_ball_volume_by_quadrature():
    r = polar_integrate(lambda rho: np.ones_like(rho), 1e-12, rho_max=2.0)
    assert r.value == pytest.approx(float(ball_volume(2.0)), rel=1e-12)


@pytest.mark.parametrize("name", sorted(catalog_trials()))
def test_norm_identity_on_catalog(name):
    r = norm_identity_check(catalog_trials()[name])
    assert r.relative_difference <= 1e-8
