import cmath
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from tmlab.conformal import UnitDisc, regular_polygon, unit_square
from tmlab.errors import OverflowDetected, ZeroFunction
from tmlab.functionals import (BECKNER_VARIANTS, LEVEL_SET_BOUND, REMAINDER_BOUND,
                               DistanceWeight, beckner_check, beckner_transfer_check,
                               dirichlet_energy, hardy_norm_convex, hardy_norm_disc,
                               hardy_rayleigh, level_set_measure, moser_family,
                               plain_exp_integral, remainder_bound_check, sharpness_sweep,
                               tm_defect, tm_integrand)
from tmlab.trial import (halfplane_bump, halfplane_moser, moser_trial, polygon_bump,
                         power_bump, random_trial, zero_trial)

seeds = st.integers(0, 100_000)
centers = st.builds(lambda r, t: r * cmath.exp(1j * t), st.floats(0.0, 0.6), st.floats(0, 2 * math.pi))


@pytest.fixture(scope="module")
def family():
    return moser_family(np.linspace(1.0, 40.0, 20))


@given(seeds, st.floats(0.1, 10.0))
def test_hardy_norm_is_two_homogeneous(seed, c):
    u = random_trial(seed)
    a = hardy_norm_disc(u).value
    assert hardy_norm_disc(u.scaled(c)).value == pytest.approx(c * c * a, rel=1e-10)


@given(centers, st.floats(0.2, 3.0))
def test_hardy_norm_is_mobius_invariant(c, radius):
    a = hardy_norm_disc(power_bump(0j, radius, 2.0)).value
    b = hardy_norm_disc(power_bump(c, radius, 2.0)).value
    assert b == pytest.approx(a, rel=1e-8)


@given(seeds)
def test_hardy_norm_positive(seed):
    u = random_trial(seed)
    assert 0 < hardy_norm_disc(u).value <= dirichlet_energy(u).value


@given(st.floats(0.0, 0.999), st.floats(0, 2 * math.pi))
def test_weight_chain_pointwise(r, theta):
    z = r * cmath.exp(1j * theta)
    d = UnitDisc().boundary_distance(z)
    assert 1.0 / d ** 2 <= 4.0 / (1.0 - abs(z) ** 2) ** 2 * (1 + 1e-12)


@given(st.floats(-0.4, 0.4), st.floats(-0.4, 0.4))
def test_distance_weight_matches_boundary_distance(x, y):
    sq = unit_square()
    z = complex(x, y) + sq.center()[0]
    assert DistanceWeight(sq)(z) == pytest.approx(sq.boundary_distance(z), rel=1e-12)


@given(st.floats(-50.0, 50.0))
def test_tm_integrand_nonnegative_and_accurate(x):
    v = float(tm_integrand(x))
    assert v >= 0
    if abs(x) < 1:
        ref = math.fsum(x ** k / math.factorial(k) for k in range(2, 40))
    else:
        ref = math.expm1(x) - x
    assert v == pytest.approx(ref, rel=1e-12, abs=1e-300)


@given(seeds)
def test_plain_exp_decomposition(seed):
    r = plain_exp_integral(random_trial(seed), UnitDisc())
    assert r.relative_gap <= 1e-8


@pytest.mark.parametrize("variant", sorted(BECKNER_VARIANTS))
@given(seed=seeds)
def test_beckner_margins(variant, seed):
    r = beckner_check(random_trial(seed), variant)
    assert r.margin >= -1e-6


@given(st.floats(-2.0, 2.0), st.floats(0.5, 3.0), st.floats(0.2, 0.9))
def test_cayley_transfer(x, y, frac):
    F = halfplane_bump(complex(x, y), frac * y, 2.0)
    for v in BECKNER_VARIANTS:
        assert beckner_transfer_check(F, v).relative_difference <= 1e-6


def test_cayley_transfer_moser():
    F = halfplane_moser(0.5 + 2j, 0.01, 1.0)
    assert beckner_transfer_check(F, "p6-c3/16").relative_difference <= 1e-6


def test_moser_family_constants(family):
    for u in family:
        assert hardy_norm_disc(u).value == pytest.approx(1.0, rel=1e-9)
        assert level_set_measure(u).value <= LEVEL_SET_BOUND
        rb = remainder_bound_check(u)
        assert rb.rhs == REMAINDER_BOUND and rb.passed
        disc_w = tm_defect(u, "disc").value
        dist_w = tm_defect(u, "distance", UnitDisc()).value
        assert disc_w <= dist_w <= 4.0 * disc_w


def test_hardy_ordering_on_disc(family):
    for u in family[::4]:
        assert hardy_norm_convex(u, UnitDisc()).value >= hardy_norm_disc(u).value


def test_convex_weight_on_hexagon():
    hexagon = regular_polygon(6)
    u = polygon_bump(hexagon, 0.7)
    assert hardy_norm_convex(u, hexagon).value > 0
    assert tm_defect(u, "distance", hexagon).value > 0


def test_overflow_guard():
    u = moser_trial(0j, 1e-30, 0.5, height=10.0)
    with pytest.raises(OverflowDetected):
        tm_defect(u, "disc")


def test_zero_function():
    with pytest.raises(ZeroFunction):
        hardy_rayleigh(zero_trial())


def test_rayleigh_positive():
    assert hardy_rayleigh(power_bump(0j, 6.0, 2.0)) > 0


def test_sharpness_probe():
    L = np.linspace(1.0, 40.0, 20)
    crit = sharpness_sweep(4 * math.pi, L)
    over = sharpness_sweep(4.4 * math.pi, L)
    assert math.isfinite(crit.max_value)
    assert over.overflow_at is not None or over.final_value > 10 * crit.max_value
