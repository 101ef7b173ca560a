import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from tmlab import kernel, rearrangement as R
from tmlab.numerics import RadialProfile


@given(st.floats(-6.0, 6.0))
def test_round_trip(logt):
    t = 10.0 ** logt
    assert R.lambda_phi(float(R.phi_star(t))) == pytest.approx(t, rel=1e-8)


@given(st.floats(-8.0, 8.0))
def test_sup_bound(logt):
    t = 10.0 ** logt
    assert t * float(R.phi_star(t)) ** 2 <= 1.0 / (4 * math.pi) + 1e-9


def test_phi_star_decreasing():
    t = np.geomspace(1e-6, 1e6, 80)
    assert np.all(np.diff(np.asarray(R.phi_star(t))) < 0)


@given(st.floats(0.0, 30.0))
def test_measure_radius_inverse(rho):
    t = float(R.ball_measure(rho))
    assert float(R.measure_to_radius(t)) == pytest.approx(rho, rel=1e-12, abs=1e-14)


@pytest.mark.parametrize("s", [0.01, 0.1, 1.0, 10.0])
def test_distribution_by_quadrature(s):
    assert R.lambda_phi_quadrature(s).value == pytest.approx(R.lambda_phi(s), rel=1e-7)


@pytest.mark.parametrize("rho", [0.01, 1.0, 5.0])
def test_phi_radius_inverts_phi(rho):
    assert R.phi_radius(kernel.phi(rho).value) == pytest.approx(rho, rel=1e-9)


def test_tail_energy_certified():
    te = R.tail_energy(4.0)
    assert math.isfinite(te.value)
    assert te.error_estimate <= 1e-6
    assert 0 < te.value <= te.integral_bound


@given(st.integers(0, 10_000))
def test_rearrangement_preserves_lp_norms(seed):
    rng = np.random.default_rng(seed)
    grid = np.concatenate([[0.0], np.sort(rng.uniform(0.1, 3.0, 5))])
    vals = np.concatenate([rng.uniform(0.0, 2.0, grid.size - 1), [0.0]])
    u = RadialProfile(grid, vals)
    ustar = R.rearrange_radial(u)
    for p in (1.0, 2.0):
        a = R.lp_norm_disc(u, p).value
        b = R.lp_norm_line(ustar, p).value
        assert b == pytest.approx(a, rel=1e-6)


def test_check_decreasing_rejects_increase():
    with pytest.raises(Exception):
        R.check_decreasing([3.0, 2.0, 2.5])
