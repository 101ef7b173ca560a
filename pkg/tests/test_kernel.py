import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from tmlab import kernel


@given(st.floats(1e-3, 20.0))
def test_phi_below_both_bounds(rho):
    v = kernel.phi(rho).value
    assert v <= kernel.bound_sinh(rho) + 1e-12
    assert v <= kernel.bound_rho_sinh(rho) + 1e-12


@given(st.floats(1e-3, 20.0))
def test_substitutions_agree(rho):
    assert kernel.phi(rho).relative_disagreement <= 1e-9


def test_phi_is_decreasing():
    r = np.geomspace(1e-3, 30.0, 60)
    v = kernel.phi_value(r)
    assert np.all(np.diff(v) < 0)


def test_small_distance_asymptote():
    # the kernel behaves like the planar Riesz kernel 1/(2 pi rho) near 0
    for rho in (1e-4, 1e-6):
        assert 2 * math.pi * rho * kernel.phi(rho).value == pytest.approx(1.0, abs=1e-3)


def test_certificate_on_log_grid():
    cert = kernel.check_phi_bounds(np.geomspace(1e-3, 20.0, 200))
    assert cert.min_margin >= -1e-9
    assert cert.max_disagreement <= 1e-9
    assert cert.passed


@pytest.mark.parametrize("rho", [0.5, 1.0, 2.0, 3.0, 5.0])
def test_subordination(rho):
    assert kernel.subordination_crosscheck(rho) <= 1e-4


@pytest.mark.parametrize("t", [0.25, 1.0, 4.0])
def test_heat_mass_is_one(t):
    assert abs(kernel.heat_kernel_mass(t).value - 1.0) <= 1e-4


@given(st.floats(0.1, 4.0), st.floats(0.05, 4.0))
def test_heat_kernel_positive_and_decreasing(t, rho):
    a = kernel.heat_kernel(t, rho)
    b = kernel.heat_kernel(t, rho + 0.5)
    assert 0 < b < a


def test_rejects_nonpositive_distance():
    with pytest.raises(ValueError):
        kernel.phi(0.0)
