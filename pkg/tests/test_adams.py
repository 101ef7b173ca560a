import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from tmlab import adams
from tmlab.errors import NotDecreasing
from tmlab.numerics import RadialProfile

seeds = st.integers(0, 100_000)


@given(seeds, seeds, st.sampled_from([-1.0, 0.5, 2.0]))
def test_change_of_variables_identities(s1, s2, t):
    r = adams.transform_identities(adams.random_profile(s1), adams.random_profile(s2), t)
    assert r.product_rel <= 1e-6
    assert r.head_rel <= 1e-6


@pytest.mark.parametrize("t", [-1.0, 0.5, 2.0])
def test_identities_with_rearranged_kernel(t):
    r = adams.transform_identities(adams.random_profile(3), adams.KernelStar(), t)
    assert max(r.product_rel, r.head_rel) <= 1e-6


@given(seeds)
def test_transform_is_an_isometry(seed):
    v = adams.random_profile(seed)
    psi, _ = adams.adams_transform(v, adams.KernelStar())
    a = adams.l2_norm_line(psi).value
    b = adams.l2_norm_half_line(v).value
    assert a == pytest.approx(b, rel=1e-8)


@given(seeds)
def test_random_profile_is_admissible(seed):
    v = adams.random_profile(seed)
    adams.check_nonincreasing(v)
    assert v(np.array([v.grid[-1] + 1.0]))[0] == 0.0


def test_increasing_profile_rejected():
    v = RadialProfile(np.array([0.0, 1.0, 2.0]), np.array([0.0, 1.0, 0.0]))
    with pytest.raises(NotDecreasing):
        adams.check_nonincreasing(v)


def test_disc_kernel_hypotheses():
    k = adams.disc_kernel()
    sup, b = adams.kernel_hypotheses(k)
    assert sup <= 1.0 + 1e-9
    assert math.isfinite(b) and b > 0


@given(st.integers(0, 1000))
def test_random_psi_is_normalized(seed):
    psi = adams.random_admissible_psi(seed)
    assert psi.lp_norm(2) == pytest.approx(1.0, rel=1e-12)
    assert np.all(psi.values >= 0)


@pytest.mark.parametrize("seed", range(5))
def test_exp_integral_finite(seed):
    k = adams.disc_kernel()
    r = adams.adams_exp_integral(k, adams.random_admissible_psi(seed, n=k.n))
    assert math.isfinite(r.value) and r.value > 0
