import cmath
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from tmlab.conformal import (HalfPlane, Strip, UnitDisc, catalog_map,
                             geometric_inequality_margin, l_shape, load_polygon,
                             random_convex_polygon, regular_polygon, relative_margin, sc_map,
                             unit_square)
from tmlab.errors import ConfigError, DegenerateInput, OutsideDomain


@pytest.fixture(scope="module")
def square_map():
    return sc_map(unit_square())


@given(st.floats(0.0, 0.99), st.floats(0.0, 2 * math.pi))
def test_disc_margin_closed_form(r, theta):
    z = r * cmath.exp(1j * theta)
    m = geometric_inequality_margin(UnitDisc(), catalog_map("disc"), z)
    assert m == pytest.approx(1.0 / (2.0 * (1.0 + r)), rel=1e-12)


@given(st.floats(-10, 10), st.floats(1e-3, 10))
def test_half_plane_is_equality(x, y):
    m = relative_margin(HalfPlane(), catalog_map("half-plane-to-disc"), complex(x, y))
    assert abs(m) <= 1e-10


@given(st.floats(-5, 5), st.floats(0.01, math.pi - 0.01))
def test_strip_margin_nonnegative(x, y):
    assert geometric_inequality_margin(Strip(), catalog_map("strip-to-disc"), complex(x, y)) >= -1e-12


def test_disc_asymptote_decreases():
    rel = [relative_margin(UnitDisc(), catalog_map("disc"), r) for r in (0.9, 0.99, 0.999)]
    assert rel[0] > rel[1] > rel[2] > 0
    assert rel[2] < 1e-3


@pytest.mark.parametrize("poly", [unit_square(), regular_polygon(6)] +
                         [random_convex_polygon(s) for s in range(3)], ids=lambda p: p.name)
def test_polygon_margin_and_round_trip(poly):
    F = sc_map(poly)
    z = poly.sample_interior(200, 1e-3 * poly.diameter, 1)
    assert np.min(F.density(z) - 0.5 / poly.boundary_distance(z)) >= -1e-6
    assert np.max(np.abs(F.sc(F.forward(z)) - z)) <= 1e-8 * poly.diameter
    assert F.vertex_error <= 1e-8


def test_map_normalization(square_map):
    c = unit_square().center()[0]
    assert abs(square_map.forward(c)) <= 1e-10


@given(st.integers(0, 50))
def test_random_polygons_are_convex(seed):
    p = random_convex_polygon(seed)
    assert 6 <= p.n <= 12
    assert np.all(p.interior_angles < 1.0)


def test_l_shape_violates():
    p = l_shape()
    F = sc_map(p)
    z = p.sample_interior(500, 1e-3 * p.diameter, 0)
    assert np.min(F.density(z) - 0.5 / p.boundary_distance(z)) < 0


def test_outside_point_rejected(square_map):
    with pytest.raises(OutsideDomain):
        square_map.forward(5.0 + 5.0j)


def test_polygon_file_errors(tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("0 0\n1\n")
    with pytest.raises(ConfigError):
        load_polygon(bad)
    with pytest.raises(ConfigError):
        load_polygon(tmp_path / "missing.txt")
    good = tmp_path / "tri.txt"
    good.write_text("# triangle\n0, 0\n1 0\n0.3 0.8\n")
    assert load_polygon(good).n == 3


def test_degenerate_polygon():
    from tmlab.conformal import ConvexPolygon
    with pytest.raises(DegenerateInput):
        ConvexPolygon(np.array([0, 1, 2], dtype=complex))
