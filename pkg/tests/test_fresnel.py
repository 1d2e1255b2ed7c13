import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from a2g_paths.errors import ParameterError
from a2g_paths.fresnel import SPEED_OF_LIGHT, LinkGeometry, ellipsoid_semiaxes, fresnel_radius, slant_cosine


def test_link_wavelength():
    link = LinkGeometry(202, 2, 500, 1.4e9)
    assert link.wavelength * link.frequency == pytest.approx(SPEED_OF_LIGHT, rel=1e-12)


@pytest.mark.parametrize(
    "args", [(-1, 2, 100, 1e9), (10, -2, 100, 1e9), (10, 2, 0, 1e9), (10, 2, 100, 0)]
)
def test_link_validation(args):
    with pytest.raises(ParameterError):
        LinkGeometry(*args)


def test_semiaxes_examples():
    x, y, z = ellipsoid_semiaxes(1000, 0.01)
    assert x == z == pytest.approx(1.581, abs=5e-4)
    assert y == pytest.approx(math.sqrt(2.5 + 250000), rel=1e-12)
    assert ellipsoid_semiaxes(400, 0.214)[0] == pytest.approx(4.63, abs=5e-3)
    with pytest.raises(ParameterError):
        ellipsoid_semiaxes(0, 0.1)


@given(st.floats(1, 1e4), st.floats(1e-4, 1))
def test_semi_major_at_least_half_span(d, lam):
    assert ellipsoid_semiaxes(d, lam)[1] >= d / 2


def test_radius_special_points():
    d, lam = 800.0, 0.1
    x = ellipsoid_semiaxes(d, lam)[0]
    assert fresnel_radius(d / 2, d, lam) == pytest.approx(x)
    assert fresnel_radius(0.0, d, lam) == 0.0
    with pytest.raises(ParameterError):
        fresnel_radius(d + 1, d, lam)


@given(st.floats(0, 1), st.floats(10, 5000), st.floats(1e-3, 1))
def test_radius_symmetric_and_bounded(frac, d, lam):
    di = frac * d
    r = fresnel_radius(di, d, lam)
    assert r == pytest.approx(fresnel_radius(d - di, d, lam), rel=1e-9, abs=1e-12)
    assert r <= ellipsoid_semiaxes(d, lam)[0] * (1 + 1e-12)


@given(st.floats(0, 1), st.floats(10, 5000), st.floats(1e-3, 1), st.floats(0.1, 10))
def test_radius_scales_with_sqrt_wavelength(frac, d, lam, k):
    di = frac * d
    assert fresnel_radius(di, d, lam * k) == pytest.approx(fresnel_radius(di, d, lam) * math.sqrt(k), rel=1e-9, abs=1e-12)


def test_radius_vectorised():
    r = fresnel_radius(np.array([0, 250, 500, 750, 1000.0]), 1000, 0.01)
    np.testing.assert_allclose(r, [0, 0.790569, 1.581139, 0.790569, 0], atol=1e-6)


def test_slant_cosine_examples():
    assert slant_cosine(0, 100) == 1.0
    assert slant_cosine(100, 100) == pytest.approx(1 / math.sqrt(2))
    assert slant_cosine(200, 400) == pytest.approx(0.8944, abs=5e-5)
    with pytest.raises(ParameterError):
        slant_cosine(1, 0)


@given(st.floats(0, 1e3), st.floats(0, 1e3))
def test_slant_cosine_decreasing(a, b):
    lo, hi = sorted((a, b))
    if hi - lo > 1e-6:
        assert slant_cosine(hi, 500) < slant_cosine(lo, 500)
    assert 0 < slant_cosine(-hi, 500) == slant_cosine(hi, 500) <= 1
