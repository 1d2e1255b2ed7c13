import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from a2g_paths.errors import DegenerateGeometryError, SegmentError
from a2g_paths.fresnel import LinkGeometry, slant_cosine
from a2g_paths.gs import (
    gs_geometry,
    gs_incident_factor,
    gs_incident_height,
    gs_probability,
    gs_reflection_factor,
    gs_reflection_height,
    incident_positions,
    reflection_point,
    reflection_positions,
)
from a2g_paths.scenario import ScenarioParams, preset

from .conftest import PRESET_NAMES, link_for_wavelength


def test_reflection_point_examples():
    assert reflection_point(LinkGeometry(40, 40, 300, 1e9)) == 150
    assert reflection_point(LinkGeometry(40, 0, 300, 1e9)) == 300
    assert reflection_point(LinkGeometry(202, 2, 500, 1e9)) == pytest.approx(495.098, abs=1e-3)
    with pytest.raises(DegenerateGeometryError):
        reflection_point(LinkGeometry(0, 0, 300, 1e9))


def test_geometry_record(urban):
    link = LinkGeometry(202, 2, 500, 1.4e9)
    g = gs_geometry(link, urban)
    assert 0 < g.d_tg < link.d_tr
    assert g.cos_theta2 == pytest.approx(500 / math.sqrt(500**2 + 204**2))
    assert g.n_incident == math.floor(g.d_tg * math.sqrt(150) / 1000)
    assert g.n_reflection == 0


def test_incident_heights():
    link = link_for_wavelength(202, 2, 500, 1e-12)
    d_tg = reflection_point(link)
    assert gs_incident_height(1e-9, link) == pytest.approx(202, abs=1e-6)
    assert gs_incident_height(d_tg / 2, link) == pytest.approx(101, abs=1e-4)
    assert gs_incident_factor(1e-9, link, preset("urban")) == pytest.approx(1.0)


def test_reflection_heights():
    link = link_for_wavelength(20, 20, 400, 1e-12)
    assert gs_reflection_height(400, link) == pytest.approx(20, abs=1e-6)
    assert gs_reflection_height(200, link) == pytest.approx(0, abs=1e-4)
    p = ScenarioParams(0.3, 500, 15)
    assert gs_reflection_factor(400, link, p) == pytest.approx(1 - math.exp(-400 / 450), rel=1e-6)


def test_reflection_factor_hand_value():
    # clearance of 2 m under gamma = 15
    assert 1 - math.exp(-4 / 450) == pytest.approx(0.00885, abs=1e-5)
    link = link_for_wavelength(2, 2, 400, 1e-14)
    assert gs_reflection_factor(400, link, ScenarioParams(0.3, 500, 15)) == pytest.approx(0.00885, abs=1e-5)


def test_clamped_factor():
    link = LinkGeometry(202, 2, 800, 1e9)
    d_tg = reflection_point(link)
    assert gs_incident_height(d_tg - 0.1, link) < 0
    assert gs_incident_factor(d_tg - 0.1, link, preset("urban")) == 0.0


def test_segment_membership():
    link = LinkGeometry(100, 100, 400, 1e9)
    p = preset("urban")
    with pytest.raises(SegmentError):
        gs_incident_factor(200, link, p)
    with pytest.raises(SegmentError):
        gs_reflection_factor(200, link, p)


def test_segment_positions_stay_on_segment(urban):
    link = LinkGeometry(120, 60, 1400, 1.4e9)
    d_tg = reflection_point(link)
    inc, ref = incident_positions(link, urban), reflection_positions(link, urban)
    assert inc.size and ref.size
    assert np.all(inc < d_tg) and np.all(ref > d_tg) and np.all(ref <= link.d_tr)
    w = urban.width
    np.testing.assert_allclose(inc, (np.arange(1, inc.size + 1) - 0.5) * d_tg / inc.size + w / 2)


def test_empty_products(urban):
    assert gs_probability(LinkGeometry(202, 2, 60, 1.4e9), urban) == 1.0


def test_zero_height_terminal_collapses_segment(urban):
    link = LinkGeometry(50, 0, 600, 1.4e9)
    assert reflection_positions(link, urban).size == 0
    assert 0 <= gs_probability(link, urban) <= 1


def test_mirror_cosine(urban):
    link = LinkGeometry(202, 2, 500, 1.4e9)
    assert gs_geometry(link, urban).cos_theta2 == slant_cosine(204, 500)


links = st.builds(
    LinkGeometry,
    h_tx=st.floats(0.5, 2000),
    h_rx=st.floats(0, 50),
    d_tr=st.floats(1, 3000),
    frequency=st.floats(1e8, 1e11),
)


@given(links, st.sampled_from(PRESET_NAMES))
def test_probability_in_unit_interval(link, name):
    assert 0.0 <= gs_probability(link, preset(name)) <= 1.0


@given(st.floats(100, 1500), st.floats(5, 60), st.floats(1.01, 3))
def test_non_increasing_in_gamma(d, g, k):
    link = LinkGeometry(202, 2, d, 1.4e9)
    base = ScenarioParams(0.3, 500, g)
    inc = incident_positions(link, base)
    ref = reflection_positions(link, base)
    heights = np.concatenate([np.atleast_1d(gs_incident_height(inc, link)) if inc.size else inc,
                              np.atleast_1d(gs_reflection_height(ref, link)) if ref.size else ref])
    if np.any(heights <= 0):
        return
    assert gs_probability(link, ScenarioParams(0.3, 500, g * k)) <= gs_probability(link, base) + 1e-15
