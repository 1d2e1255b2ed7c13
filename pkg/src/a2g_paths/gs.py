"""Ground-specular path probability via the mirror-image transmitter.

Reflecting TX through the ground turns the bounce into a straight TX'-RX
ray. Buildings between TX and the reflection point must stay under the
incident ray, buildings between the reflection point and RX under the
reflected ray, both with the first Fresnel zone carved out.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateGeometryError, SegmentError
from .fresnel import LinkGeometry, fresnel_radius, slant_cosine
from .scenario import ScenarioParams, expected_building_count, rayleigh_cdf, segment_positions

__all__ = [
    "GsGeometry",
    "reflection_point",
    "gs_geometry",
    "incident_positions",
    "reflection_positions",
    "gs_incident_height",
    "gs_reflection_height",
    "gs_incident_factor",
    "gs_reflection_factor",
    "gs_probability",
]


@dataclass(frozen=True)
class GsGeometry:
    d_tg: float
    cos_theta2: float
    n_incident: int
    n_reflection: int


def reflection_point(link: LinkGeometry) -> float:
    """Horizontal distance from TX to the specular point on the ground."""
    total = link.h_tx + link.h_rx
    if total <= 0.0:
        raise DegenerateGeometryError("both terminals at ground level")
    # min() absorbs round-off when h_rx == 0
    return min(link.d_tr * link.h_tx / total, link.d_tr)


def gs_geometry(link: LinkGeometry, params: ScenarioParams) -> GsGeometry:
    d_tg = reflection_point(link)
    return GsGeometry(
        d_tg=d_tg,
        cos_theta2=slant_cosine(link.h_tx + link.h_rx, link.d_tr),
        n_incident=expected_building_count(d_tg, params),
        n_reflection=expected_building_count(link.d_tr - d_tg, params),
    )


def incident_positions(link: LinkGeometry, params: ScenarioParams) -> np.ndarray:
    g = gs_geometry(link, params)
    return segment_positions(0.0, g.d_tg, g.n_incident, params.width)


def reflection_positions(link: LinkGeometry, params: ScenarioParams) -> np.ndarray:
    g = gs_geometry(link, params)
    return segment_positions(g.d_tg, link.d_tr - g.d_tg, g.n_reflection, params.width)


def _fresnel_drop(d_i, link: LinkGeometry):
    # the radius is taken over the full TX-RX span, not the segment
    return fresnel_radius(d_i, link.d_tr, link.wavelength) / slant_cosine(
        link.h_tx + link.h_rx, link.d_tr
    )


def gs_incident_height(d_i, link: LinkGeometry):
    d_tg = reflection_point(link)
    d_i = np.asarray(d_i, dtype=float)
    h = link.h_tx * (d_tg - d_i) / d_tg - _fresnel_drop(d_i, link)
    return h[()] if h.ndim == 0 else h


def gs_reflection_height(d_i, link: LinkGeometry):
    d_tg = reflection_point(link)
    d_i = np.asarray(d_i, dtype=float)
    h = link.h_rx * (d_i - d_tg) / (link.d_tr - d_tg) - _fresnel_drop(d_i, link)
    return h[()] if h.ndim == 0 else h


def gs_incident_factor(d_i: float, link: LinkGeometry, params: ScenarioParams) -> float:
    """Probability that a building at ``d_i`` (before the bounce) clears the incident ray."""
    d_tg = reflection_point(link)
    if not d_i < d_tg:
        raise SegmentError(f"d_i={d_i} is not on the incident segment [0, {d_tg})")
    return float(rayleigh_cdf(gs_incident_height(d_i, link), params.gamma))


def gs_reflection_factor(d_i: float, link: LinkGeometry, params: ScenarioParams) -> float:
    """Probability that a building at ``d_i`` (after the bounce) clears the reflected ray."""
    d_tg = reflection_point(link)
    if not d_i > d_tg:
        raise SegmentError(f"d_i={d_i} is not on the reflection segment ({d_tg}, {link.d_tr}]")
    return float(rayleigh_cdf(gs_reflection_height(d_i, link), params.gamma))


def gs_clearance_heights(link: LinkGeometry, params: ScenarioParams) -> tuple[np.ndarray, np.ndarray]:
    """Clearance heights for every incident slot and every reflection slot."""
    inc = incident_positions(link, params)
    ref = reflection_positions(link, params)
    return (
        np.atleast_1d(gs_incident_height(inc, link)) if inc.size else inc,
        np.atleast_1d(gs_reflection_height(ref, link)) if ref.size else ref,
    )


def gs_probability(link: LinkGeometry, params: ScenarioParams) -> float:
    inc, ref = gs_clearance_heights(link, params)
    p = 1.0
    if inc.size:
        p *= float(np.prod(rayleigh_cdf(inc, params.gamma)))
    if ref.size:
        p *= float(np.prod(rayleigh_cdf(ref, params.gamma)))
    return p
