"""Line-of-sight path probability.

The direct path survives when no building along the link pokes into the
lower half of the first Fresnel zone. Each expected building contributes an
independent clearance factor, and the path probability is their product.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .fresnel import LinkGeometry, fresnel_radius, slant_cosine
from .scenario import ScenarioParams, building_positions, rayleigh_cdf

__all__ = [
    "LosClearance",
    "straight_line_height",
    "los_clearance_height",
    "los_factor",
    "los_probability",
    "los_breakdown",
]


@dataclass(frozen=True)
class LosClearance:
    index: int
    position: float
    straight_line_height: float
    clearance_height: float
    factor_probability: float


def straight_line_height(d_i, link: LinkGeometry):
    """Height of the TX-RX ray above ground at horizontal distance ``d_i``."""
    return link.h_tx - np.asarray(d_i, dtype=float) * (link.h_tx - link.h_rx) / link.d_tr


def los_clearance_height(d_i, link: LinkGeometry):
    """Tallest building at ``d_i`` that leaves the first Fresnel zone clear. May be negative."""
    r = fresnel_radius(d_i, link.d_tr, link.wavelength)
    h = straight_line_height(d_i, link) - r / slant_cosine(link.h_tx - link.h_rx, link.d_tr)
    return h[()] if np.ndim(h) == 0 else h


def los_factor(d_i, link: LinkGeometry, params: ScenarioParams):
    return rayleigh_cdf(los_clearance_height(d_i, link), params.gamma)


def los_probability(link: LinkGeometry, params: ScenarioParams) -> float:
    positions = building_positions(link.d_tr, params)
    if positions.size == 0:
        return 1.0
    return float(np.prod(los_factor(positions, link, params)))


def los_breakdown(link: LinkGeometry, params: ScenarioParams) -> list[LosClearance]:
    """Per-building factors whose product is :func:`los_probability`."""
    positions = building_positions(link.d_tr, params)
    if positions.size == 0:
        return []
    line = straight_line_height(positions, link)
    clear = np.atleast_1d(los_clearance_height(positions, link))
    factors = np.atleast_1d(rayleigh_cdf(clear, params.gamma))
    return [
        LosClearance(i + 1, float(positions[i]), float(line[i]), float(clear[i]), float(factors[i]))
        for i in range(positions.size)
    ]
