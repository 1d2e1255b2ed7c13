"""Occurrence probabilities of the LoS, ground-specular (GS) and
building-scattering (BS) paths of air-to-ground links in stochastic
urban scenes, with Monte Carlo cross-checks and link-planning helpers.

>>> from a2g_paths import LinkGeometry, preset, los_probability
>>> link = LinkGeometry(h_tx=32.0, h_rx=2.0, d_tr=60.0, frequency=28e9)
>>> los_probability(link, preset("urban"))
1.0
"""

__version__ = "0.1.0"

from .analysis import (
    PathProbabilities,
    SearchResult,
    SweepTable,
    bs_optimal_distance,
    elevation_to_distance,
    mcd,
    path_probabilities,
    sweep,
)
from .bs import bs_candidates, bs_probability, scatter_entry_height
from .errors import (
    DegenerateGeometryError,
    InvalidScenarioError,
    NoBuildingsError,
    ParameterError,
    SegmentError,
)
from .fresnel import LinkGeometry, ellipsoid_semiaxes, fresnel_radius, slant_cosine
from .gs import gs_probability, reflection_point
from .los import los_breakdown, los_clearance_height, los_probability
from .scenario import PRESETS, ScenarioParams, preset, rayleigh_cdf, rayleigh_pdf

__all__ = [
    "DegenerateGeometryError",
    "InvalidScenarioError",
    "LinkGeometry",
    "NoBuildingsError",
    "PRESETS",
    "ParameterError",
    "PathProbabilities",
    "ScenarioParams",
    "SearchResult",
    "SegmentError",
    "SweepTable",
    "bs_candidates",
    "bs_optimal_distance",
    "bs_probability",
    "elevation_to_distance",
    "ellipsoid_semiaxes",
    "fresnel_radius",
    "gs_probability",
    "los_breakdown",
    "los_clearance_height",
    "los_probability",
    "mcd",
    "path_probabilities",
    "preset",
    "rayleigh_cdf",
    "rayleigh_pdf",
    "reflection_point",
    "scatter_entry_height",
    "slant_cosine",
    "sweep",
]
