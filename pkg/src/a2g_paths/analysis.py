"""Link-planning computations on top of the three path models.

Parameter sweeps, the elevation-angle view of a link, maximum communication
distance (MCD) at a probability threshold, and the distance that maximises
the building-scattering probability.

Probability curves are piecewise: the expected building count is floored,
so every extra building makes the curve jump. Searches below therefore
scan a grid first and only refine inside a scanned bracket.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Callable

import numpy as np
from scipy.optimize import minimize_scalar

from .bs import BsMode, bs_probability
from .errors import ParameterError
from .fresnel import LinkGeometry
from .gs import gs_probability
from .los import los_probability
from .montecarlo.oracle import normalise_path
from .scenario import ScenarioParams

AXES = ("distance", "altitude", "elevation", "frequency")

__all__ = [
    "AXES",
    "PathProbabilities",
    "SweepTable",
    "SearchResult",
    "path_probabilities",
    "probability_function",
    "elevation_to_distance",
    "sweep",
    "mcd",
    "bs_optimal_distance",
]


@dataclass(frozen=True)
class PathProbabilities:
    p_los: float
    p_gs: float
    p_bs: float


@dataclass(frozen=True)
class SweepTable:
    axis: str
    values: tuple[float, ...]
    rows: tuple[PathProbabilities, ...]
    metadata: dict = field(default_factory=dict)

    def as_records(self) -> list[dict]:
        return [
            {"axis_name": self.axis, "axis_value": v, **asdict(r)}
            for v, r in zip(self.values, self.rows)
        ]


@dataclass(frozen=True)
class SearchResult:
    """Distance found by a search plus flags describing degenerate outcomes.

    ``saturated``: the threshold holds all the way to ``d_max``.
    ``empty``: the threshold is never met, or the curve is zero everywhere.
    """

    distance: float
    probability: float
    saturated: bool = False
    empty: bool = False


def path_probabilities(link: LinkGeometry, params: ScenarioParams, mode: BsMode = "corrected") -> PathProbabilities:
    return PathProbabilities(
        los_probability(link, params),
        gs_probability(link, params),
        bs_probability(link, params, mode),
    )


def probability_function(path: str, link: LinkGeometry, params: ScenarioParams, mode: BsMode = "corrected") -> Callable[[float], float]:
    """Path probability as a function of horizontal distance, other link fields fixed."""
    path = normalise_path(path)
    if path == "los":
        return lambda d: los_probability(link.at_distance(d), params)
    if path == "gs":
        return lambda d: gs_probability(link.at_distance(d), params)
    return lambda d: bs_probability(link.at_distance(d), params, mode)


def elevation_to_distance(theta: float, h_tr: float) -> float:
    """Horizontal distance at which a relative height ``h_tr`` is seen at elevation ``theta`` (rad)."""
    if not 0.0 < theta < math.pi / 2.0:
        raise ParameterError(f"elevation must be in (0, pi/2) rad, got {theta}")
    if not h_tr > 0.0:
        raise ParameterError(f"relative height must be positive, got {h_tr}")
    return h_tr / math.tan(theta)


def _link_at(axis: str, value: float, template: LinkGeometry) -> LinkGeometry:
    if axis == "distance":
        return template.at_distance(value)
    if axis == "altitude":
        return LinkGeometry(value, template.h_rx, template.d_tr, template.frequency)
    if axis == "frequency":
        return LinkGeometry(template.h_tx, template.h_rx, template.d_tr, value)
    # elevation in degrees, relative height taken from the template
    h_tr = template.h_tx - template.h_rx
    return template.at_distance(elevation_to_distance(math.radians(value), h_tr))


def sweep(
    axis: str,
    values,
    template: LinkGeometry,
    params: ScenarioParams,
    mode: BsMode = "corrected",
    workers: int = 1,
    metadata: dict | None = None,
) -> SweepTable:
    """Evaluate all three models along one axis.

    ``values`` are meters for distance and altitude, degrees for elevation
    and Hz for frequency. Altitude sweeps move TX with RX fixed.
    """
    if axis not in AXES:
        raise ParameterError(f"unknown axis {axis!r}; expected one of {AXES}")
    values = tuple(float(v) for v in np.atleast_1d(values))
    if not values:
        raise ParameterError("sweep range is empty")
    if any(b <= a for a, b in zip(values, values[1:])):
        raise ParameterError("sweep range must be strictly increasing")
    links = [_link_at(axis, v, template) for v in values]

    def point(link):
        return path_probabilities(link, params, mode)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = tuple(pool.map(point, links))
    else:
        rows = tuple(point(link) for link in links)
    meta = {"mode": mode, "template": asdict(template), "params": asdict(params)}
    meta.update(metadata or {})
    return SweepTable(axis, values, rows, meta)


def _grid(d_max: float, step: float) -> np.ndarray:
    if not d_max > 0.0:
        raise ParameterError(f"d_max must be positive, got {d_max}")
    if not step > 0.0:
        raise ParameterError(f"grid step must be positive, got {step}")
    grid = np.arange(step, d_max + 1e-9, step)
    if grid.size == 0 or grid[-1] < d_max - 1e-9:
        grid = np.append(grid, d_max)
    return grid


def mcd(
    path: str,
    threshold: float,
    template: LinkGeometry,
    params: ScenarioParams,
    mode: BsMode = "corrected",
    d_max: float = 1500.0,
    step: float = 1.0,
    tol: float = 0.1,
) -> SearchResult:
    """Largest distance in ``(0, d_max]`` whose path probability still meets ``threshold``.

    The last grid point meeting the threshold brackets the crossing together
    with its right neighbour; bisection narrows that bracket to ``tol``.
    """
    if not 0.0 < threshold < 1.0:
        raise ParameterError(f"threshold must be in (0, 1), got {threshold}")
    prob = probability_function(path, template, params, mode)
    grid = _grid(d_max, step)
    p = np.array([prob(d) for d in grid])
    good = np.nonzero(p >= threshold)[0]
    if good.size == 0:
        return SearchResult(0.0, float(p.max()), empty=True)
    last = good[-1]
    if last == grid.size - 1:
        return SearchResult(float(grid[-1]), float(p[-1]), saturated=True)
    lo, hi = float(grid[last]), float(grid[last + 1])
    p_lo = float(p[last])
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        p_mid = prob(mid)
        if p_mid >= threshold:
            lo, p_lo = mid, p_mid
        else:
            hi = mid
    return SearchResult(lo, p_lo)


def bs_optimal_distance(
    template: LinkGeometry,
    params: ScenarioParams,
    mode: BsMode = "corrected",
    d_max: float = 1500.0,
    step: float = 1.0,
    tol: float = 0.1,
) -> SearchResult:
    """Distance in ``(0, d_max]`` maximising the building-scattering probability.

    Grid argmax (first one on ties), then golden-section refinement between
    its neighbours. The refined point is kept only if it beats the grid point.
    """
    prob = probability_function("bs", template, params, mode)
    grid = _grid(d_max, step)
    p = np.array([prob(d) for d in grid])
    k = int(np.argmax(p))
    best_d, best_p = float(grid[k]), float(p[k])
    if best_p <= 0.0:
        return SearchResult(float(grid[0]), 0.0, empty=True)
    if 0 < k < grid.size - 1 and p[k - 1] < best_p and p[k + 1] < best_p:
        res = minimize_scalar(
            lambda d: -prob(d),
            bracket=(float(grid[k - 1]), best_d, float(grid[k + 1])),
            method="golden",
            options={"xtol": tol / best_d},
        )
        d_ref = float(res.x)
        if grid[k - 1] < d_ref < grid[k + 1]:
            p_ref = prob(d_ref)
            if p_ref > best_p:
                best_d, best_p = d_ref, p_ref
    return SearchResult(best_d, best_p)
