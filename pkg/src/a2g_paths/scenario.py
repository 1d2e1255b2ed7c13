"""Stochastic description of an urban area.

A city is summarised by three numbers: the built-up fraction ``alpha``,
the building density ``beta`` (buildings per km^2) and the Rayleigh scale
``gamma`` of building heights (m). From these follow an average building
width, an average street width, the expected number of buildings crossed
by a link and their nominal positions along it.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidScenarioError, NoBuildingsError, ParameterError

logger = logging.getLogger(__name__)

__all__ = [
    "ScenarioParams",
    "ScenarioPreset",
    "PRESETS",
    "preset",
    "avg_building_width",
    "avg_street_width",
    "expected_building_count",
    "building_position",
    "building_positions",
    "segment_positions",
    "rayleigh_pdf",
    "rayleigh_cdf",
    "rayleigh_sf",
]


@dataclass(frozen=True)
class ScenarioParams:
    alpha: float
    beta: float
    gamma: float

    def __post_init__(self):
        if not 0.0 < self.alpha <= 1.0:
            raise ParameterError(f"alpha must be in (0, 1], got {self.alpha}")
        if not self.beta > 0.0:
            raise ParameterError(f"beta must be positive, got {self.beta}")
        if not self.gamma > 0.0:
            raise ParameterError(f"gamma must be positive, got {self.gamma}")
        if 1000.0 / math.sqrt(self.beta) - self.width <= 0.0:
            raise InvalidScenarioError(
                f"alpha={self.alpha}, beta={self.beta} leave no room for streets"
            )

    @property
    def width(self) -> float:
        """Average building width W in meters."""
        return 1000.0 * math.sqrt(self.alpha / self.beta)

    @property
    def street_width(self) -> float:
        """Average street width V in meters."""
        return 1000.0 / math.sqrt(self.beta) - self.width

    @property
    def pitch(self) -> float:
        """Building plus street, i.e. the grid period W + V."""
        return 1000.0 / math.sqrt(self.beta)

    @property
    def linear_density(self) -> float:
        """Buildings crossed per meter of link, sqrt(alpha * beta) / 1000."""
        return math.sqrt(self.alpha * self.beta) / 1000.0


@dataclass(frozen=True)
class ScenarioPreset:
    name: str
    params: ScenarioParams


PRESETS: dict[str, ScenarioPreset] = {
    p.name: p
    for p in (
        ScenarioPreset("Suburban", ScenarioParams(0.1, 750.0, 8.0)),
        ScenarioPreset("Urban", ScenarioParams(0.3, 500.0, 15.0)),
        ScenarioPreset("DenseUrban", ScenarioParams(0.5, 300.0, 20.0)),
        ScenarioPreset("HighRiseUrban", ScenarioParams(0.5, 300.0, 50.0)),
    )
}

CLI_NAMES = {
    "suburban": "Suburban",
    "urban": "Urban",
    "dense-urban": "DenseUrban",
    "high-rise-urban": "HighRiseUrban",
}


def _normalise(name: str) -> str:
    return name.lower().replace("_", "").replace("-", "").replace(" ", "")


def preset(name: str) -> ScenarioParams:
    """Look up a preset by name, ignoring case, dashes and underscores.

    >>> preset("dense-urban").gamma
    20.0
    """
    key = _normalise(name)
    for p in PRESETS.values():
        if _normalise(p.name) == key:
            return p.params
    raise ParameterError(
        f"unknown scenario {name!r}; choose one of {', '.join(CLI_NAMES)}"
    )


def _check(params) -> ScenarioParams:
    if not isinstance(params, ScenarioParams):
        raise ParameterError(f"expected ScenarioParams, got {type(params).__name__}")
    return params


def avg_building_width(params: ScenarioParams) -> float:
    return _check(params).width


def avg_street_width(params: ScenarioParams) -> float:
    street = _check(params).street_width
    if street <= 0.0:
        raise InvalidScenarioError(f"street width {street} m is not positive")
    return street


def expected_building_count(d_tr: float, params: ScenarioParams) -> int:
    """Expected number of buildings along a ground span of length ``d_tr``."""
    if d_tr < 0.0:
        raise ParameterError(f"distance must be non-negative, got {d_tr}")
    # a tiny epsilon keeps exact multiples (e.g. d=1000/sqrt(ab)) from losing a building to rounding
    return int(math.floor(d_tr * _check(params).linear_density + 1e-9))


def segment_positions(start: float, span: float, count: int, width: float) -> np.ndarray:
    """Evenly spaced building slots on ``[start, start + span]``.

    Slot ``i`` (1-based) sits at ``start + (i - 0.5) * span / count + width / 2``.
    Slots falling past the segment end are clamped onto it.
    """
    if count <= 0:
        return np.empty(0)
    i = np.arange(1, count + 1, dtype=float)
    pos = start + (i - 0.5) * span / count + width / 2.0
    end = start + span
    over = pos > end
    if over.any():
        logger.debug("clamped %d building slot(s) onto segment end %.3f m", over.sum(), end)
        pos = np.minimum(pos, end)
    return pos


def building_positions(d_tr: float, params: ScenarioParams) -> np.ndarray:
    """Positions of all expected buildings between TX and RX (may be empty)."""
    n = expected_building_count(d_tr, params)
    return segment_positions(0.0, d_tr, n, params.width)


def building_position(i: int, d_tr: float, params: ScenarioParams) -> float:
    n = expected_building_count(d_tr, params)
    if n == 0:
        raise NoBuildingsError(f"no buildings expected over {d_tr} m")
    if not 1 <= i <= n:
        raise IndexError(f"building index {i} outside 1..{n}")
    return float(building_positions(d_tr, params)[i - 1])


def _check_gamma(gamma: float) -> None:
    if not gamma > 0.0:
        raise ParameterError(f"gamma must be positive, got {gamma}")


def rayleigh_pdf(h, gamma: float):
    """Rayleigh density of building height; zero for negative heights."""
    _check_gamma(gamma)
    h = np.asarray(h, dtype=float)
    out = np.where(h < 0.0, 0.0, h / gamma**2 * np.exp(-(h**2) / (2.0 * gamma**2)))
    return out[()] if out.ndim == 0 else out


def rayleigh_cdf(h, gamma: float):
    """P(height < h) for Rayleigh heights; clamped to 0 for h < 0."""
    _check_gamma(gamma)
    h = np.asarray(h, dtype=float)
    out = np.where(h <= 0.0, 0.0, -np.expm1(-(h**2) / (2.0 * gamma**2)))
    return out[()] if out.ndim == 0 else out


def rayleigh_sf(h, gamma: float):
    """P(height > h); equals 1 for h <= 0."""
    _check_gamma(gamma)
    h = np.asarray(h, dtype=float)
    out = np.where(h <= 0.0, 1.0, np.exp(-(h**2) / (2.0 * gamma**2)))
    return out[()] if out.ndim == 0 else out
