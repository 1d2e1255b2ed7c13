"""Single-bounce building-scattering path probability.

Every expected building along the link is a scattering candidate. Candidate
``i`` produces a usable path when its roof reaches into the first Fresnel
zone, none of the buildings in front of it (towards TX) blocks the incident
ray, and none of the buildings behind it (towards RX) blocks the scattered
ray. Candidates are treated as independent:

    P_BS = 1 - prod_i [1 - P_i^S * prod_m P_im^F * prod_n P_in^B]

Two forms of the entry height are available. ``"corrected"`` (default)
uses the link length in the straight-line term, which makes it equal to the
LoS clearance height. ``"literal"`` divides by the RX height instead and is
kept for comparison only; it goes strongly negative for low receivers.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

import numpy as np

from .errors import ParameterError
from .fresnel import LinkGeometry, fresnel_radius, slant_cosine
from .scenario import (
    ScenarioParams,
    building_positions,
    expected_building_count,
    rayleigh_cdf,
    rayleigh_sf,
    segment_positions,
)

BsMode = Literal["corrected", "literal"]
BS_MODES = ("corrected", "literal")

__all__ = [
    "BsMode",
    "BS_MODES",
    "BsCandidate",
    "scatter_entry_height",
    "scatter_factor",
    "front_positions",
    "behind_positions",
    "front_factor",
    "behind_factor",
    "bs_candidates",
    "bs_probability",
]


@dataclass(frozen=True)
class BsCandidate:
    index: int
    position: float
    entry_height: float
    p_scatter: float
    n_front: int
    n_behind: int
    p_front_product: float
    p_behind_product: float

    @property
    def p_path(self) -> float:
        return self.p_scatter * self.p_front_product * self.p_behind_product


def _check_mode(mode: str) -> None:
    if mode not in BS_MODES:
        raise ParameterError(f"unknown BS mode {mode!r}; expected one of {BS_MODES}")


def scatter_entry_height(d_i, link: LinkGeometry, mode: BsMode = "corrected"):
    """Lowest roof height at ``d_i`` that reaches into the first Fresnel zone."""
    _check_mode(mode)
    d_i = np.asarray(d_i, dtype=float)
    if mode == "corrected":
        denom = link.d_tr
    else:
        if link.h_rx <= 0.0:
            raise ParameterError("literal entry height divides by h_rx, which is zero")
        denom = link.h_rx
    r = fresnel_radius(d_i, link.d_tr, link.wavelength)
    h = link.h_tx - d_i * (link.h_tx - link.h_rx) / denom - r / slant_cosine(
        link.h_tx - link.h_rx, link.d_tr
    )
    return h[()] if h.ndim == 0 else h


def scatter_factor(d_i, link: LinkGeometry, params: ScenarioParams, mode: BsMode = "corrected"):
    """P(roof height > entry height). Equals 1 when the entry height is not positive."""
    return rayleigh_sf(scatter_entry_height(d_i, link, mode), params.gamma)


def front_positions(d_i: float, params: ScenarioParams) -> np.ndarray:
    n_front = expected_building_count(d_i, params)
    return segment_positions(0.0, d_i, n_front, params.width)


def behind_positions(d_i: float, d_tr: float, params: ScenarioParams) -> np.ndarray:
    n_behind = expected_building_count(d_tr - d_i, params)
    return segment_positions(d_i, d_tr - d_i, n_behind, params.width)


def _front_heights(d_i: float, entry: float, link: LinkGeometry, params: ScenarioParams) -> np.ndarray:
    d_tf = front_positions(d_i, params)
    return (d_i - d_tf) * (link.h_tx - entry) / d_i + entry


def _behind_heights(d_i: float, entry: float, link: LinkGeometry, params: ScenarioParams) -> np.ndarray:
    d_tb = behind_positions(d_i, link.d_tr, params)
    return link.h_rx + (link.d_tr - d_tb) * (link.h_tx - entry) / (link.d_tr - d_i)


def _candidate(i: int, link: LinkGeometry, params: ScenarioParams, mode: BsMode) -> tuple[float, float]:
    positions = building_positions(link.d_tr, params)
    if not 1 <= i <= positions.size:
        raise IndexError(f"candidate index {i} outside 1..{positions.size}")
    d_i = float(positions[i - 1])
    return d_i, float(scatter_entry_height(d_i, link, mode))


def front_factor(m: int, i: int, link: LinkGeometry, params: ScenarioParams, mode: BsMode = "corrected") -> float:
    """Probability that front building ``m`` of candidate ``i`` leaves the incident ray clear."""
    d_i, entry = _candidate(i, link, params, mode)
    heights = _front_heights(d_i, entry, link, params)
    if not 1 <= m <= heights.size:
        raise IndexError(f"front index {m} outside 1..{heights.size}")
    return float(rayleigh_cdf(heights[m - 1], params.gamma))


def behind_factor(n: int, i: int, link: LinkGeometry, params: ScenarioParams, mode: BsMode = "corrected") -> float:
    """Probability that behind building ``n`` of candidate ``i`` leaves the scattered ray clear."""
    d_i, entry = _candidate(i, link, params, mode)
    heights = _behind_heights(d_i, entry, link, params)
    if not 1 <= n <= heights.size:
        raise IndexError(f"behind index {n} outside 1..{heights.size}")
    return float(rayleigh_cdf(heights[n - 1], params.gamma))


def bs_thresholds(link: LinkGeometry, params: ScenarioParams, mode: BsMode = "corrected"):
    """Per-candidate height thresholds.

    Returns a list of ``(d_i, entry_height, front_heights, behind_heights)``.
    A candidate scatters when its roof exceeds ``entry_height``; its front and
    behind buildings must stay below the respective clearance heights.
    """
    _check_mode(mode)
    out = []
    positions = building_positions(link.d_tr, params)
    if positions.size == 0:
        return out
    entries = np.atleast_1d(scatter_entry_height(positions, link, mode))
    for d_i, entry in zip(positions.tolist(), entries.tolist()):
        out.append(
            (
                d_i,
                entry,
                _front_heights(d_i, entry, link, params),
                _behind_heights(d_i, entry, link, params),
            )
        )
    return out


def bs_candidates(link: LinkGeometry, params: ScenarioParams, mode: BsMode = "corrected") -> list[BsCandidate]:
    cands = []
    for k, (d_i, entry, front, behind) in enumerate(bs_thresholds(link, params, mode), start=1):
        cands.append(
            BsCandidate(
                index=k,
                position=d_i,
                entry_height=entry,
                p_scatter=float(rayleigh_sf(entry, params.gamma)),
                n_front=front.size,
                n_behind=behind.size,
                p_front_product=float(np.prod(rayleigh_cdf(front, params.gamma))) if front.size else 1.0,
                p_behind_product=float(np.prod(rayleigh_cdf(behind, params.gamma))) if behind.size else 1.0,
            )
        )
    return cands


def bs_probability(link: LinkGeometry, params: ScenarioParams, mode: BsMode = "corrected") -> float:
    miss = 1.0
    # fixed candidate order keeps the result bit-identical across runs
    for c in bs_candidates(link, params, mode):
        miss *= 1.0 - c.p_path
    return 1.0 - miss
