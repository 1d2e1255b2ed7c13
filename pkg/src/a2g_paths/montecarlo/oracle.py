"""Sampling oracle for the closed-form path probabilities.

Draws Rayleigh building heights for every building slot a model uses, at
the model's own deterministic positions, and checks the blocking and
scattering events directly. Because the closed forms multiply the
probabilities of exactly these independent events, the sample mean is an
unbiased estimate of the closed-form value. What the oracle checks is the
probabilistic composition (products, clamps, the 1 - prod(1 - .) union),
not the geometry that produced the thresholds.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from ..bs import BsMode, bs_thresholds
from ..errors import ParameterError
from ..fresnel import LinkGeometry
from ..gs import gs_clearance_heights
from ..los import los_clearance_height
from ..scenario import ScenarioParams, building_positions

PATHS = ("los", "gs", "bs")
CHUNK = 10_000

__all__ = ["PATHS", "McEstimate", "normalise_path", "mc_model_faithful", "z_score", "agrees"]


@dataclass(frozen=True)
class McEstimate:
    p_hat: float
    trials: int
    stderr: float
    seed: int

    @classmethod
    def from_count(cls, successes: int, trials: int, seed: int) -> "McEstimate":
        p = successes / trials
        return cls(p, trials, math.sqrt(p * (1.0 - p) / trials), seed)


def normalise_path(path: str) -> str:
    key = str(path).lower()
    if key not in PATHS:
        raise ParameterError(f"unknown path {path!r}; expected one of {PATHS}")
    return key


def chunk_rng(seed: int, index: int) -> np.random.Generator:
    """Independent stream for work unit ``index``; depends only on (seed, index)."""
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(index,)))


def run_chunks(fn, trials: int, seed: int, workers: int = 1, chunk: int = CHUNK) -> int:
    """Sum ``fn(rng, size)`` over fixed-size chunks; identical for any ``workers``."""
    sizes = [min(chunk, trials - start) for start in range(0, trials, chunk)]
    jobs = [(chunk_rng(seed, k), n) for k, n in enumerate(sizes)]
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            counts = list(pool.map(lambda job: fn(*job), jobs))
    else:
        counts = [fn(*job) for job in jobs]
    return int(sum(counts))


def _slots(path: str, link: LinkGeometry, params: ScenarioParams, mode: BsMode):
    """Threshold vector, per-slot direction (+1: must exceed, -1: must stay below) and group starts."""
    if path == "los":
        pos = building_positions(link.d_tr, params)
        thr = np.atleast_1d(los_clearance_height(pos, link)) if pos.size else pos
        return thr, -np.ones(thr.size), None
    if path == "gs":
        inc, ref = gs_clearance_heights(link, params)
        thr = np.concatenate([inc, ref])
        return thr, -np.ones(thr.size), None
    thr, sign, starts = [], [], []
    for _, entry, front, behind in bs_thresholds(link, params, mode):
        starts.append(len(thr))
        thr.append(entry)
        sign.append(1.0)
        thr.extend(front.tolist())
        thr.extend(behind.tolist())
        sign.extend([-1.0] * (front.size + behind.size))
    return np.asarray(thr, dtype=float), np.asarray(sign), np.asarray(starts, dtype=np.intp)


def mc_model_faithful(
    path: str,
    link: LinkGeometry,
    params: ScenarioParams,
    trials: int,
    seed: int = 0,
    mode: BsMode = "corrected",
    workers: int = 1,
) -> McEstimate:
    """Monte Carlo estimate of the LoS, GS or BS closed form by direct event sampling."""
    path = normalise_path(path)
    if trials < 1:
        raise ParameterError("trials must be at least 1")
    thr, sign, starts = _slots(path, link, params, mode)
    gamma = params.gamma

    if thr.size == 0:
        # no buildings: nothing can block, nothing can scatter
        successes = 0 if path == "bs" else trials
        return McEstimate.from_count(successes, trials, seed)

    def count(rng: np.random.Generator, size: int) -> int:
        heights = rng.rayleigh(gamma, size=(size, thr.size))
        ok = np.where(sign > 0, heights > thr, heights < thr)
        if starts is None:
            return int(ok.all(axis=1).sum())
        per_candidate = np.logical_and.reduceat(ok, starts, axis=1)
        return int(per_candidate.any(axis=1).sum())

    return McEstimate.from_count(run_chunks(count, trials, seed, workers), trials, seed)


def z_score(analytic: float, est: McEstimate) -> float:
    """Standardised gap between a closed-form value and an estimate.

    The spread is the larger of the empirical standard error and the one
    implied by the analytic value, so estimates that land exactly on 0 or 1
    are not judged against a zero-width band.
    """
    sd = max(est.stderr, math.sqrt(max(analytic * (1.0 - analytic), 0.0) / est.trials))
    gap = abs(analytic - est.p_hat)
    if sd == 0.0:
        return 0.0 if gap == 0.0 else math.inf
    return gap / sd


def agrees(analytic: float, est: McEstimate, k: float = 4.0) -> bool:
    return z_score(analytic, est) <= k
