"""Explicit grid-city simulator used as a stand-in for ray tracing.

Cities are square grids of W x W footprints at pitch W + V, shifted by a
uniform random offset, with i.i.d. Rayleigh roof heights. A link is checked
by intersecting its ground track with every footprint and comparing roof
heights against the clearance profile over the crossed span. Only path
existence is decided; no field strengths are computed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from ..bs import BsMode
from ..errors import ParameterError
from ..fresnel import SPEED_OF_LIGHT, LinkGeometry
from ..scenario import ScenarioParams
from .oracle import McEstimate, chunk_rng, normalise_path

__all__ = [
    "UrbanScene",
    "PathFlags",
    "generate_scene",
    "geometric_path_check",
    "mc_geometric",
    "read_scene",
]


@dataclass(frozen=True)
class UrbanScene:
    """Buildings as lower-left corners ``(x, y)``, a common width and heights.

    The scene covers the square ``[-extent/2, extent/2]^2``.
    """

    x: np.ndarray
    y: np.ndarray
    width: float
    heights: np.ndarray
    extent: float

    def __len__(self) -> int:
        return self.heights.size

    def coverage_fraction(self) -> float:
        half = self.extent / 2.0
        wx = np.clip(self.x + self.width, -half, half) - np.clip(self.x, -half, half)
        wy = np.clip(self.y + self.width, -half, half) - np.clip(self.y, -half, half)
        return float(np.sum(wx * wy) / self.extent**2)

    def contains(self, point) -> bool:
        half = self.extent / 2.0
        return abs(point[0]) <= half and abs(point[1]) <= half

    def to_text(self) -> str:
        """One building per line: ``x, y, width, height`` in meters (x, y = lower-left corner)."""
        lines = [f"# extent {self.extent:.6f}", "# x, y, width, height"]
        lines += [
            f"{x:.3f}, {y:.3f}, {self.width:.3f}, {h:.3f}"
            for x, y, h in zip(self.x.tolist(), self.y.tolist(), self.heights.tolist())
        ]
        return "\n".join(lines) + "\n"


def read_scene(text: str) -> UrbanScene:
    """Parse the output of :meth:`UrbanScene.to_text`."""
    extent = None
    rows = []
    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        if line.startswith("#"):
            parts = line[1:].split()
            if len(parts) == 2 and parts[0] == "extent":
                extent = float(parts[1])
            continue
        rows.append([float(v) for v in line.split(",")])
    if extent is None:
        raise ParameterError("scene text lacks an '# extent' header")
    arr = np.asarray(rows, dtype=float).reshape(-1, 4)
    width = float(arr[0, 2]) if len(arr) else 0.0
    return UrbanScene(arr[:, 0], arr[:, 1], width, arr[:, 3], extent)


def _grid(params: ScenarioParams, extent: float, offset) -> tuple[np.ndarray, np.ndarray]:
    pitch = params.pitch
    half = extent / 2.0
    k = np.arange(-1, int(math.ceil(extent / pitch)) + 1)
    xs = -half + offset[0] + k * pitch
    ys = -half + offset[1] + k * pitch
    gx, gy = np.meshgrid(xs, ys, indexing="xy")
    cx = gx + params.width / 2.0
    cy = gy + params.width / 2.0
    # keep buildings whose centre lies in the extent so counts track beta
    keep = (np.abs(cx) <= half) & (np.abs(cy) <= half)
    return gx[keep], gy[keep]


def generate_scene(
    params: ScenarioParams,
    extent: float,
    seed: int | None = None,
    *,
    rng: np.random.Generator | None = None,
    offset=None,
) -> UrbanScene:
    """Random grid city of side ``extent`` meters; deterministic given ``seed``."""
    if extent < 10.0 * params.pitch:
        raise ParameterError(f"extent {extent} m is below 10 grid pitches ({10 * params.pitch:.1f} m)")
    if rng is None:
        rng = np.random.default_rng(seed)
    if offset is None:
        offset = rng.uniform(0.0, params.pitch, size=2)
    x, y = _grid(params, extent, offset)
    heights = rng.rayleigh(params.gamma, size=x.size)
    return UrbanScene(x, y, params.width, heights, extent)


class PathFlags(NamedTuple):
    los: bool
    gs: bool
    bs: bool


def _crossings(scene: UrbanScene, p0: np.ndarray, u: np.ndarray, length: float):
    """Indices and [s_in, s_out] spans of footprints crossed by the ground track."""
    lo_x, hi_x = scene.x, scene.x + scene.width
    lo_y, hi_y = scene.y, scene.y + scene.width
    s_in = np.zeros(len(scene))
    s_out = np.full(len(scene), length)
    mask = np.ones(len(scene), dtype=bool)
    for lo, hi, o, d in ((lo_x, hi_x, p0[0], u[0]), (lo_y, hi_y, p0[1], u[1])):
        if abs(d) < 1e-15:
            mask &= (o >= lo) & (o <= hi)
            continue
        t1 = (lo - o) / d
        t2 = (hi - o) / d
        s_in = np.maximum(s_in, np.minimum(t1, t2))
        s_out = np.minimum(s_out, np.maximum(t1, t2))
    mask &= s_out > s_in
    idx = np.nonzero(mask)[0]
    order = np.argsort(s_in[idx], kind="stable")
    idx = idx[order]
    return idx, s_in[idx], s_out[idx]


def _min_on(fn, a: np.ndarray, b: np.ndarray, breaks) -> np.ndarray:
    """Minimum of a piecewise-linear ``fn`` over each ``[a, b]``, given its breakpoints."""
    out = np.minimum(fn(a), fn(b))
    for t in breaks:
        inside = (a < t) & (t < b)
        if inside.any():
            out = np.where(inside, np.minimum(out, fn(np.full_like(a, t))), out)
    return out


def geometric_path_check(
    scene: UrbanScene,
    tx,
    rx,
    wavelength: float,
    mode: BsMode = "corrected",
) -> PathFlags:
    """Decide which of the LoS, GS and BS paths exist between two 3-D points."""
    tx = np.asarray(tx, dtype=float)
    rx = np.asarray(rx, dtype=float)
    if not (scene.contains(tx) and scene.contains(rx)):
        raise ParameterError("TX and RX must lie inside the scene")
    if tx[2] < 0.0 or rx[2] < 0.0:
        raise ParameterError("TX and RX must be above ground")
    if wavelength <= 0.0:
        raise ParameterError("wavelength must be positive")
    h_tx, h_rx = float(tx[2]), float(rx[2])
    delta = rx[:2] - tx[:2]
    d = float(np.hypot(*delta))
    if d <= 0.0:
        raise ParameterError("TX and RX must be horizontally separated")
    u = delta / d

    idx, a, b = _crossings(scene, tx[:2], u, d)
    roofs = scene.heights[idx]
    scale = math.sqrt(wavelength * d) / d

    def radius(s):
        return scale * np.clip(np.minimum(s, d - s), 0.0, None)

    cos1 = d / math.hypot(d, h_tx - h_rx)
    cos2 = d / math.hypot(d, h_tx + h_rx)

    def los_ceiling(s):
        return h_tx - s * (h_tx - h_rx) / d - radius(s) / cos1

    los = bool(np.all(roofs < _min_on(los_ceiling, a, b, [d / 2.0])))

    if h_tx + h_rx > 0.0:
        d_tg = d * h_tx / (h_tx + h_rx)

        def mirror_ray(s):
            inc = h_tx * (d_tg - s) / d_tg if d_tg > 0.0 else np.zeros_like(s)
            ref = h_rx * (s - d_tg) / (d - d_tg) if d > d_tg else np.zeros_like(s)
            return np.where(s < d_tg, inc, ref) - radius(s) / cos2

        gs = bool(np.all(roofs < _min_on(mirror_ray, a, b, [d_tg, d / 2.0])))
    else:
        gs = False

    if mode == "literal":
        if h_rx <= 0.0:
            raise ParameterError("literal entry height divides by h_rx, which is zero")
        denom = h_rx
    else:
        denom = d

    def entry(s):
        return h_tx - s * (h_tx - h_rx) / denom - radius(s) / cos1

    bs = False
    if idx.size:
        entry_min = _min_on(entry, a, b, [d / 2.0])
        for k in np.nonzero(roofs > entry_min)[0]:
            # scatter at the deepest point of the zone over this footprint
            cand = [a[k], b[k]] + ([d / 2.0] if a[k] < d / 2.0 < b[k] else [])
            vals = [float(entry(np.float64(s))) for s in cand]
            j = int(np.argmin(vals))
            s_star, e_star = float(cand[j]), max(vals[j], 0.0)
            front = b <= a[k]
            behind = a >= b[k]
            ok = True
            if front.any():
                incident = lambda s: h_tx + (e_star - h_tx) * s / s_star
                ok = bool(np.all(roofs[front] < np.minimum(incident(a[front]), incident(b[front]))))
            if ok and behind.any():
                scattered = lambda s: e_star + (h_rx - e_star) * (s - s_star) / (d - s_star)
                ok = bool(np.all(roofs[behind] < np.minimum(scattered(a[behind]), scattered(b[behind]))))
            if ok:
                bs = True
                break
    return PathFlags(los, gs, bs)


def _in_street(point, params: ScenarioParams, extent: float, offset) -> bool:
    pitch = params.pitch
    rel = (np.asarray(point[:2]) + extent / 2.0 - np.asarray(offset)) % pitch
    return bool(np.any(rel >= params.width))


def mc_geometric(
    path: str,
    link: LinkGeometry,
    params: ScenarioParams,
    placements: int,
    seed: int = 0,
    mode: BsMode = "corrected",
    workers: int = 1,
) -> McEstimate:
    """Fraction of random city/link placements in which the chosen path exists.

    Each placement draws a fresh city, a uniform link bearing and a grid
    offset that puts the ground receiver on a street. The TX-RX midpoint is
    at the scene centre.
    """
    path = normalise_path(path)
    if placements < 1:
        raise ParameterError("placements must be at least 1")
    d = link.d_tr
    extent = max(10.0 * params.pitch, d + 4.0 * params.pitch)
    wavelength = SPEED_OF_LIGHT / link.frequency

    def one(k: int) -> bool:
        rng = chunk_rng(seed, k)
        phi = rng.uniform(0.0, 2.0 * math.pi)
        u = np.array([math.cos(phi), math.sin(phi)])
        tx = np.r_[-u * d / 2.0, link.h_tx]
        rx = np.r_[u * d / 2.0, link.h_rx]
        while True:
            offset = rng.uniform(0.0, params.pitch, size=2)
            if _in_street(rx, params, extent, offset):
                break
        scene = generate_scene(params, extent, rng=rng, offset=offset)
        return getattr(geometric_path_check(scene, tx, rx, wavelength, mode), path)

    if workers > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=workers) as pool:
            hits = sum(pool.map(one, range(placements)))
    else:
        hits = sum(one(k) for k in range(placements))
    return McEstimate.from_count(int(hits), placements, seed)
