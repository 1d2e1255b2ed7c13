"""First-order Fresnel ellipsoid geometry for a TX-RX link."""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .errors import ParameterError

SPEED_OF_LIGHT = 299_792_458.0

# Only the first Fresnel zone is modelled.
FRESNEL_ORDER = 1

__all__ = [
    "SPEED_OF_LIGHT",
    "FRESNEL_ORDER",
    "LinkGeometry",
    "ellipsoid_semiaxes",
    "fresnel_radius",
    "slant_cosine",
]


@dataclass(frozen=True)
class LinkGeometry:
    """Heights of both terminals (m), their horizontal separation (m) and the carrier (Hz)."""

    h_tx: float
    h_rx: float
    d_tr: float
    frequency: float

    def __post_init__(self):
        if self.h_tx < 0.0 or self.h_rx < 0.0:
            raise ParameterError(f"heights must be non-negative ({self.h_tx}, {self.h_rx})")
        if not self.d_tr > 0.0:
            raise ParameterError(f"d_tr must be positive, got {self.d_tr}")
        if not self.frequency > 0.0:
            raise ParameterError(f"frequency must be positive, got {self.frequency}")

    @property
    def wavelength(self) -> float:
        return SPEED_OF_LIGHT / self.frequency

    def at_distance(self, d_tr: float) -> "LinkGeometry":
        return replace(self, d_tr=d_tr)


def ellipsoid_semiaxes(d_tr: float, wavelength: float) -> tuple[float, float, float]:
    """Semi-axes (X, Y, Z) of the first Fresnel ellipsoid; Y lies along the link."""
    if d_tr <= 0.0 or wavelength <= 0.0:
        raise ParameterError("d_tr and wavelength must be positive")
    x = math.sqrt(wavelength * d_tr) / 2.0
    y = math.sqrt(wavelength * d_tr / 4.0 + d_tr**2 / 4.0)
    return x, y, x


def fresnel_radius(d_i, d_tr: float, wavelength: float):
    """Zone radius at horizontal distance ``d_i`` from TX.

    Grows linearly from both ends and peaks at the midpoint, where it equals
    the minor semi-axis. Accepts scalars or arrays for ``d_i``.
    """
    if d_tr <= 0.0 or wavelength <= 0.0:
        raise ParameterError("d_tr and wavelength must be positive")
    d_i = np.asarray(d_i, dtype=float)
    # 1e-9 slack absorbs float round-off in positions computed as d_tr - x
    if np.any(d_i < -1e-9) or np.any(d_i > d_tr * (1 + 1e-12) + 1e-9):
        raise ParameterError(f"position outside [0, {d_tr}]")
    r = math.sqrt(wavelength * d_tr) * np.clip(np.minimum(d_i, d_tr - d_i), 0.0, None) / d_tr
    return r[()] if r.ndim == 0 else r


def slant_cosine(delta_h: float, d_tr: float) -> float:
    """Cosine of the ray's elevation for a height difference ``delta_h`` over ``d_tr``."""
    if d_tr <= 0.0:
        raise ParameterError(f"d_tr must be positive, got {d_tr}")
    return d_tr / math.hypot(d_tr, delta_h)
