"""Monte Carlo oracles: direct event sampling and an explicit grid-city simulator."""

from .geometric import (
    PathFlags,
    UrbanScene,
    generate_scene,
    geometric_path_check,
    mc_geometric,
    read_scene,
)
from .oracle import PATHS, McEstimate, agrees, mc_model_faithful, normalise_path, z_score

__all__ = [
    "PATHS",
    "McEstimate",
    "PathFlags",
    "UrbanScene",
    "agrees",
    "generate_scene",
    "geometric_path_check",
    "mc_geometric",
    "mc_model_faithful",
    "normalise_path",
    "read_scene",
    "z_score",
]
