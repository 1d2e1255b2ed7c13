"""Command-line front end.

Settings are resolved as built-in defaults, then a ``key = value`` config
file (``--config`` or the ``A2G_CONFIG`` environment variable), then flags.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 I/O error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import re
import sys
from dataclasses import asdict, replace

from . import __version__
from .analysis import bs_optimal_distance, elevation_to_distance, mcd, path_probabilities, sweep
from .bs import BS_MODES, bs_candidates
from .errors import ParameterError
from .fresnel import LinkGeometry
from .gs import gs_clearance_heights, incident_positions, reflection_positions
from .los import los_breakdown
from .montecarlo import PATHS, generate_scene, mc_geometric, mc_model_faithful, normalise_path, z_score
from .scenario import CLI_NAMES, PRESETS, ScenarioParams, preset, rayleigh_cdf

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3
GEOMETRIC_BAND = 0.1

DEFAULTS = {
    "scenario": "urban",
    "freq": "1.4GHz",
    "htx": 202.0,
    "hrx": 2.0,
    "bs_mode": "corrected",
    "seed": 0,
    "trials": 100_000,
    "grid_step": 1.0,
    "d_max": 1500.0,
    "format": "csv",
}

_UNITS = {"": 1.0, "hz": 1.0, "khz": 1e3, "mhz": 1e6, "ghz": 1e9, "thz": 1e12}


class UsageError(Exception):
    pass


def parse_frequency(text) -> float:
    """``'28GHz'``, ``'1.4 ghz'``, ``'900MHz'`` or a bare number of Hz."""
    if isinstance(text, (int, float)):
        value = float(text)
    else:
        m = re.fullmatch(r"\s*([0-9.eE+-]+)\s*([a-zA-Z]*)\s*", str(text))
        if not m or m.group(2).lower() not in _UNITS:
            raise UsageError(f"cannot parse frequency {text!r}")
        try:
            value = float(m.group(1)) * _UNITS[m.group(2).lower()]
        except ValueError:
            raise UsageError(f"cannot parse frequency {text!r}") from None
    if not value > 0.0:
        raise UsageError("frequency must be positive")
    return value


def read_config(path: str) -> dict:
    """Parse ``key = value`` lines; ``#`` starts a comment."""
    out = {}
    with open(path, encoding="utf-8") as fh:
        for n, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise UsageError(f"{path}:{n}: expected 'key = value'")
            key, value = (part.strip() for part in line.split("=", 1))
            out[key.replace("-", "_").lower()] = value
    return out


def resolve(args: argparse.Namespace) -> dict:
    cfg = dict(DEFAULTS)
    cfg_path = args.config or os.environ.get("A2G_CONFIG")
    if cfg_path:
        try:
            cfg.update(read_config(cfg_path))
        except OSError as exc:
            raise UsageError(f"cannot read config {cfg_path}: {exc}") from None
    for key, value in vars(args).items():
        if value is not None and key not in ("command", "config", "func"):
            cfg[key] = value
    return cfg


def _float(cfg: dict, key: str) -> float | None:
    value = cfg.get(key)
    if value is None:
        return None
    try:
        return float(value)
    except (TypeError, ValueError):
        raise UsageError(f"{key} must be a number, got {value!r}") from None


def scenario_from(cfg: dict) -> ScenarioParams:
    base = preset(str(cfg["scenario"]))
    overrides = {k: _float(cfg, k) for k in ("alpha", "beta", "gamma") if cfg.get(k) is not None}
    return replace(base, **overrides) if overrides else base


def link_from(cfg: dict, need_distance: bool = True) -> LinkGeometry:
    h_tx, h_rx = _float(cfg, "htx"), _float(cfg, "hrx")
    freq = parse_frequency(cfg["freq"])
    dist, elev = _float(cfg, "dist"), _float(cfg, "elev")
    if dist is not None and elev is not None:
        raise UsageError("give either --dist or --elev, not both")
    if elev is not None:
        dist = elevation_to_distance(math.radians(elev), h_tx - h_rx)
    if dist is None:
        if need_distance:
            raise UsageError("one of --dist or --elev is required")
        dist = 1.0  # placeholder; searches replace it
    return LinkGeometry(h_tx, h_rx, dist, freq)


def _mode(cfg: dict) -> str:
    mode = str(cfg["bs_mode"]).lower()
    if mode not in BS_MODES:
        raise UsageError(f"--bs-mode must be one of {BS_MODES}")
    return mode


def _p(x: float) -> str:
    return f"{x:.6f}"


def _m(x: float) -> str:
    return f"{x:.1f}"


def _emit(text: str, out_path: str | None) -> None:
    if out_path and out_path != "-":
        try:
            with open(out_path, "w", encoding="utf-8", newline="") as fh:
                fh.write(text)
        except OSError as exc:
            raise OSError(f"cannot write {out_path}: {exc}") from exc
    else:
        sys.stdout.write(text)


# -- subcommands -------------------------------------------------------------


def cmd_prob(cfg: dict) -> int:
    params, link, mode = scenario_from(cfg), link_from(cfg), _mode(cfg)
    probs = path_probabilities(link, params, mode)
    if cfg.get("json"):
        payload = {"d_tr": round(link.d_tr, 1), **{k: round(v, 6) for k, v in asdict(probs).items()}}
        _emit(json.dumps(payload) + "\n", cfg.get("out"))
        return EXIT_OK
    lines = [f"d_tr {_m(link.d_tr)}", f"p_los {_p(probs.p_los)}", f"p_gs {_p(probs.p_gs)}", f"p_bs {_p(probs.p_bs)}"]
    if cfg.get("explain"):
        lines.append("# los: i position clearance factor")
        for c in los_breakdown(link, params):
            lines.append(f"los {c.index} {_m(c.position)} {_m(c.clearance_height)} {_p(c.factor_probability)}")
        inc, ref = gs_clearance_heights(link, params)
        lines.append("# gs: segment i position clearance factor")
        for name, pos, heights in (("incident", incident_positions(link, params), inc), ("reflection", reflection_positions(link, params), ref)):
            for i, (d_i, h) in enumerate(zip(pos.tolist(), heights.tolist()), 1):
                lines.append(f"gs {name} {i} {_m(d_i)} {_m(h)} {_p(float(rayleigh_cdf(h, params.gamma)))}")
        lines.append("# bs: i position entry p_scatter n_front p_front n_behind p_behind")
        for c in bs_candidates(link, params, mode):
            lines.append(
                f"bs {c.index} {_m(c.position)} {_m(c.entry_height)} {_p(c.p_scatter)} "
                f"{c.n_front} {_p(c.p_front_product)} {c.n_behind} {_p(c.p_behind_product)}"
            )
    _emit("\n".join(lines) + "\n", cfg.get("out"))
    return EXIT_OK


def parse_range(text: str) -> list[float]:
    """``start:stop:step`` (stop inclusive) or a comma-separated list."""
    text = str(text).strip()
    try:
        if ":" in text:
            start, stop, step = (float(v) for v in text.split(":"))
            if step <= 0.0:
                raise UsageError("range step must be positive")
            n = int(math.floor((stop - start) / step + 1e-9))
            return [start + k * step for k in range(n + 1)]
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise UsageError(f"cannot parse range {text!r}") from None


def cmd_sweep(cfg: dict) -> int:
    axis = cfg.get("axis") or "distance"
    values = parse_range(cfg["range"]) if cfg.get("range") else None
    if not values:
        raise UsageError("--range is required for sweep")
    if axis == "frequency":
        values = [parse_frequency(v) for v in values]
    params, mode = scenario_from(cfg), _mode(cfg)
    link = link_from(cfg, need_distance=axis in ("altitude", "frequency"))
    table = sweep(axis, values, link, params, mode, metadata={"scenario": str(cfg["scenario"])})
    fmt = str(cfg.get("format", "csv")).lower()
    if fmt == "json":
        rows = [
            {"axis_name": r["axis_name"], "axis_value": r["axis_value"], "p_los": round(r["p_los"], 6), "p_gs": round(r["p_gs"], 6), "p_bs": round(r["p_bs"], 6)}
            for r in table.as_records()
        ]
        text = json.dumps({"metadata": {"axis": axis, **table.metadata}, "rows": rows}, indent=2) + "\n"
    elif fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["axis_name", "axis_value", "p_los", "p_gs", "p_bs"])
        for r in table.as_records():
            w.writerow([r["axis_name"], repr(r["axis_value"]) if axis == "frequency" else _m(r["axis_value"]), _p(r["p_los"]), _p(r["p_gs"]), _p(r["p_bs"])])
        text = buf.getvalue()
    else:
        raise UsageError("--format must be csv or json")
    _emit(text, cfg.get("out"))
    return EXIT_OK


def _search_output(cfg: dict, label: str, res) -> int:
    if cfg.get("json"):
        payload = {
            label: round(res.distance, 1),
            "probability": round(res.probability, 6),
            "saturated": res.saturated,
            "empty": res.empty,
        }
        _emit(json.dumps(payload) + "\n", cfg.get("out"))
    else:
        flags = [name for name, on in (("saturated", res.saturated), ("empty", res.empty)) if on]
        _emit(f"{label} {_m(res.distance)} p {_p(res.probability)} flags {','.join(flags) or 'none'}\n", cfg.get("out"))
    return EXIT_OK


def cmd_mcd(cfg: dict) -> int:
    threshold = _float(cfg, "threshold")
    if threshold is None:
        raise UsageError("--threshold is required")
    if not 0.0 < threshold < 1.0:
        raise UsageError("--threshold must lie in (0, 1)")
    res = mcd(
        str(cfg.get("path", "los")),
        threshold,
        link_from(cfg, need_distance=False),
        scenario_from(cfg),
        _mode(cfg),
        d_max=_float(cfg, "d_max"),
        step=_float(cfg, "grid_step"),
    )
    return _search_output(cfg, "mcd_m", res)


def cmd_bs_opt(cfg: dict) -> int:
    res = bs_optimal_distance(
        link_from(cfg, need_distance=False),
        scenario_from(cfg),
        _mode(cfg),
        d_max=_float(cfg, "d_max"),
        step=_float(cfg, "grid_step"),
    )
    return _search_output(cfg, "bs_opt_m", res)


def cmd_verify(cfg: dict) -> int:
    oracle = str(cfg.get("oracle", "model")).lower()
    if oracle not in ("model", "geometric"):
        raise UsageError("--oracle must be 'model' or 'geometric'")
    trials = int(_float(cfg, "trials"))
    if trials < 100:
        raise UsageError("--trials must be at least 100")
    seed = int(_float(cfg, "seed"))
    params, link, mode = scenario_from(cfg), link_from(cfg), _mode(cfg)
    path = normalise_path(cfg.get("path", "los"))
    analytic = getattr(path_probabilities(link, params, mode), f"p_{path}")
    if oracle == "model":
        est = mc_model_faithful(path, link, params, trials, seed, mode)
    else:
        est = mc_geometric(path, link, params, trials, seed, mode)
    z = z_score(analytic, est)
    gap = abs(analytic - est.p_hat)
    lines = [
        f"path {path}",
        f"oracle {oracle}",
        f"analytic {_p(analytic)}",
        f"estimate {_p(est.p_hat)}",
        f"stderr {_p(est.stderr)}",
        f"z {z:.3f}" if math.isfinite(z) else "z inf",
        f"trials {est.trials}",
        f"seed {est.seed}",
    ]
    if oracle == "model":
        ok = z <= 4.0
        lines.append(f"result {'agree' if ok else 'disagree'} (|z| <= 4)")
    else:
        ok = gap <= GEOMETRIC_BAND
        lines.append(f"band {GEOMETRIC_BAND:.1f} gap {_p(gap)}")
        lines.append(f"result {'agree' if ok else 'disagree'} (|gap| <= {GEOMETRIC_BAND:.1f})")
    _emit("\n".join(lines) + "\n", cfg.get("out"))
    return EXIT_OK if ok else EXIT_MISMATCH


def cmd_presets(cfg: dict) -> int:
    lines = ["name alpha beta gamma width street"]
    for cli_name, key in CLI_NAMES.items():
        p = PRESETS[key].params
        lines.append(f"{cli_name} {p.alpha:g} {p.beta:g} {p.gamma:g} {_m(p.width)} {_m(p.street_width)}")
    _emit("\n".join(lines) + "\n", cfg.get("out"))
    return EXIT_OK


def cmd_scene_dump(cfg: dict) -> int:
    params = scenario_from(cfg)
    extent = _float(cfg, "extent") or 10.0 * params.pitch
    scene = generate_scene(params, extent, int(_float(cfg, "seed")))
    _emit(scene.to_text(), cfg.get("out"))
    return EXIT_OK


# -- parser ------------------------------------------------------------------


def _common(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("scenario and link")
    g.add_argument("--config", help="key = value file (default: $A2G_CONFIG)")
    g.add_argument("--scenario", help="suburban, urban, dense-urban or high-rise-urban")
    g.add_argument("--alpha", type=float, help="built-up area fraction")
    g.add_argument("--beta", type=float, help="buildings per km^2")
    g.add_argument("--gamma", type=float, help="Rayleigh scale of building height (m)")
    g.add_argument("--freq", help="carrier, e.g. 28GHz, 1400MHz or Hz")
    g.add_argument("--htx", type=float, help="TX height (m)")
    g.add_argument("--hrx", type=float, help="RX height (m)")
    g.add_argument("--dist", type=float, help="horizontal TX-RX distance (m)")
    g.add_argument("--elev", type=float, help="elevation angle (deg), alternative to --dist")
    g.add_argument("--bs-mode", dest="bs_mode", choices=BS_MODES)
    g.add_argument("--out", help="output file (default stdout)")
    g.add_argument("--seed", type=int)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="a2g", description="A2G path occurrence probabilities in stochastic urban scenes")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("prob", help="LoS/GS/BS probabilities for one link")
    _common(p)
    p.add_argument("--explain", action="store_true", default=None, help="per-building factor breakdown")
    p.add_argument("--json", action="store_true", default=None)
    p.set_defaults(func=cmd_prob)

    p = sub.add_parser("sweep", help="probabilities along an axis")
    _common(p)
    p.add_argument("--axis", choices=("distance", "altitude", "elevation", "frequency"))
    p.add_argument("--range", help="start:stop:step (inclusive) or comma list")
    p.add_argument("--format", choices=("csv", "json"))
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("mcd", help="maximum communication distance at a threshold")
    _common(p)
    p.add_argument("--path", choices=PATHS)
    p.add_argument("--threshold", type=float)
    p.add_argument("--d-max", dest="d_max", type=float)
    p.add_argument("--grid-step", dest="grid_step", type=float)
    p.add_argument("--json", action="store_true", default=None)
    p.set_defaults(func=cmd_mcd)

    p = sub.add_parser("bs-opt", help="distance maximising the BS probability")
    _common(p)
    p.add_argument("--d-max", dest="d_max", type=float)
    p.add_argument("--grid-step", dest="grid_step", type=float)
    p.add_argument("--json", action="store_true", default=None)
    p.set_defaults(func=cmd_bs_opt)

    p = sub.add_parser("verify", help="compare a closed form with a Monte Carlo oracle")
    _common(p)
    p.add_argument("--path", choices=PATHS)
    p.add_argument("--trials", type=int)
    p.add_argument("--oracle")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("presets", help="list built-in scenarios")
    p.add_argument("--config", help=argparse.SUPPRESS)
    p.add_argument("--out")
    p.set_defaults(func=cmd_presets)

    p = sub.add_parser("scene-dump", help="write a sampled grid city as text")
    _common(p)
    p.add_argument("--extent", type=float, help="side of the square scene (m)")
    p.set_defaults(func=cmd_scene_dump)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(resolve(args))
    except (UsageError, ParameterError) as exc:
        print(f"a2g: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"a2g: error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
