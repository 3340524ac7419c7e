"""Command-line front end.

    zb bands|zb|invariants|phase-diagram|verify --config FILE
       [--out DIR] [--jobs N] [--allow-critical]

Configs are strict JSON (unknown keys are rejected); numeric series land
in CSV, reports in JSON, all byte-reproducible for a fixed config + seed.
The environment variable ZB_SEED overrides the config seed.  Exit codes:
0 success, 1 runtime error, 2 config error, 3 verification failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from . import io as zio
from .dynamics import (
    WavePacket,
    pcm_trajectory_exact,
    rotation_index,
    wavepacket_trajectory,
    zb_spectrum,
)
from .invariants import compute_invariants
from .models import chiral_ti_3d, kane_mele, maxwell_lattice, spin_j_continuum
from .verify import run_verify

__all__ = ["main", "ConfigError"]


class ConfigError(ValueError):
    """Invalid run configuration (exit code 2)."""


MODEL_PARAMS = {
    "maxwell": {"t_h", "M"},
    "spin_j": {"j", "v_x", "v_y", "m", "basis"},
    "kane_mele": {"t", "lambda_so", "lambda_r", "lambda_v"},
    "chiral_ti": {"M"},
}

SECTION_KEYS = {
    "model": {"name", "params"},
    "dynamics": {
        "momentum",
        "packet",
        "spinor",
        "samples_per_period",
        "periods",
        "include_drift",
        "plane",
    },
    "packet": {"width", "center", "grid_points", "half_width"},
    "topology": {"plaquette_grid", "winding_grid"},
    "bands_path": {"points_per_segment"},
    "sweep": {"parameter", "start", "stop", "step"},
}

COMMAND_SECTIONS = {
    "bands": {"required": {"model"}, "optional": {"bands_path", "seed"}},
    "zb": {"required": {"model", "dynamics"}, "optional": {"seed"}},
    "invariants": {"required": {"model"}, "optional": {"topology", "seed"}},
    "phase-diagram": {"required": {"model", "sweep"}, "optional": {"topology", "seed"}},
    "verify": {"required": {"seed"}, "optional": set()},
}


def _check_keys(section: dict, allowed: set, where: str):
    unknown = set(section) - allowed
    if unknown:
        raise ConfigError(f"unknown keys in {where}: {sorted(unknown)}")


def load_config(path: str, command: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            config = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config is not valid JSON: {exc}") from exc
    if not isinstance(config, dict):
        raise ConfigError("config root must be a JSON object")

    spec = COMMAND_SECTIONS[command]
    _check_keys(config, spec["required"] | spec["optional"], "config root")
    missing = spec["required"] - set(config)
    if missing:
        raise ConfigError(f"missing config sections for '{command}': {sorted(missing)}")
    for name in ("model", "dynamics", "topology", "bands_path", "sweep"):
        if name in config:
            if not isinstance(config[name], dict):
                raise ConfigError(f"section '{name}' must be an object")
            _check_keys(config[name], SECTION_KEYS[name], f"section '{name}'")
    if "dynamics" in config and "packet" in config["dynamics"]:
        _check_keys(config["dynamics"]["packet"], SECTION_KEYS["packet"], "dynamics.packet")
    if "seed" in config and not isinstance(config["seed"], int):
        raise ConfigError("seed must be an integer")
    return config


def build_model(section: dict):
    name = section.get("name")
    if name not in MODEL_PARAMS:
        raise ConfigError(f"unknown model {name!r}; choose from {sorted(MODEL_PARAMS)}")
    params = section.get("params", {})
    if not isinstance(params, dict):
        raise ConfigError("model params must be an object")
    _check_keys(params, MODEL_PARAMS[name], f"model '{name}' params")
    try:
        if name == "maxwell":
            return maxwell_lattice(params["t_h"], params["M"])
        if name == "spin_j":
            return spin_j_continuum(
                params["j"], params["v_x"], params["v_y"], params["m"],
                params.get("basis", "ladder"),
            )
        if name == "kane_mele":
            return kane_mele(
                params["t"], params["lambda_so"], params["lambda_r"], params["lambda_v"]
            )
        return chiral_ti_3d(params["M"])
    except KeyError as exc:
        raise ConfigError(f"model '{name}' is missing parameter {exc}") from exc


def _parse_spinor(raw, dim):
    if isinstance(raw, dict):
        _check_keys(raw, {"eigenstate"}, "dynamics.spinor")
        band = raw["eigenstate"]
        if not isinstance(band, int) or not 0 <= band < dim:
            raise ConfigError(f"eigenstate index must be in 0..{dim - 1}")
        return band
    if not isinstance(raw, list) or len(raw) != dim:
        raise ConfigError(f"spinor must be a list of {dim} [re, im] pairs")
    try:
        coeffs = np.array([complex(re, im) for re, im in raw])
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"bad spinor entry: {exc}") from exc
    return coeffs


# ----------------------------------------------------------------------
# commands
# ----------------------------------------------------------------------

_PATHS_2D = (
    ("G", (0.0, 0.0)),
    ("X", (np.pi, 0.0)),
    ("M", (np.pi, np.pi)),
    ("G", (0.0, 0.0)),
)
_PATHS_HEX = (
    ("G", (0.0, 0.0)),
    ("K", (2 * np.pi / 3, 4 * np.pi / 3)),
    ("M", (np.pi, np.pi)),
    ("K'", (4 * np.pi / 3, 2 * np.pi / 3)),
    ("G", (0.0, 0.0)),
)
_PATHS_3D = (
    ("G", (0.0, 0.0, 0.0)),
    ("X", (np.pi, 0.0, 0.0)),
    ("M", (np.pi, np.pi, 0.0)),
    ("G", (0.0, 0.0, 0.0)),
    ("R", (np.pi, np.pi, np.pi)),
)


def cmd_bands(config, out_dir):
    from .models import evaluate

    model = build_model(config["model"])
    points = config.get("bands_path", {}).get("points_per_segment", 60)
    if not isinstance(points, int) or points < 2:
        raise ConfigError("points_per_segment must be an integer >= 2")
    if model.name == "kane_mele":
        nodes = _PATHS_HEX
    elif model.momentum_dim == 3:
        nodes = _PATHS_3D
    elif model.momentum_dim == 2:
        nodes = _PATHS_2D
    else:
        raise ConfigError(f"no band path defined for model '{model.name}'")

    ks, arc = [], []
    s = 0.0
    for (_, a), (_, b) in zip(nodes[:-1], nodes[1:]):
        a, b = np.asarray(a), np.asarray(b)
        seg = np.linspace(0.0, 1.0, points, endpoint=False)
        for frac in seg:
            ks.append(a + frac * (b - a))
            arc.append(s + frac * np.linalg.norm(b - a))
        s += float(np.linalg.norm(b - a))
    ks.append(np.asarray(nodes[-1][1], dtype=float))
    arc.append(s)
    ks = np.array(ks)
    energies = np.linalg.eigvalsh(evaluate(model, ks))
    path = os.path.join(out_dir, "bands.csv")
    zio.write_bands_csv(path, np.array(arc), ks, energies)
    print(path)
    return 0


def cmd_zb(config, out_dir):
    model = build_model(config["model"])
    dyn = config["dynamics"]
    if ("momentum" in dyn) == ("packet" in dyn):
        raise ConfigError("dynamics needs exactly one of 'momentum' or 'packet'")
    spp = dyn.get("samples_per_period", 64)
    periods = dyn.get("periods", 8)
    spinor = _parse_spinor(dyn.get("spinor"), model.band_count) if "spinor" in dyn else None
    if spinor is None:
        raise ConfigError("dynamics.spinor is required")

    if "momentum" in dyn:
        k = np.asarray(dyn["momentum"], dtype=float)
        traj = pcm_trajectory_exact(
            model, k, spinor, include_drift=dyn.get("include_drift", False),
            samples_per_period=spp, periods=periods,
        )
    else:
        pk = dyn["packet"]
        center = np.asarray(pk.get("center", [0.0] * model.momentum_dim), dtype=float)
        packet = WavePacket(width=pk["width"], center=center, spinor=spinor)
        grid_spec = None
        if "half_width" in pk or "grid_points" in pk:
            grid_spec = (pk.get("half_width", 5.0 / pk["width"]), pk.get("grid_points"))
        traj = wavepacket_trajectory(
            model, packet, grid_spec, include_drift=dyn.get("include_drift", True),
            samples_per_period=spp, periods=periods,
        )

    spectrum = zb_spectrum(traj)
    plane = tuple(dyn.get("plane", (0, 1)))
    sense = rotation_index(traj, plane=plane)
    zio.write_trajectory_csv(traj, os.path.join(out_dir, "trajectory.csv"))
    zio.write_spectrum_csv(spectrum, os.path.join(out_dir, "spectrum.csv"))
    print(sense)
    return 0


def cmd_invariants(config, out_dir):
    model = build_model(config["model"])
    topo = config.get("topology", {})
    report = compute_invariants(
        model,
        plaquette_grid=topo.get("plaquette_grid", 64),
        winding_grid=topo.get("winding_grid", 40),
    )
    text = zio.report_json(report.to_dict())
    path = os.path.join(out_dir, "invariants.json")
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
    sys.stdout.write(text)
    return 0


def _sweep_value(args):
    model_section, parameter, value, plaquette_grid = args
    section = {
        "name": model_section["name"],
        "params": {**model_section.get("params", {}), parameter: value},
    }
    model = build_model(section)
    from .invariants import linearize_at_hsp, chern_from_hsp, winding_from_hsp, z2_kane_mele

    if model.name == "maxwell":
        nus = [linearize_at_hsp(model, K).nu for K in model.hsps]
        return [value, chern_from_hsp(model, -1)] + nus
    if model.name == "chiral_ti":
        nus = [linearize_at_hsp(model, K).nu for K in model.hsps]
        return [value, winding_from_hsp(model)] + nus
    if model.name == "kane_mele":
        return [value, z2_kane_mele(model)]
    raise ConfigError(f"phase-diagram sweep not defined for model '{model.name}'")


def cmd_phase_diagram(config, out_dir, jobs, allow_critical):
    model_section = config["model"]
    model = build_model(model_section)
    sweep = config["sweep"]
    parameter = sweep.get("parameter", model.sweep_parameter)
    if model.name == "kane_mele":
        if parameter not in ("lambda_v", "lambda_so"):
            raise ConfigError("kane_mele sweeps support parameter lambda_v or lambda_so")
    elif parameter != model.sweep_parameter:
        raise ConfigError(
            f"model '{model.name}' sweeps over {model.sweep_parameter!r}, got {parameter!r}"
        )
    try:
        start, stop, step = sweep["start"], sweep["stop"], sweep["step"]
    except KeyError as exc:
        raise ConfigError(f"sweep is missing {exc}") from exc
    if step <= 0 or stop < start:
        raise ConfigError("sweep needs step > 0 and stop >= start")
    values = np.arange(start, stop + step / 2, step)
    if values.size == 0:
        raise ConfigError("empty sweep range")
    kept = []
    for value in values:
        critical = any(abs(value - c) < 1e-6 for c in model.critical_values)
        if critical and not allow_critical:
            print(f"skipping critical point {parameter}={value:.6g}", file=sys.stderr)
            continue
        kept.append(float(value))
    if not kept:
        raise ConfigError("sweep contains only critical points; use --allow-critical")

    tasks = [(model_section, parameter, v, config.get("topology", {}).get("plaquette_grid", 64))
             for v in kept]
    if jobs == 1:
        rows = [_sweep_value(t) for t in tasks]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(_sweep_value, tasks))

    if model.name == "maxwell":
        header = [parameter, "chern"] + [_nu_col(K) for K in model.hsps]
    elif model.name == "chiral_ti":
        header = [parameter, "winding"] + [_nu_col(K) for K in model.hsps]
    else:
        header = [parameter, "z2"]
    path = os.path.join(out_dir, "phase_diagram.csv")
    zio.write_sweep_csv(path, header, rows)
    print(path)
    return 0


def _nu_col(K):
    tags = ["pi" if abs(x - np.pi) < 1e-12 else "0" for x in K]
    return "nu_" + "_".join(tags)


def cmd_verify(config, out_dir):
    seed = config["seed"]
    env_seed = os.environ.get("ZB_SEED")
    if env_seed is not None:
        try:
            seed = int(env_seed)
        except ValueError as exc:
            raise ConfigError(f"ZB_SEED must be an integer, got {env_seed!r}") from exc
    text, ok = run_verify(seed)
    sys.stdout.write(text)
    path = os.path.join(out_dir, "verify_report.txt")
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
    return 0 if ok else 3


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="zb",
        description="oscillation dynamics and topological invariants for small band models",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMAND_SECTIONS:
        cmd = sub.add_parser(name)
        cmd.add_argument("--config", required=True)
        cmd.add_argument("--out", default=".")
        cmd.add_argument("--jobs", type=int, default=os.cpu_count() or 1)
        cmd.add_argument("--allow-critical", action="store_true")
    args = parser.parse_args(argv)

    try:
        config = load_config(args.config, args.command)
        os.makedirs(args.out, exist_ok=True)
        if args.command == "bands":
            return cmd_bands(config, args.out)
        if args.command == "zb":
            return cmd_zb(config, args.out)
        if args.command == "invariants":
            return cmd_invariants(config, args.out)
        if args.command == "phase-diagram":
            return cmd_phase_diagram(config, args.out, max(args.jobs, 1), args.allow_critical)
        return cmd_verify(config, args.out)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # noqa: BLE001 - CLI boundary
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
