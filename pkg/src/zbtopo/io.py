"""CSV and JSON emission with a reproducibility contract.

Numeric series go to CSV with 17-significant-digit floats (enough to
round-trip a double exactly), UTF-8, LF line endings; reports and configs
are JSON.  Identical inputs always produce byte-identical files.
"""

from __future__ import annotations

import json

import numpy as np

from .dynamics import Trajectory, ZBSpectrum

__all__ = [
    "fmt",
    "write_trajectory_csv",
    "read_trajectory_csv",
    "write_spectrum_csv",
    "read_spectrum_csv",
    "write_bands_csv",
    "write_sweep_csv",
    "read_csv_table",
    "report_json",
]


def fmt(x) -> str:
    return f"{float(x):.17g}"


def _write_lines(path, lines):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for line in lines:
            fh.write(line + "\n")


def write_trajectory_csv(traj: Trajectory, path) -> None:
    """One row per sample: t,x,y,z."""
    lines = ["t,x,y,z"]
    for t, (x, y, z) in zip(traj.times, traj.pcm):
        lines.append(",".join(fmt(v) for v in (t, x, y, z)))
    _write_lines(path, lines)


def read_trajectory_csv(path) -> Trajectory:
    header, data = _read_table(path)
    if header != ["t", "x", "y", "z"]:
        raise ValueError(f"unexpected trajectory header {header}")
    return Trajectory(times=data[:, 0], pcm=data[:, 1:4])


def write_spectrum_csv(spectrum: ZBSpectrum, path) -> None:
    """One row per frequency bin: omega,px,py,pz (relative power)."""
    lines = ["omega,px,py,pz"]
    for omega, row in zip(spectrum.omegas, spectrum.power):
        lines.append(",".join(fmt(v) for v in (omega, *row)))
    _write_lines(path, lines)


def read_spectrum_csv(path):
    header, data = _read_table(path)
    if header != ["omega", "px", "py", "pz"]:
        raise ValueError(f"unexpected spectrum header {header}")
    return data[:, 0], data[:, 1:4]


def write_bands_csv(path, arc, momenta, energies) -> None:
    """Band energies along a momentum path: s,k1..kd,E1..En."""
    dim = momenta.shape[1]
    nbands = energies.shape[1]
    header = ["s"] + [f"k{i + 1}" for i in range(dim)] + [f"E{i + 1}" for i in range(nbands)]
    lines = [",".join(header)]
    for s, k, e in zip(arc, momenta, energies):
        lines.append(",".join(fmt(v) for v in (s, *k, *e)))
    _write_lines(path, lines)


def write_sweep_csv(path, header, rows) -> None:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(fmt(v) for v in row))
    _write_lines(path, lines)


def read_csv_table(path):
    return _read_table(path)


def _read_table(path):
    with open(path, "r", encoding="utf-8") as fh:
        raw = fh.read().splitlines()
    header = raw[0].split(",")
    data = np.array([[float(v) for v in line.split(",")] for line in raw[1:]])
    return header, data


def report_json(payload: dict) -> str:
    """Deterministic JSON text for reports (insertion-ordered keys)."""
    return json.dumps(payload, indent=2, separators=(",", ": "), allow_nan=False) + "\n"
