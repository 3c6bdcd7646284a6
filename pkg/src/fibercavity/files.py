"""CSV and JSON formats exchanged by the command-line tool.

CSV files are comma separated with one header line and LF line endings;
floats are written with 17 significant digits so they round-trip exactly.
JSON reports carry ``schema_version``.
"""
import csv
import json
from dataclasses import asdict

import numpy as np

from .simulate import ScanTrace

SCHEMA_VERSION = 1
TRACE_COLUMNS = ("position_m", "intensity_norm")
SPECTRUM_COLUMNS = ("detuning_rad_per_s", "reflected_no_atom", "reflected_with_atom")


def fmt(value):
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return format(float(value), ".17g")


def write_csv(path, header, rows):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([fmt(v) for v in row])


def read_csv(path):
    """Return (header, float array of shape (rows, columns))."""
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    if not rows:
        raise ValueError(f"{path}: empty CSV")
    header = [h.strip() for h in rows[0]]
    try:
        data = np.array([[float(v) for v in r] for r in rows[1:] if r], dtype=float)
    except ValueError as exc:
        raise ValueError(f"{path}: non-numeric value ({exc})") from None
    return header, data.reshape(-1, len(header))


def write_trace(path, trace):
    write_csv(path, TRACE_COLUMNS, zip(trace.positions, trace.intensities))


def read_trace(path):
    header, data = read_csv(path)
    if tuple(header) != TRACE_COLUMNS:
        raise ValueError(f"{path}: expected columns {','.join(TRACE_COLUMNS)}, got {','.join(header)}")
    return ScanTrace(data[:, 0], data[:, 1])


def sidecar_path(path):
    """``trace.csv`` -> ``trace.json``."""
    path = str(path)
    return (path[:-4] if path.endswith(".csv") else path) + ".json"


def trace_sidecar(trace):
    cfg = trace.config
    g = cfg.geometry
    return {
        "schema_version": SCHEMA_VERSION,
        "ground_truth": asdict(trace.truth),
        "principal_dip_count": trace.metadata["principal_dip_count"],
        "transverse_mode_spacing_m": trace.metadata["transverse_mode_spacing_m"],
        "config": {
            "wavelength_m": g.wavelength,
            "cavity_length_m": g.cavity_length,
            "radius_x_m": g.radius_x,
            "radius_y_m": g.radius_y,
            "fiber_mode_radius_m": g.fiber_mode_radius,
            "plane_mirror": asdict(cfg.plane_mirror),
            "curved_mirror": asdict(cfg.curved_mirror),
            "scan_start_m": cfg.scan_start,
            "scan_span_m": cfg.scan_span,
            "samples": cfg.samples,
            "noise_sigma": cfg.noise_sigma,
            "seed": cfg.seed,
            "max_transverse_order": cfg.max_transverse_order,
            "transverse_depth_ratio": cfg.transverse_depth_ratio,
            "atom_present": cfg.atom_present,
            "gamma_per_s": cfg.gamma,
        },
    }


def write_json(path, obj):
    text = json.dumps(obj, indent=2, sort_keys=True, allow_nan=True) + "\n"
    if path is None or path == "-":
        return text
    with open(path, "w", newline="\n") as fh:
        fh.write(text)
    return text
