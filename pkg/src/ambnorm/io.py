"""CSV and JSON formats for waveforms, surfaces, weights and reports.

Floats are written with 17 significant digits so doubles round-trip exactly.
"""

import csv
import datetime as _dt
import json
import math

import numpy as np

from .errors import IncompatibleGridsError, InvalidParamsError
from .phase_plane import AmbiguitySurface, Grid2D
from .signal_core import Waveform

FLOAT_FMT = "%.17g"
UNIFORM_TOL = 1e-9


def fmt(x):
    return FLOAT_FMT % x


def _read_rows(path, header):
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        try:
            first = next(reader)
        except StopIteration:
            raise InvalidParamsError(f"{path}: empty file") from None
        if [h.strip() for h in first] != header:
            raise InvalidParamsError(f"{path}: expected header {','.join(header)}, got {','.join(first)}")
        rows = [r for r in reader if r]
    try:
        return np.array(rows, dtype=float).reshape(-1, len(header))
    except ValueError as exc:
        raise InvalidParamsError(f"{path}: malformed numeric data ({exc})") from None


def _uniform_axis(values, what):
    """Start, step and count of a strictly uniform, increasing axis."""
    if values.size < 2:
        raise IncompatibleGridsError(f"{what}: need at least two distinct values")
    d = np.diff(values)
    step = (values[-1] - values[0]) / (values.size - 1)
    if step <= 0 or np.abs(d - step).max() > UNIFORM_TOL * step:
        raise IncompatibleGridsError(f"{what}: samples are not uniformly spaced")
    return float(values[0]), float(step), int(values.size)


def write_waveform_csv(path, w):
    with open(path, "w", newline="") as fh:
        out = csv.writer(fh, lineterminator="\n")
        out.writerow(["t", "re", "im"])
        for t, s in zip(w.times, w.samples):
            out.writerow([fmt(t), fmt(s.real), fmt(s.imag)])


def read_waveform_csv(path):
    data = _read_rows(path, ["t", "re", "im"])
    t0, dt, _ = _uniform_axis(data[:, 0], f"{path}: time column")
    return Waveform(data[:, 1] + 1j * data[:, 2], t0, dt)


def write_surface_csv(path, s):
    taus, nus = s.grid.taus, s.grid.nus
    with open(path, "w", newline="") as fh:
        out = csv.writer(fh, lineterminator="\n")
        out.writerow(["tau", "nu", "re", "im"])
        for j, tau in enumerate(taus):
            for k, nu in enumerate(nus):
                v = s.values[j, k]
                out.writerow([fmt(tau), fmt(nu), fmt(v.real), fmt(v.imag)])


def read_surface_csv(path, kind="A"):
    data = _read_rows(path, ["tau", "nu", "re", "im"])
    grid, vals = _grid_table(data[:, :2], data[:, 2] + 1j * data[:, 3], path)
    return AmbiguitySurface(grid, vals, kind)


def read_weight_csv(path):
    """Grid and values of a ``tau,nu,val`` table (mask or sampled weight)."""
    data = _read_rows(path, ["tau", "nu", "val"])
    return _grid_table(data[:, :2], data[:, 2], path)


def write_weight_csv(path, grid, values):
    with open(path, "w", newline="") as fh:
        out = csv.writer(fh, lineterminator="\n")
        out.writerow(["tau", "nu", "val"])
        for j, tau in enumerate(grid.taus):
            for k, nu in enumerate(grid.nus):
                out.writerow([fmt(tau), fmt(nu), fmt(values[j, k])])


def _grid_table(coords, vals, path):
    taus = np.unique(coords[:, 0])
    nus = np.unique(coords[:, 1])
    tau0, dtau, n_tau = _uniform_axis(taus, f"{path}: tau column")
    nu0, dnu, n_nu = _uniform_axis(nus, f"{path}: nu column")
    if coords.shape[0] != n_tau * n_nu:
        raise IncompatibleGridsError(f"{path}: table does not cover a full rectangular grid")
    j = np.rint((coords[:, 0] - tau0) / dtau).astype(int)
    k = np.rint((coords[:, 1] - nu0) / dnu).astype(int)
    out = np.zeros((n_tau, n_nu), dtype=vals.dtype)
    seen = np.zeros((n_tau, n_nu), dtype=bool)
    out[j, k] = vals
    seen[j, k] = True
    if not seen.all():
        raise IncompatibleGridsError(f"{path}: duplicate or missing grid points")
    return Grid2D(tau0, dtau, n_tau, nu0, dnu, n_nu), out


def _clean(obj):
    if isinstance(obj, dict):
        return {k: _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, (np.floating, float)):
        x = float(obj)
        return x if math.isfinite(x) else None
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    return obj


def dumps(obj, timestamp=True):
    """JSON text; Python's float repr is the shortest exact round-trip form."""
    data = _clean(obj)
    if timestamp and isinstance(data, dict):
        data["generated_at"] = _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds")
    return json.dumps(data, indent=2, sort_keys=False) + "\n"


def write_json(path, obj, timestamp=True):
    with open(path, "w") as fh:
        fh.write(dumps(obj, timestamp))
