"""Nonnegative weight functions C(x) on the delay-Doppler plane.

Three kinds of weight are supported:

* :class:`GaussianWeight`, ``alpha * exp(-alpha*pi*|x|^2)``, L1-normalized;
* :class:`IndicatorWeight`, ``chi_U(x) / |U|`` for a :class:`Rect` or a
  :class:`GridMask` region, L1-normalized;
* :class:`SampledWeight`, arbitrary nonnegative values on a :class:`Grid2D`,
  not renormalized (see :func:`normalized`).

Every weight can be rasterized onto a surface grid as a pair
``(values, quadrature_weights)``; the weighted integral of a surface is then
``sum |A|^r * values * quad * dtau * dnu``.
"""

from dataclasses import dataclass
import math

import numpy as np

from .errors import (
    DegenerateRegionError,
    DomainError,
    InvalidParamsError,
    OffGridError,
    RasterizationMismatchError,
)
from .phase_plane import Grid2D
from .signal_core import PhasePoint

ALIGN_TOL = 1e-9


# -- regions ------------------------------------------------------------------

@dataclass(frozen=True)
class Rect:
    tau_min: float
    tau_max: float
    nu_min: float
    nu_max: float

    def __post_init__(self):
        vals = (self.tau_min, self.tau_max, self.nu_min, self.nu_max)
        if not all(math.isfinite(v) for v in vals):
            raise InvalidParamsError("rectangle bounds must be finite")
        if not (self.tau_max > self.tau_min and self.nu_max > self.nu_min):
            raise DegenerateRegionError("rectangle needs tau_max > tau_min and nu_max > nu_min")

    @classmethod
    def wssus(cls, tau_d, b_d):
        """Scattering region ``[0, tau_d] x [-b_d, b_d]``."""
        return cls(0.0, tau_d, -b_d, b_d)

    def contains(self, x1, x2):
        return (self.tau_min <= x1 <= self.tau_max) and (self.nu_min <= x2 <= self.nu_max)


@dataclass(frozen=True)
class GridMask:
    """Union of the grid cells (centred on grid points) whose mask entry is set."""

    grid: Grid2D
    mask: np.ndarray

    def __post_init__(self):
        m = np.array(self.mask, dtype=bool, copy=True)
        if m.shape != self.grid.shape:
            raise InvalidParamsError(f"mask shape {m.shape} does not match grid {self.grid.shape}")
        if not m.any():
            raise DegenerateRegionError("mask region has no cells set")
        m.setflags(write=False)
        object.__setattr__(self, "mask", m)

    def contains(self, x1, x2):
        g = self.grid
        js = _cells(x1, g.tau0, g.dtau, g.n_tau)
        ks = _cells(x2, g.nu0, g.dnu, g.n_nu)
        return any(self.mask[j, k] for j in js for k in ks)


def _cells(x, origin, step, n):
    """Indices of the closed cells ``[x_j - step/2, x_j + step/2]`` containing ``x``."""
    u = (x - origin) / step + 0.5
    found = {math.floor(u + ALIGN_TOL), math.ceil(u - ALIGN_TOL) - 1}
    return [j for j in found if 0 <= j < n]


def area(reg):
    if isinstance(reg, Rect):
        return (reg.tau_max - reg.tau_min) * (reg.nu_max - reg.nu_min)
    if isinstance(reg, GridMask):
        count = int(reg.mask.sum())
        if count == 0:
            raise DegenerateRegionError("mask region has no cells set")
        return count * reg.grid.cell_area
    raise TypeError(f"unsupported region type {type(reg).__name__}")


# -- weights ------------------------------------------------------------------

@dataclass(frozen=True)
class GaussianWeight:
    alpha: float

    def __post_init__(self):
        if not (self.alpha > 0 and math.isfinite(self.alpha)):
            raise InvalidParamsError(f"alpha must be positive and finite, got {self.alpha}")
        object.__setattr__(self, "alpha", float(self.alpha))

    def __call__(self, x1, x2):
        x1 = np.asarray(x1, dtype=float)
        x2 = np.asarray(x2, dtype=float)
        return self.alpha * np.exp(-self.alpha * np.pi * (x1 ** 2 + x2 ** 2))

    def lq_norm(self, s):
        if math.isinf(s):
            return self.alpha
        return (1.0 / s) ** (1.0 / s) * self.alpha ** ((s - 1.0) / s)

    def rasterize(self, grid):
        t, n = grid.mesh()
        return self(t, n), np.ones(grid.shape)

    def describe(self):
        return {"type": "gaussian", "alpha": self.alpha}


@dataclass(frozen=True)
class IndicatorWeight:
    region: object

    def __post_init__(self):
        if not isinstance(self.region, (Rect, GridMask)):
            raise TypeError("indicator region must be a Rect or a GridMask")

    @property
    def area(self):
        return area(self.region)

    def __call__(self, x1, x2):
        inside = np.vectorize(self.region.contains, otypes=[bool])(x1, x2)
        return np.where(inside, 1.0 / self.area, 0.0)

    def lq_norm(self, s):
        u = self.area
        if math.isinf(s):
            return 1.0 / u
        return u ** ((1.0 - s) / s)

    def rasterize(self, grid):
        if isinstance(self.region, Rect):
            return _rasterize_rect(self.region, grid)
        j0, k0 = _embed(self.region.grid, grid)
        vals = np.zeros(grid.shape)
        m = self.region.grid
        vals[j0:j0 + m.n_tau, k0:k0 + m.n_nu][self.region.mask] = 1.0 / self.area
        return vals, np.ones(grid.shape)

    def describe(self):
        reg = self.region
        if isinstance(reg, Rect):
            return {"type": "rect", "tau": [reg.tau_min, reg.tau_max],
                    "nu": [reg.nu_min, reg.nu_max], "area": self.area}
        return {"type": "mask", "grid": reg.grid.to_dict(),
                "cells": int(reg.mask.sum()), "area": self.area}


@dataclass(frozen=True)
class SampledWeight:
    grid: Grid2D
    values: np.ndarray

    def __post_init__(self):
        v = np.array(self.values, dtype=float, copy=True)
        if v.shape != self.grid.shape:
            raise InvalidParamsError(f"weight shape {v.shape} does not match grid {self.grid.shape}")
        if not np.all(np.isfinite(v)):
            raise InvalidParamsError("sampled weight values must be finite")
        if np.any(v < 0):
            raise InvalidParamsError("sampled weight values must be nonnegative")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    @classmethod
    def from_spec(cls, c, grid):
        """Rasterize another weight onto ``grid``, folding quadrature weights into the values."""
        vals, quad = c.rasterize(grid)
        return cls(grid, vals * quad)

    def __call__(self, x1, x2):
        g = self.grid
        j = (np.asarray(x1, dtype=float) - g.tau0) / g.dtau
        k = (np.asarray(x2, dtype=float) - g.nu0) / g.dnu
        jr, kr = np.rint(j), np.rint(k)
        off = (np.abs(j - jr) > ALIGN_TOL) | (np.abs(k - kr) > ALIGN_TOL)
        off |= (jr < 0) | (jr >= g.n_tau) | (kr < 0) | (kr >= g.n_nu)
        if np.any(off):
            raise OffGridError("sampled weight evaluated off its grid")
        return self.values[jr.astype(int), kr.astype(int)]

    def lq_norm(self, s):
        return _riemann_norm(self.values, np.ones(self.grid.shape), self.grid.cell_area, s)

    @property
    def mass(self):
        return float(self.values.sum() * self.grid.cell_area)

    def rasterize(self, grid):
        j0, k0 = _embed(self.grid, grid)
        vals = np.zeros(grid.shape)
        vals[j0:j0 + self.grid.n_tau, k0:k0 + self.grid.n_nu] = self.values
        return vals, np.ones(grid.shape)

    def describe(self):
        return {"type": "sampled", "grid": self.grid.to_dict(),
                "mass": self.mass, "max": float(self.values.max())}


WeightSpec = (GaussianWeight, IndicatorWeight, SampledWeight)


def evaluate(c, x):
    if not isinstance(x, PhasePoint):
        x = PhasePoint(*x)
    return float(c(x.x1, x.x2))


def weight_lq_norm(c, s):
    """``||C||_s`` for ``s >= 1`` (``s = inf`` gives the supremum).

    Closed forms for Gaussian and indicator weights, Riemann sums for sampled ones.
    """
    s = float(s)
    if not s >= 1:
        raise DomainError(f"weight norm exponent must be >= 1, got {s}")
    return float(c.lq_norm(s))


def riemann_lq_norm(c, s, grid):
    """``||C||_s`` from the rasterization of ``c`` on ``grid``."""
    s = float(s)
    if not s >= 1:
        raise DomainError(f"weight norm exponent must be >= 1, got {s}")
    vals, quad = c.rasterize(grid)
    return _riemann_norm(vals, quad, grid.cell_area, s)


def normalized(c):
    """Sampled weight rescaled to unit mass."""
    mass = c.mass
    if mass <= 0:
        raise DegenerateRegionError("cannot normalize a weight with zero mass")
    return SampledWeight(c.grid, c.values / mass)


def _riemann_norm(vals, quad, cell, s):
    support = quad > 0
    peak = vals[support].max() if support.any() else 0.0
    if peak == 0.0:
        return 0.0
    if math.isinf(s):
        return float(peak)
    total = np.sum(quad * (vals / peak) ** s) * cell
    return float(peak * total ** (1.0 / s))


def _index(x, origin, step, what):
    j = (x - origin) / step
    jr = round(j)
    if abs(j - jr) > ALIGN_TOL * max(1.0, abs(j)):
        raise RasterizationMismatchError(f"{what} {x} does not fall on a grid line")
    return int(jr)


def _embed(src, dst):
    """Offsets placing grid ``src`` inside grid ``dst`` point for point."""
    if (abs(src.dtau - dst.dtau) > ALIGN_TOL * dst.dtau
            or abs(src.dnu - dst.dnu) > ALIGN_TOL * dst.dnu):
        raise RasterizationMismatchError("weight grid and surface grid have different steps")
    j0 = _index(src.tau0, dst.tau0, dst.dtau, "weight grid origin")
    k0 = _index(src.nu0, dst.nu0, dst.dnu, "weight grid origin")
    if j0 < 0 or k0 < 0 or j0 + src.n_tau > dst.n_tau or k0 + src.n_nu > dst.n_nu:
        raise RasterizationMismatchError("weight grid extends beyond the surface grid")
    return j0, k0


def _edge_weights(lo, hi, origin, step, n, what):
    a = _index(lo, origin, step, what)
    b = _index(hi, origin, step, what)
    if a < 0 or b > n - 1:
        raise RasterizationMismatchError(f"{what} [{lo}, {hi}] is not inside the surface grid")
    w = np.zeros(n)
    w[a:b + 1] = 1.0
    w[a] = w[b] = 0.5
    return w


def _rasterize_rect(reg, grid):
    wt = _edge_weights(reg.tau_min, reg.tau_max, grid.tau0, grid.dtau, grid.n_tau, "delay range")
    wn = _edge_weights(reg.nu_min, reg.nu_max, grid.nu0, grid.dnu, grid.n_nu, "Doppler range")
    quad = np.outer(wt, wn)
    vals = np.where(quad > 0, 1.0 / area(reg), 0.0)
    return vals, quad


def from_json(obj, load_csv=None):
    """Build a weight from its JSON description.

    ``{"type": "gaussian", "alpha": a}``, ``{"type": "rect", "tau": [a, b], "nu": [c, d]}``,
    ``{"type": "mask", "path": csv}`` or ``{"type": "sampled", "path": csv}``.
    """
    kind = obj.get("type")
    if kind == "gaussian":
        return GaussianWeight(float(obj["alpha"]))
    if kind == "rect":
        (a, b), (c, d) = obj["tau"], obj["nu"]
        return IndicatorWeight(Rect(float(a), float(b), float(c), float(d)))
    if kind in ("mask", "sampled"):
        if load_csv is None:
            from .io import read_weight_csv as load_csv
        grid, vals = load_csv(obj["path"])
        if kind == "mask":
            if not np.all((vals == 0) | (vals == 1)):
                raise InvalidParamsError("mask CSV values must be 0 or 1")
            return IndicatorWeight(GridMask(grid, vals.astype(bool)))
        return SampledWeight(grid, vals)
    raise InvalidParamsError(f"unknown weight type {kind!r}")
