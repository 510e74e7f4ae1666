"""Uniformly sampled complex waveforms.

Integrals over the real line are Riemann sums with weight ``dt``. Delays are
restricted to integer multiples of ``dt`` so that time-frequency shifts act
exactly (up to zero fill at the edges) on the sample lattice.
"""

from dataclasses import dataclass
import math

import numpy as np

from .errors import (
    DegenerateInputError,
    DomainError,
    GridTooNarrowError,
    IncompatibleGridsError,
    InvalidParamsError,
    OffGridDelayError,
)

# Desk-scale time grid: t in [-8, 8), dt = 1/64.
DEFAULT_T0 = -8.0
DEFAULT_DT = 1.0 / 64.0
DEFAULT_N = 1024

TAIL_GUARD = 1e-12
OFF_GRID_TOL = 1e-9


@dataclass(frozen=True)
class Waveform:
    """Samples ``f(t0 + k*dt)`` for ``k = 0..n-1``."""

    samples: np.ndarray
    t0: float
    dt: float

    def __post_init__(self):
        s = np.array(self.samples, dtype=np.complex128, copy=True).ravel()
        if s.shape[0] < 2:
            raise InvalidParamsError("a waveform needs at least two samples")
        if not (self.dt > 0 and math.isfinite(self.dt)):
            raise InvalidParamsError(f"dt must be positive and finite, got {self.dt}")
        if not math.isfinite(self.t0):
            raise InvalidParamsError("t0 must be finite")
        if not np.all(np.isfinite(s)):
            raise InvalidParamsError("waveform samples must be finite")
        s.setflags(write=False)
        object.__setattr__(self, "samples", s)
        object.__setattr__(self, "t0", float(self.t0))
        object.__setattr__(self, "dt", float(self.dt))

    @property
    def n(self):
        return self.samples.shape[0]

    @property
    def times(self):
        return self.t0 + self.dt * np.arange(self.n)

    def same_grid(self, other):
        return (
            self.n == other.n
            and abs(self.dt - other.dt) <= 1e-12 * self.dt
            and abs(self.t0 - other.t0) <= OFF_GRID_TOL * self.dt
        )

    def with_samples(self, samples):
        return Waveform(samples, self.t0, self.dt)


@dataclass(frozen=True)
class GaussianParams:
    """Parameters of ``exp(-a t**2 + b t + c)``; ``Re(a) > 0`` is required."""

    a: complex
    b: complex = 0.0
    c: complex = 0.0

    def __post_init__(self):
        for name in ("a", "b", "c"):
            val = complex(getattr(self, name))
            if not (math.isfinite(val.real) and math.isfinite(val.imag)):
                raise InvalidParamsError(f"Gaussian parameter {name} must be finite")
            object.__setattr__(self, name, val)
        if self.a.real <= 0:
            raise InvalidParamsError(f"Gaussian needs Re(a) > 0, got a = {self.a}")

    @classmethod
    def unit(cls, a=math.pi, b=0.0):
        """Parameters whose Gaussian has unit L2 norm on the real line."""
        a = complex(a)
        b = complex(b)
        if a.real <= 0:
            raise InvalidParamsError(f"Gaussian needs Re(a) > 0, got a = {a}")
        # int |f|^2 = sqrt(pi / (2 Re a)) * exp((Re b)^2 / (2 Re a) + 2 Re c)
        log_mass = 0.5 * math.log(math.pi / (2 * a.real)) + b.real ** 2 / (2 * a.real)
        return cls(a, b, -0.5 * log_mass)


@dataclass(frozen=True)
class PhasePoint:
    x1: float
    x2: float

    def __post_init__(self):
        if not (math.isfinite(self.x1) and math.isfinite(self.x2)):
            raise InvalidParamsError("phase-space coordinates must be finite")


def default_time_grid():
    return DEFAULT_T0, DEFAULT_DT, DEFAULT_N


def lp_norm(w, p):
    """``(sum |f_k|^p dt)^(1/p)``; ``p = inf`` gives ``max |f_k|``."""
    p = float(p)
    if not p > 0:
        raise DomainError(f"p must be positive, got {p}")
    mag = np.abs(w.samples)
    if math.isinf(p):
        return float(mag.max())
    peak = mag.max()
    if peak == 0.0:
        return 0.0
    # Scale by the peak so large p does not underflow.
    return float(peak * (np.sum((mag / peak) ** p) * w.dt) ** (1.0 / p))


def normalize_l2(w):
    norm = lp_norm(w, 2)
    if norm == 0.0:
        raise DegenerateInputError("cannot normalize a zero waveform")
    return w.with_samples(w.samples / norm)


def make_gaussian(params, t0=DEFAULT_T0, dt=DEFAULT_DT, n=DEFAULT_N):
    if not isinstance(params, GaussianParams):
        params = GaussianParams(*params)
    t = t0 + dt * np.arange(n)
    expo = -params.a * t ** 2 + params.b * t + params.c
    log_mag = expo.real
    peak = log_mag.max()
    edge = max(log_mag[0], log_mag[-1])
    if edge - peak >= math.log(TAIL_GUARD):
        raise GridTooNarrowError(
            "Gaussian tails are not negligible at the grid edges "
            f"(edge/peak = {math.exp(edge - peak):.3g}); widen the time grid"
        )
    return Waveform(np.exp(expo), t0, dt)


def delay_index(x1, dt):
    """Number of samples corresponding to the delay ``x1``."""
    m = x1 / dt
    mr = round(m)
    if abs(m - mr) > OFF_GRID_TOL:
        raise OffGridDelayError(f"delay {x1} is not a multiple of dt = {dt}")
    return int(mr)


def tf_shift(w, x):
    """``(S_x f)(t) = exp(i 2 pi x2 t) f(t - x1)`` with zero fill."""
    if not isinstance(x, PhasePoint):
        x = PhasePoint(*x)
    m = delay_index(x.x1, w.dt)
    out = np.zeros(w.n, dtype=np.complex128)
    if m >= 0:
        if m < w.n:
            out[m:] = w.samples[: w.n - m]
    elif -m < w.n:
        out[:m] = w.samples[-m:]
    out *= np.exp(2j * np.pi * x.x2 * w.times)
    return w.with_samples(out)


def inner_product(g, h):
    """``<g, h> = sum conj(g_k) h_k dt``."""
    if not g.same_grid(h):
        raise IncompatibleGridsError("inner product needs waveforms on identical grids")
    return complex(np.vdot(g.samples, h.samples) * g.dt)


def mirror_index(w):
    """Integer K with ``-t_k = t_(K-k)``; requires ``2*t0/dt`` to be an integer."""
    k_sum = -2.0 * w.t0 / w.dt
    ks = round(k_sum)
    if abs(k_sum - ks) > OFF_GRID_TOL:
        raise IncompatibleGridsError(
            "time grid is not mirror-symmetric on the sample lattice (2*t0/dt must be an integer)"
        )
    return int(ks)


def reflect(w):
    """``f^-(t) = f(-t)`` sampled on the same grid, zero where ``-t`` is off the grid."""
    idx = mirror_index(w) - np.arange(w.n)
    ok = (idx >= 0) & (idx < w.n)
    out = np.zeros(w.n, dtype=np.complex128)
    out[ok] = w.samples[idx[ok]]
    return w.with_samples(out)


def conjugate(w):
    return w.with_samples(np.conj(w.samples))
