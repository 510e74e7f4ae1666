"""Cross-ambiguity functions and Wigner distributions on phase-space grids.

Three surfaces are provided, all sampled at ``(tau_j, nu_k)``:

``cross_ambiguity``   A(tau, nu) = <g, S_(tau,nu) gamma>
                                 = int conj(g(t)) gamma(t - tau) exp(+i 2 pi nu t) dt
``woodward_ambiguity`` Ã(tau, nu) = int g(t - tau/2) conj(gamma(t + tau/2)) exp(-i 2 pi nu t) dt
``wigner``            W(tau, nu) = 2 Ã_{g, gamma^-}(2 tau, 2 nu),  gamma^-(t) = gamma(-t)

The Wigner orientation is fixed by the last identity, which holds exactly on
the grid. Written as an integral it is
``W(tau, nu) = int g(t/2 - tau) conj(gamma(-t/2 - tau)) exp(-i 2 pi nu t) dt``,
the textbook form ``int g(tau + t/2) conj(gamma(tau - t/2)) exp(-i 2 pi nu t) dt``
mirrored in ``tau``. Norms do not see the difference.

Each surface is built row by row. A row fixes the delay, forms the product
sequence over the time samples and takes a Fourier sum over them. When every
requested frequency lies on a bin of a length-L DFT with ``L*dt*dfreq = 1``, the
sum is an inverse FFT of the (folded or zero-padded) row. Otherwise the sum is
evaluated directly.
"""

from dataclasses import dataclass
import math

import numpy as np

from . import _kernels
from .errors import DomainError, IncompatibleGridsError
from .signal_core import OFF_GRID_TOL, Waveform, mirror_index

KINDS = ("A", "A_tilde", "W")
BIN_TOL = 1e-9


@dataclass(frozen=True)
class Grid2D:
    """Uniform delay-Doppler grid ``tau_j = tau0 + j*dtau``, ``nu_k = nu0 + k*dnu``."""

    tau0: float
    dtau: float
    n_tau: int
    nu0: float
    dnu: float
    n_nu: int

    def __post_init__(self):
        if not (self.dtau > 0 and self.dnu > 0):
            raise DomainError("grid steps must be positive")
        if int(self.n_tau) < 2 or int(self.n_nu) < 2:
            raise DomainError("a phase-space grid needs at least 2 points per axis")
        vals = (self.tau0, self.dtau, self.nu0, self.dnu)
        if not all(math.isfinite(v) for v in vals):
            raise DomainError("grid parameters must be finite")
        for name in ("tau0", "dtau", "nu0", "dnu"):
            object.__setattr__(self, name, float(getattr(self, name)))
        object.__setattr__(self, "n_tau", int(self.n_tau))
        object.__setattr__(self, "n_nu", int(self.n_nu))

    @classmethod
    def from_extent(cls, tau_range, dtau, nu_range, dnu):
        """Half-open ranges ``[lo, hi)`` sampled with the given steps."""
        n_tau = _count(tau_range, dtau)
        n_nu = _count(nu_range, dnu)
        return cls(tau_range[0], dtau, n_tau, nu_range[0], dnu, n_nu)

    @classmethod
    def default(cls):
        return cls(-4.0, 1.0 / 32.0, 256, -4.0, 1.0 / 32.0, 256)

    @property
    def taus(self):
        return self.tau0 + self.dtau * np.arange(self.n_tau)

    @property
    def nus(self):
        return self.nu0 + self.dnu * np.arange(self.n_nu)

    @property
    def cell_area(self):
        return self.dtau * self.dnu

    @property
    def shape(self):
        return (self.n_tau, self.n_nu)

    def mesh(self):
        return np.meshgrid(self.taus, self.nus, indexing="ij")

    def scaled(self, factor):
        """Same grid with both axes multiplied by ``factor``."""
        return Grid2D(self.tau0 * factor, self.dtau * factor, self.n_tau,
                      self.nu0 * factor, self.dnu * factor, self.n_nu)

    def mirrored(self):
        """Grid of the points ``-x``, in increasing order."""
        return Grid2D(-(self.tau0 + (self.n_tau - 1) * self.dtau), self.dtau, self.n_tau,
                      -(self.nu0 + (self.n_nu - 1) * self.dnu), self.dnu, self.n_nu)

    def matches(self, other, rtol=1e-9):
        if self.shape != other.shape:
            return False
        return (abs(self.dtau - other.dtau) <= rtol * self.dtau
                and abs(self.dnu - other.dnu) <= rtol * self.dnu
                and abs(self.tau0 - other.tau0) <= rtol * self.dtau
                and abs(self.nu0 - other.nu0) <= rtol * self.dnu)

    def to_dict(self):
        return {"tau0": self.tau0, "dtau": self.dtau, "n_tau": self.n_tau,
                "nu0": self.nu0, "dnu": self.dnu, "n_nu": self.n_nu}

    @classmethod
    def from_dict(cls, d):
        return cls(d["tau0"], d["dtau"], d["n_tau"], d["nu0"], d["dnu"], d["n_nu"])


def _count(rng, step):
    lo, hi = rng
    n = (hi - lo) / step
    nr = round(n)
    if abs(n - nr) > 1e-9 * max(1.0, abs(n)):
        raise DomainError(f"range [{lo}, {hi}) is not a whole number of steps {step}")
    return int(nr)


@dataclass(frozen=True)
class AmbiguitySurface:
    grid: Grid2D
    values: np.ndarray
    kind: str = "A"

    def __post_init__(self):
        v = np.array(self.values, dtype=np.complex128, copy=True)
        if v.shape != self.grid.shape:
            raise IncompatibleGridsError(f"values of shape {v.shape} do not fit grid {self.grid.shape}")
        if self.kind not in KINDS:
            raise DomainError(f"unknown surface kind {self.kind!r}")
        if not np.all(np.isfinite(v)):
            raise DomainError("surface values must be finite")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    @property
    def magnitude(self):
        return np.abs(self.values)

    def value_at(self, tau, nu):
        j = (tau - self.grid.tau0) / self.grid.dtau
        k = (nu - self.grid.nu0) / self.grid.dnu
        jr, kr = round(j), round(k)
        if abs(j - jr) > 1e-9 or abs(k - kr) > 1e-9 or not (
            0 <= jr < self.grid.n_tau and 0 <= kr < self.grid.n_nu
        ):
            raise IncompatibleGridsError(f"({tau}, {nu}) is not a grid point")
        return complex(self.values[jr, kr])

    def summary(self):
        return {
            "kind": self.kind,
            "grid": self.grid.to_dict(),
            "l2_norm": surface_lp_norm(self, 2),
            "max_abs": float(self.magnitude.max()),
            "max_abs_imag": float(np.abs(self.values.imag).max()),
        }


# -- engine -------------------------------------------------------------------

def _steps(x, dt, what, multiple=1):
    m = x / (dt * multiple)
    mr = round(m)
    if abs(m - mr) > OFF_GRID_TOL * max(1.0, abs(m)):
        raise IncompatibleGridsError(
            f"{what} {x} is not a multiple of {multiple}*dt = {multiple * dt}"
        )
    return int(mr)


def _delay_steps(grid, dt, multiple=1):
    """Delays of the grid in units of ``multiple*dt``."""
    j0 = _steps(grid.tau0, dt, "delay origin", multiple)
    dj = _steps(grid.dtau, dt, "delay step", multiple)
    return j0 + dj * np.arange(grid.n_tau)


def fft_bins(freq0, dfreq, n_freq, dt):
    """DFT length and bin indices for ``freq0 + i*dfreq``, or ``None`` if off-bin.

    The sum ``sum_k h_k exp(i 2 pi f_i k dt)`` equals the length-L inverse DFT of
    ``h`` (folded modulo L) at bin ``l_i`` whenever ``f_i*L*dt = l_i`` is an
    integer for every i.
    """
    step = abs(dfreq)
    length = 1.0 / (dt * step)
    L = round(length)
    if L < 1 or abs(length - L) > BIN_TOL * length:
        return None
    start = freq0 / step
    s = round(start)
    if abs(start - s) > BIN_TOL * max(1.0, abs(start)):
        return None
    sign = 1 if dfreq > 0 else -1
    return int(L), s + sign * np.arange(n_freq)


def _fold(h, L):
    m, n = h.shape
    if n <= L:
        out = np.zeros((m, L), dtype=np.complex128)
        out[:, :n] = h
        return out
    blocks = -(-n // L)
    padded = np.zeros((m, blocks * L), dtype=np.complex128)
    padded[:, :n] = h
    return padded.reshape(m, blocks, L).sum(axis=1)


def fourier_rows(h, t0, dt, freqs0, dfreq, n_freq, method="auto"):
    """``S[j, i] = sum_k h[j, k] exp(i 2 pi f_i (t0 + k dt))`` with ``f_i = freqs0 + i*dfreq``."""
    if method not in ("auto", "fft", "direct"):
        raise DomainError(f"unknown method {method!r}")
    bins = None if method == "direct" else fft_bins(freqs0, dfreq, n_freq, dt)
    if bins is None and method == "fft":
        raise IncompatibleGridsError(
            "requested frequencies do not lie on FFT bins of the time grid; use method='direct'"
        )
    freqs = freqs0 + dfreq * np.arange(n_freq)
    if bins is not None:
        L, idx = bins
        spectrum = np.fft.ifft(_fold(h, L), axis=1) * L
        rows = spectrum[:, np.mod(idx, L)]
        # f_i * t0 from the exact bin index keeps the phase consistent across paths.
        return rows * np.exp(2j * np.pi * (idx / (L * dt)) * t0)[None, :]
    t = t0 + dt * np.arange(h.shape[1])
    phasors = np.exp(2j * np.pi * freqs[:, None] * t[None, :])
    return _kernels.dft_rows(h, phasors)


def _check_pair(g, gamma):
    if not isinstance(g, Waveform) or not isinstance(gamma, Waveform):
        raise TypeError("expected Waveform inputs")
    if not g.same_grid(gamma):
        raise IncompatibleGridsError("g and gamma must share the same time grid")


def cross_ambiguity(g, gamma, grid=None, method="auto"):
    """``A(tau, nu) = <g, S_(tau,nu) gamma>`` on ``grid`` (default 256x256 on [-4, 4)^2)."""
    _check_pair(g, gamma)
    grid = grid or Grid2D.default()
    m = _delay_steps(grid, g.dt)
    h = _kernels.row_products(np.conj(g.samples), gamma.samples, np.zeros_like(m), -m, 1)
    vals = fourier_rows(h, g.t0, g.dt, grid.nu0, grid.dnu, grid.n_nu, method) * g.dt
    return AmbiguitySurface(grid, vals, "A")


def woodward_ambiguity(g, gamma, grid=None, method="auto"):
    """Symmetric (Woodward) cross-ambiguity; delays must be even multiples of dt."""
    _check_pair(g, gamma)
    grid = grid or Grid2D.default()
    half = _delay_steps(grid, g.dt, multiple=2)
    h = _kernels.row_products(g.samples, np.conj(gamma.samples), -half, half, 1)
    vals = fourier_rows(h, g.t0, g.dt, -grid.nu0, -grid.dnu, grid.n_nu, method) * g.dt
    return AmbiguitySurface(grid, vals, "A_tilde")


def wigner(g, gamma, grid=None, method="auto"):
    """Cross-Wigner distribution oriented so that ``W(tau,nu) = 2 Ã_{g,gamma^-}(2tau, 2nu)``."""
    _check_pair(g, gamma)
    grid = grid or Grid2D.default()
    m = _delay_steps(grid, g.dt)
    k_sum = mirror_index(g)
    h = _kernels.row_products(g.samples, np.conj(gamma.samples), -m, k_sum - m, -1)
    vals = fourier_rows(h, g.t0, g.dt, -2 * grid.nu0, -2 * grid.dnu, grid.n_nu, method)
    return AmbiguitySurface(grid, vals * (2 * g.dt), "W")


def surface_lp_norm(s, p):
    """``(sum |values|^p dtau dnu)^(1/p)``."""
    p = float(p)
    if not p > 0 or math.isinf(p):
        raise DomainError(f"p must be positive and finite, got {p}")
    mag = s.magnitude
    peak = mag.max()
    if peak == 0.0:
        return 0.0
    total = _kernels.weighted_power_sum(mag / peak, np.ones_like(mag), p)
    return float(peak * (total * s.grid.cell_area) ** (1.0 / p))


def weighted_r_norm(s, c, r):
    """Un-rooted weighted norm ``sum |values|^r C(x) dtau dnu``.

    ``c`` is a weight (see :mod:`ambnorm.weights`). Indicator rectangles are
    integrated with trapezoid edge weights so a grid-aligned rectangle carries its
    exact area.
    """
    r = float(r)
    if not r > 0 or math.isinf(r):
        raise DomainError(f"r must be positive and finite, got {r}")
    cvals, quad = c.rasterize(s.grid)
    return _kernels.weighted_power_sum(s.magnitude, cvals * quad * s.grid.cell_area, r)
