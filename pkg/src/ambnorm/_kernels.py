"""Hot inner loops, in two interchangeable flavours.

Every kernel exists as a numba ``@njit`` function and as a pure-numpy
function with the same signature. The numba path is used when numba imports
cleanly and the environment variable ``AMBNORM_DISABLE_NUMBA`` is unset (or
set to ``0``/``false``). Both paths are deterministic; within a row the numba
kernels sum in index order.

Kernels
-------
row_products(u, v, u_off, v_off, v_step)
    ``H[j, k] = u[k + u_off[j]] * v[v_step*k + v_off[j]]``, zero where either
    index leaves ``[0, n)``. One row per delay.
dft_rows(h, phasors)
    ``S[j, i] = sum_k h[j, k] * phasors[i, k]``; the direct (non-FFT) Fourier
    sum used for off-bin frequencies and as the reference for the FFT path.
weighted_power_sum(mag, weight, r)
    ``sum(mag**r * weight)`` over all entries.
"""

import os
from types import SimpleNamespace

import numpy as np

_FALSY = {"", "0", "false", "no", "off"}


def _numba_requested():
    return os.environ.get("AMBNORM_DISABLE_NUMBA", "").strip().lower() in _FALSY


# -- numpy -------------------------------------------------------------------

def _row_products_np(u, v, u_off, v_off, v_step):
    n = u.shape[0]
    k = np.arange(n)
    iu = k[None, :] + u_off[:, None]
    iv = v_step * k[None, :] + v_off[:, None]
    ok = (iu >= 0) & (iu < n) & (iv >= 0) & (iv < v.shape[0])
    out = u[np.clip(iu, 0, n - 1)] * v[np.clip(iv, 0, v.shape[0] - 1)]
    out[~ok] = 0.0
    return out


def _dft_rows_np(h, phasors):
    return h @ phasors.T


def _weighted_power_sum_np(mag, weight, r):
    return float(np.sum(mag ** r * weight))


numpy_backend = SimpleNamespace(
    name="numpy",
    row_products=_row_products_np,
    dft_rows=_dft_rows_np,
    weighted_power_sum=_weighted_power_sum_np,
)


# -- numba -------------------------------------------------------------------

def _build_numba_backend():
    import numba
    from numba import prange

    if not os.environ.get("NUMBA_THREADING_LAYER"):
        # The system TBB is often too old for numba; skip it quietly.
        numba.config.THREADING_LAYER_PRIORITY = ["omp", "workqueue", "tbb"]

    opts = dict(cache=True, nogil=True)

    @numba.njit(parallel=True, **opts)
    def row_products(u, v, u_off, v_off, v_step):
        n = u.shape[0]
        nv = v.shape[0]
        m = u_off.shape[0]
        out = np.zeros((m, n), dtype=np.complex128)
        for j in prange(m):
            a = u_off[j]
            b = v_off[j]
            for k in range(n):
                iu = k + a
                iv = v_step * k + b
                if 0 <= iu < n and 0 <= iv < nv:
                    out[j, k] = u[iu] * v[iv]
        return out

    @numba.njit(parallel=True, **opts)
    def dft_rows(h, phasors):
        m, n = h.shape
        nf = phasors.shape[0]
        out = np.empty((m, nf), dtype=np.complex128)
        for j in prange(m):
            for i in range(nf):
                acc = 0.0 + 0.0j
                for k in range(n):
                    acc += h[j, k] * phasors[i, k]
                out[j, i] = acc
        return out

    @numba.njit(**opts)
    def _wps(mag, weight, r):
        acc = 0.0
        for i in range(mag.shape[0]):
            w = weight[i]
            if w != 0.0:
                acc += mag[i] ** r * w
        return acc

    def weighted_power_sum(mag, weight, r):
        mag = np.ascontiguousarray(mag, dtype=np.float64).ravel()
        weight = np.ascontiguousarray(weight, dtype=np.float64).ravel()
        return float(_wps(mag, weight, float(r)))

    def _rp(u, v, u_off, v_off, v_step):
        return row_products(
            np.ascontiguousarray(u, dtype=np.complex128),
            np.ascontiguousarray(v, dtype=np.complex128),
            np.ascontiguousarray(u_off, dtype=np.int64),
            np.ascontiguousarray(v_off, dtype=np.int64),
            int(v_step),
        )

    def _dft(h, phasors):
        return dft_rows(
            np.ascontiguousarray(h, dtype=np.complex128),
            np.ascontiguousarray(phasors, dtype=np.complex128),
        )

    return SimpleNamespace(
        name="numba",
        row_products=_rp,
        dft_rows=_dft,
        weighted_power_sum=weighted_power_sum,
    )


try:
    numba_backend = _build_numba_backend()
    NUMBA_AVAILABLE = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba_backend = None
    NUMBA_AVAILABLE = False


def get_backend(name=None):
    """Return a kernel namespace by name (``"numba"`` or ``"numpy"``).

    ``None`` selects the active backend.
    """
    if name is None:
        return active
    if name == "numpy":
        return numpy_backend
    if name == "numba":
        if numba_backend is None:
            raise ImportError("numba backend requested but numba is not importable")
        return numba_backend
    raise ValueError(f"unknown kernel backend {name!r}")


active = numba_backend if (NUMBA_AVAILABLE and _numba_requested()) else numpy_backend
BACKEND = active.name


def row_products(u, v, u_off, v_off, v_step):
    return active.row_products(u, v, np.asarray(u_off, dtype=np.int64),
                               np.asarray(v_off, dtype=np.int64), int(v_step))


def dft_rows(h, phasors):
    return active.dft_rows(h, phasors)


def weighted_power_sum(mag, weight, r):
    return active.weighted_power_sum(mag, weight, r)
