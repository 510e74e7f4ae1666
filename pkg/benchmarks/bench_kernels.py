"""Time the numba and numpy kernel backends on desk-scale inputs.

    python benchmarks/bench_kernels.py [--repeat N]

Each kernel runs once untimed (numba compiles or loads its cache), then the
best of N timed runs is reported along with the max difference between the
two backends' outputs.
"""

import argparse
import time

import numpy as np

from ambnorm import _kernels
from ambnorm.phase_plane import Grid2D, cross_ambiguity, wigner
from ambnorm.verify import random_pair


def best_of(fn, repeat):
    fn()
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t)
    return min(times)


def kernel_cases(rng):
    n = 1024
    u = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    v = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    offs = np.arange(-128, 128, 2)
    h = rng.standard_normal((64, n)) + 1j * rng.standard_normal((64, n))
    ph = np.exp(2j * np.pi * rng.random((65, n)))
    mag = rng.random((256, 256))
    w = rng.random((256, 256))
    return {
        "row_products 256x1024": lambda b: b.row_products(u, v, offs * 0, offs, 1),
        "dft_rows 64x65x1024": lambda b: b.dft_rows(h, ph),
        "weighted_power_sum 256^2": lambda b: b.weighted_power_sum(mag, w, 1.5),
    }


def surface_cases(rng):
    g, h = random_pair(rng)
    off_bin = Grid2D(0.0, 1 / 32, 33, -np.e / 2, np.e / 64, 65)
    return {
        "cross_ambiguity 256x256 (fft)": lambda: cross_ambiguity(g, h).values,
        "cross_ambiguity 33x65 (direct)": lambda: cross_ambiguity(g, h, off_bin).values,
        "wigner 256x256": lambda: wigner(g, h).values,
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    rng = np.random.default_rng(0)
    backends = [_kernels.get_backend("numpy")]
    if _kernels.NUMBA_AVAILABLE:
        backends.append(_kernels.get_backend("numba"))

    print(f"{'case':34s}" + "".join(f"{b.name:>12s}" for b in backends) + f"{'max diff':>12s}")
    for name, case in kernel_cases(rng).items():
        ts = [best_of(lambda b=b: case(b), args.repeat) for b in backends]
        outs = [np.asarray(case(b)) for b in backends]
        diff = float(np.abs(outs[0] - outs[-1]).max())
        print(f"{name:34s}" + "".join(f"{t * 1e3:10.2f}ms" for t in ts) + f"{diff:12.1e}")

    saved = _kernels.active
    try:
        for name, case in surface_cases(rng).items():
            ts, outs = [], []
            for b in backends:
                _kernels.active = b
                ts.append(best_of(case, args.repeat))
                outs.append(case())
            diff = float(np.abs(outs[0] - outs[-1]).max())
            print(f"{name:34s}" + "".join(f"{t * 1e3:10.2f}ms" for t in ts) + f"{diff:12.1e}")
    finally:
        _kernels.active = saved


if __name__ == "__main__":
    main()
