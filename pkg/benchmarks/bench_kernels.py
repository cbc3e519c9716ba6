"""Time the numba kernels against the pure-numpy fallback.

    python3 benchmarks/bench_kernels.py [--n 16,64,256] [--repeat 5]

Each row reports the best-of-``repeat`` wall time per call for both
backends and their ratio.  The numba column excludes compilation (one
warm-up call per kernel and size).  The package itself switches to the
numpy path above ``kawahara.kernels.NUMBA_MAX_MODES`` modes, where the
numba direct sum stops paying off.
"""
import argparse
import time

import numpy as np

from kawahara.dynamics import dispersion
from kawahara.kernels import load_backend
from kawahara.spectral import random_field


def best_time(func, repeat):
    func()  # warm-up / JIT
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        func()
        times.append(time.perf_counter() - t0)
    return min(times)


def cases(n, rng):
    kl, omega = dispersion(n)
    u = random_field(rng, n, decay=2.0, scale=0.3).half
    v = random_field(rng, n, decay=2.0, scale=0.3).half
    dt = 0.5 / omega[-1]
    period = 2 * np.pi
    return {
        "conv_direct": lambda b: b.conv_direct(u, v),
        "rhs_half": lambda b: b.rhs_half(u, kl, omega, 1.0),
        "rk4 x100": lambda b: b.rk4_advance(u, dt, 100, kl, omega, 1.0, 1e12),
        "leapfrog x100": lambda b: b.leapfrog_advance(u, u, dt, 100, kl, omega, 1.0, 1e12),
        "cn x20": lambda b: b.cn_advance(u, 1e-3, 20, kl, omega, 1.0, 1e-12, 100, period, 1e12),
    }


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--n", default="16,64,256", help="comma list of mode counts")
    p.add_argument("--repeat", type=int, default=5)
    args = p.parse_args(argv)
    numpy_b = load_backend("numpy")
    numba_b = load_backend("numba")
    rng = np.random.default_rng(0)
    print(f"{'kernel':<14} {'N':>5} {'numpy [s]':>12} {'numba [s]':>12} {'speedup':>9}")
    for n in (int(s) for s in args.n.split(",")):
        for name, call in cases(n, rng).items():
            t_np = best_time(lambda: call(numpy_b), args.repeat)
            t_nb = best_time(lambda: call(numba_b), args.repeat)
            print(f"{name:<14} {n:>5} {t_np:>12.3e} {t_nb:>12.3e} {t_np / t_nb:>8.1f}x")


if __name__ == "__main__":
    main()
