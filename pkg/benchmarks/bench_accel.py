"""Compare the numba and pure-numpy paths of the hot kernels.

    python benchmarks/bench_accel.py [--points N] [--repeat R]
"""

import argparse
import timeit

import numpy as np

from greenkit import _accel
from greenkit.kernel import build_kernel


def bench(label, fn, repeat):
    fn()  # warm-up (JIT compile)
    best = min(timeit.repeat(fn, number=1, repeat=repeat))
    print(f"{label:<28s} {best * 1e3:9.3f} ms")
    return best


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--points", type=int, default=200_000)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()

    x = np.linspace(-20, 20, args.points)
    rng = np.random.default_rng(0)
    z = rng.uniform(-10, 10, args.points) + 1j * rng.uniform(0, 10, args.points)
    print(f"{args.points} points, best of {args.repeat}; numba available: {_accel.HAVE_NUMBA}")

    for n in (3, 7):
        k = build_kernel(n)
        a = (x, k._alphas, k._coefs, k._sides, 0)
        t_np = bench(f"kernel_sum n={n} numpy", lambda: _accel.kernel_sum_numpy(*a), args.repeat)
        if _accel.HAVE_NUMBA:
            t_nb = bench(f"kernel_sum n={n} numba", lambda: _accel.kernel_sum_numba(*a), args.repeat)
            dev = np.max(np.abs(_accel.kernel_sum_numpy(*a)[0] - _accel.kernel_sum_numba(*a)[0]))
            print(f"{'':28s} speedup {t_np / t_nb:5.2f}x, max diff {dev:.1e}")

    t_np = bench("faddeeva numpy", lambda: _accel.faddeeva_upper_numpy(z), args.repeat)
    if _accel.HAVE_NUMBA:
        t_nb = bench("faddeeva numba", lambda: _accel.faddeeva_upper_numba(z), args.repeat)
        dev = np.max(np.abs(_accel.faddeeva_upper_numpy(z) - _accel.faddeeva_upper_numba(z)))
        print(f"{'':28s} speedup {t_np / t_nb:5.2f}x, max diff {dev:.1e}")


if __name__ == "__main__":
    main()
