"""Benchmark the compiled direct-transform kernel against the pure-NumPy
fallback.

Both backends evaluate the same literal O(N^4) per-node quadrature sum (the
oracle used to validate the chirp-FFT fast paths).  Run from the repo root:

    python3 benchmarks/bench_sandwich.py
"""

import time

import numpy as np

from qlct import _kernels_py

try:
    from qlct import _kernels

    HAVE_COMPILED = True
except ImportError:
    _kernels = None
    HAVE_COMPILED = False


def make_inputs(n, rng):
    ki = np.exp(1j * rng.standard_normal((n, n)))
    kj = np.exp(1j * rng.standard_normal((n, n)))
    fa = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    fb = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return ki, fa, fb, kj


def time_call(fn, args, repeats):
    best = np.inf
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    rng = np.random.default_rng(0)
    print(f"{'N':>4} {'numpy (s)':>12} {'compiled (s)':>13} {'speedup':>8} {'agreement':>11}")
    for n in (8, 16, 24, 32, 48):
        args = make_inputs(n, rng)
        t_py = time_call(_kernels_py.sandwich_sum, args, 3)
        if HAVE_COMPILED:
            t_c = time_call(_kernels.sandwich_sum, args, 3)
            a_py, b_py = _kernels_py.sandwich_sum(*args)
            a_c, b_c = _kernels.sandwich_sum(*args)
            agree = max(
                float(np.max(np.abs(a_py - a_c))), float(np.max(np.abs(b_py - b_c)))
            )
            print(f"{n:>4} {t_py:>12.4f} {t_c:>13.4f} {t_py / t_c:>8.1f} {agree:>11.2e}")
        else:
            print(f"{n:>4} {t_py:>12.4f} {'n/a':>13} {'n/a':>8} {'n/a':>11}")
    if not HAVE_COMPILED:
        print("compiled extension not available; showing fallback only")


if __name__ == "__main__":
    main()
