"""Pure-NumPy fallback for the hot transform kernel.

Same contraction as the compiled extension in ``_kernels.pyx``: the literal
per-output-node quadrature sum, kept O(N^4) on purpose so it stays a faithful
oracle for the chirp-FFT fast paths.  The compiled core is typically one to
two orders of magnitude faster; see ``benchmarks/bench_sandwich.py``.
"""

import numpy as np


def sandwich_sum(ki, fa, fb, kj):
    """Two-sided kernel contraction over a sampled quaternion signal.

    Computes, for every output node (k, l),

        out(k, l) = sum_{m, n} ki[m, k] * f[m, n] * kj[n, l]

    where f = fa + fb*j is given by its complex pair (weights already folded
    in), ki is i-complex (numpy complex with imag part meaning the i
    coefficient) and kj is j-complex (imag part meaning the j coefficient).
    Returns the complex pair (out_a, out_b) of the quaternion result.
    """
    ki = np.ascontiguousarray(ki, dtype=np.complex128)
    fa = np.ascontiguousarray(fa, dtype=np.complex128)
    fb = np.ascontiguousarray(fb, dtype=np.complex128)
    kj = np.ascontiguousarray(kj, dtype=np.complex128)
    nx, nu = ki.shape
    ny, nv = kj.shape
    if fa.shape != (nx, ny) or fb.shape != (nx, ny):
        raise ValueError("signal shape does not match kernel matrices")
    k0 = kj.real
    k1 = kj.imag
    out_a = np.empty((nu, nv), dtype=np.complex128)
    out_b = np.empty((nu, nv), dtype=np.complex128)
    for k in range(nu):
        # left kernel applied to both complex components of the signal
        la = ki[:, k, None] * fa
        lb = ki[:, k, None] * fb
        for l in range(nv):
            # right multiplication by kj = k0 + j*k1 with real k0, k1:
            # (za + zb j)(k0 + k1 j) = (za k0 - zb k1) + (za k1 + zb k0) j
            out_a[k, l] = np.sum(la * k0[:, l] - lb * k1[:, l])
            out_b[k, l] = np.sum(la * k1[:, l] + lb * k0[:, l])
    return out_a, out_b
