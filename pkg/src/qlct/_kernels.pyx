# cython: boundscheck=False, wraparound=False, initializedcheck=False, cdivision=True
"""Compiled core for the hot transform kernel.

Direct two-sided kernel contraction, evaluated literally per output node so
it stays a faithful O(N^4) oracle for the chirp-FFT fast paths.  Inputs are
repacked into unit-stride real/imaginary planes so the inner loop
auto-vectorizes; the reduction order per output node is fixed, making
results reproducible bit for bit.  A pure-NumPy implementation with the same
contract lives in ``_kernels_py.py``.
"""

import numpy as np

cimport numpy as cnp

cnp.import_array()


def sandwich_sum(ki, fa, fb, kj):
    """See ``qlct._kernels_py.sandwich_sum`` for the contract."""
    ki = np.ascontiguousarray(ki, dtype=np.complex128)
    fa = np.ascontiguousarray(fa, dtype=np.complex128)
    fb = np.ascontiguousarray(fb, dtype=np.complex128)
    kj = np.ascontiguousarray(kj, dtype=np.complex128)

    cdef Py_ssize_t nx = ki.shape[0], nu = ki.shape[1]
    cdef Py_ssize_t ny = kj.shape[0], nv = kj.shape[1]
    if fa.shape[0] != nx or fa.shape[1] != ny or fb.shape[0] != nx or fb.shape[1] != ny:
        raise ValueError("signal shape does not match kernel matrices")

    # unit-stride planes: kernels transposed so the contraction axes are contiguous
    cdef cnp.ndarray[cnp.float64_t, ndim=2, mode="c"] kir = \
        np.ascontiguousarray(ki.T.real)
    cdef cnp.ndarray[cnp.float64_t, ndim=2, mode="c"] kii = \
        np.ascontiguousarray(ki.T.imag)
    cdef cnp.ndarray[cnp.float64_t, ndim=2, mode="c"] far = \
        np.ascontiguousarray(fa.real)
    cdef cnp.ndarray[cnp.float64_t, ndim=2, mode="c"] fai = \
        np.ascontiguousarray(fa.imag)
    cdef cnp.ndarray[cnp.float64_t, ndim=2, mode="c"] fbr = \
        np.ascontiguousarray(fb.real)
    cdef cnp.ndarray[cnp.float64_t, ndim=2, mode="c"] fbi = \
        np.ascontiguousarray(fb.imag)
    cdef cnp.ndarray[cnp.float64_t, ndim=2, mode="c"] kj0 = \
        np.ascontiguousarray(kj.T.real)
    cdef cnp.ndarray[cnp.float64_t, ndim=2, mode="c"] kj1 = \
        np.ascontiguousarray(kj.T.imag)

    cdef cnp.ndarray[cnp.float64_t, ndim=2, mode="c"] oar = np.empty((nu, nv))
    cdef cnp.ndarray[cnp.float64_t, ndim=2, mode="c"] oai = np.empty((nu, nv))
    cdef cnp.ndarray[cnp.float64_t, ndim=2, mode="c"] obr = np.empty((nu, nv))
    cdef cnp.ndarray[cnp.float64_t, ndim=2, mode="c"] obi = np.empty((nu, nv))

    cdef Py_ssize_t k, l, m, n
    cdef double kr, km, par, pai, pbr, pbi, w0, w1
    cdef double aar, aai, abr, abi

    for k in range(nu):
        for l in range(nv):
            aar = aai = abr = abi = 0.0
            for m in range(nx):
                kr = kir[k, m]
                km = kii[k, m]
                for n in range(ny):
                    par = kr * far[m, n] - km * fai[m, n]
                    pai = kr * fai[m, n] + km * far[m, n]
                    pbr = kr * fbr[m, n] - km * fbi[m, n]
                    pbi = kr * fbi[m, n] + km * fbr[m, n]
                    w0 = kj0[l, n]
                    w1 = kj1[l, n]
                    aar += par * w0 - pbr * w1
                    aai += pai * w0 - pbi * w1
                    abr += par * w1 + pbr * w0
                    abi += pai * w1 + pbi * w0
            oar[k, l] = aar
            oai[k, l] = aai
            obr[k, l] = abr
            obi[k, l] = abi

    return (
        np.asarray(oar) + 1j * np.asarray(oai),
        np.asarray(obr) + 1j * np.asarray(obi),
    )
