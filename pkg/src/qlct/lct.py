"""Two-sided quaternionic linear canonical transform (QLCT).

The transform places an i-axis kernel on the left of the signal and a j-axis
kernel on the right, each parameterized by a unimodular 2x2 real matrix
(a, b; c, d):

    L(f)(u,v) = integral K_i(x,u) f(x,y) K_j(y,v) dx dy,
    K_i(x,u)  = (i 2 pi b1)^(-1/2) exp(i (a1 x^2 - 2 x u + d1 u^2) / (2 b1)),

with the b = 0 branch sqrt(d) exp(i c d u^2 / 2).  The principal square root
is used throughout (sqrt(i) = exp(i pi/4)), which also covers the negative-b
kernels that arise from the inverse matrices.

The direct path evaluates the quadrature sum at arbitrary frequency nodes
(the oracle).  The fast path chirps the signal, runs the fast QFT, and undoes
the chirp/prefactor algebra of the QLCT-QFT relation

    F(f~)(u/b1, v/b2) = 2 pi sqrt(b1 i) e^(-i d1 u^2/2b1) L(f)(u,v)
                        e^(-j d2 v^2/2b2) sqrt(b2 j),

with f~ = e^(i a1 x^2/2b1) f e^(j a2 y^2/2b2); its output lives on the
b-scaled induced frequency grid.  Both paths agree to rounding there.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .qft import _qft_inverse_fast, _sandwich, induced_freq_grid, is_commensurate, qft_forward
from .quaternion import Quaternion
from .signal import Grid2D, QSignal

__all__ = [
    "ParamMatrix",
    "kernel_i",
    "kernel_j",
    "chirp_sandwich",
    "qlct_forward_direct",
    "qlct_forward_fast",
    "qlct_inverse",
    "real_signal_components",
    "recombine_components",
]


@dataclass(frozen=True, slots=True)
class ParamMatrix:
    """Real 2x2 matrix (a, b; c, d) with det = a d - b c = 1."""

    a: float
    b: float
    c: float
    d: float

    def __post_init__(self):
        if abs(self.det - 1.0) > 1e-12:
            raise ValueError(f"matrix parameter must have det = 1, got det = {self.det}")

    @property
    def det(self) -> float:
        return self.a * self.d - self.b * self.c

    def inverse(self) -> "ParamMatrix":
        return ParamMatrix(self.d, -self.b, -self.c, self.a)

    @classmethod
    def rotation(cls) -> "ParamMatrix":
        """The QFT case (0, 1; -1, 0)."""
        return cls(0.0, 1.0, -1.0, 0.0)

    @classmethod
    def parse(cls, text: str) -> "ParamMatrix":
        parts = [float(p) for p in text.split(",")]
        if len(parts) != 4:
            raise ValueError(f"expected 'a,b,c,d', got {text!r}")
        return cls(*parts)


def _require_positive_b(*mats: ParamMatrix):
    for m in mats:
        if m.b <= 0:
            raise ValueError(
                "transform requires b > 0 (b = 0 is a pure chirp multiplication)"
            )


# --- kernels --------------------------------------------------------------------


def _kernel_value(a: float, b: float, c: float, d: float, x: float, u: float) -> complex:
    """Scalar kernel value as a complex number on the relevant axis."""
    if b != 0.0:
        pre = 1.0 / cmath.sqrt(2j * math.pi * b)
        return pre * cmath.exp(1j * (a * x * x - 2.0 * x * u + d * u * u) / (2.0 * b))
    if d < 0:
        raise ValueError("b = 0 kernel requires d >= 0 (sqrt(d) undefined otherwise)")
    return math.sqrt(d) * cmath.exp(1j * (c * d / 2.0) * u * u)


def kernel_i(A1: ParamMatrix, x: float, u: float) -> Quaternion:
    """Left kernel K_i(x, u) as a quaternion (components on 1 and i)."""
    z = _kernel_value(A1.a, A1.b, A1.c, A1.d, x, u)
    return Quaternion(z.real, z.imag, 0.0, 0.0)

def kernel_j(A2: ParamMatrix, y: float, v: float) -> Quaternion:
    """Right kernel K_j(y, v) as a quaternion (components on 1 and j)."""
    z = _kernel_value(A2.a, A2.b, A2.c, A2.d, y, v)
    return Quaternion(z.real, 0.0, z.imag, 0.0)


def kernel_matrix(a: float, b: float, d: float, nodes: np.ndarray,
                  freqs: np.ndarray) -> np.ndarray:
    """Kernel samples K(nodes[m], freqs[k]) as an (m, k) complex matrix.

    Only the b != 0 branch is vectorized (the transforms reject b = 0); works
    for negative b via the principal branch of the prefactor.
    """
    if b == 0.0:
        raise ValueError("vectorized kernel requires b != 0")
    pre = 1.0 / cmath.sqrt(2j * math.pi * b)
    phase = (
        a * nodes[:, None] ** 2 - 2.0 * np.outer(nodes, freqs) + d * freqs[None, :] ** 2
    ) / (2.0 * b)
    return pre * np.exp(1j * phase)


# --- chirp algebra ------------------------------------------------------------------


def chirp_sandwich(f: QSignal, gx: float, gy: float, axis_values: tuple | None = None) -> QSignal:
    """Unit-modulus quadratic chirp sandwich e^(i gx x^2) f e^(j gy y^2).

    ``axis_values`` overrides the (x, y) node arrays (used when the signal
    lives on a frequency grid).  Pointwise and exactly energy preserving.
    """
    xs, ys = axis_values if axis_values is not None else (f.grid.xs(), f.grid.ys())
    za, zb = f.complex_pair()
    left = np.exp(1j * gx * xs**2)[:, None]
    za, zb = left * za, left * zb
    ph = gy * ys**2
    cy, sy = np.cos(ph)[None, :], np.sin(ph)[None, :]
    out_a = za * cy - zb * sy
    out_b = za * sy + zb * cy
    return QSignal.from_complex_pair(f.grid, out_a, out_b)


def _left_right_scalars(f: QSignal, left: complex, right: complex,
                        left_phase: np.ndarray | None = None,
                        right_phase: np.ndarray | None = None) -> QSignal:
    """(left * e^(i left_phase(x))) f (e^(j right_phase(y)) * right).

    ``left`` and the x-dependent phase are i-complex, ``right`` and the
    y-dependent phase are j-complex (given as numpy complex numbers).
    """
    za, zb = f.complex_pair()
    lf = left if left_phase is None else left * np.exp(1j * left_phase)[:, None]
    za, zb = lf * za, lf * zb
    rf = right if right_phase is None else right * np.exp(1j * right_phase)[None, :]
    r0, r1 = np.real(rf), np.imag(rf)
    out_a = za * r0 - zb * r1
    out_b = za * r1 + zb * r0
    return QSignal.from_complex_pair(f.grid, out_a, out_b)


# --- transforms ------------------------------------------------------------------------


def qlct_forward_direct(f: QSignal, A1: ParamMatrix, A2: ParamMatrix,
                        freq: Grid2D) -> QSignal:
    """Direct quadrature QLCT at every node of ``freq`` (oracle path)."""
    _require_positive_b(A1, A2)
    ki = kernel_matrix(A1.a, A1.b, A1.d, f.grid.xs(), freq.xs())
    kj = kernel_matrix(A2.a, A2.b, A2.d, f.grid.ys(), freq.ys())
    return _sandwich(f, ki, kj, freq)


def qlct_forward_fast(f: QSignal, A1: ParamMatrix, A2: ParamMatrix) -> QSignal:
    """Chirp-QFT-chirp QLCT on the induced frequency grid (b1 u_fft, b2 v_fft)."""
    _require_positive_b(A1, A2)
    grid = f.grid
    tilde = chirp_sandwich(f, A1.a / (2.0 * A1.b), A2.a / (2.0 * A2.b))
    Ft = qft_forward(tilde, method="fast")
    out_grid = induced_freq_grid(grid, A1.b, A2.b)
    us, vs = out_grid.xs(), out_grid.ys()
    left = 1.0 / (2.0 * math.pi * cmath.sqrt(A1.b * 1j))
    right = 1.0 / cmath.sqrt(A2.b * 1j)
    res = _left_right_scalars(
        QSignal(out_grid, Ft.values),
        left,
        right,
        left_phase=A1.d * us**2 / (2.0 * A1.b),
        right_phase=A2.d * vs**2 / (2.0 * A2.b),
    )
    return res


def qlct_inverse(F: QSignal, A1: ParamMatrix, A2: ParamMatrix, space: Grid2D,
                 method: str = "auto") -> QSignal:
    """Inverse QLCT built from the inverse matrices A_i^(-1) = (d, -b; -c, a).

    The fast path is available when F lives on the induced grid of ``space``
    for (b1, b2); the direct path integrates the conjugated kernels at
    arbitrary nodes.
    """
    _require_positive_b(A1, A2)
    commensurate = is_commensurate(space, F.grid, A1.b, A2.b)
    if method == "auto":
        method = "fast" if commensurate else "direct"
    if method == "fast":
        if not commensurate:
            raise ValueError("fast path requires F on the induced grid of the target")
        us, vs = F.grid.xs(), F.grid.ys()
        detilde = chirp_sandwich(
            F, -A1.d / (2.0 * A1.b), -A2.d / (2.0 * A2.b), axis_values=(us, vs)
        )
        # relabel onto the unscaled induced grid: samples at u/b1 = u_fft
        unscaled = QSignal(induced_freq_grid(space), detilde.values)
        iq = _qft_inverse_fast(unscaled, space)
        xs, ys = space.xs(), space.ys()
        scale = 2.0 * math.pi * math.sqrt(A1.b * A2.b)
        return _left_right_scalars(
            iq,
            scale * cmath.exp(0.25j * math.pi),
            cmath.exp(0.25j * math.pi),
            left_phase=-A1.a * xs**2 / (2.0 * A1.b),
            right_phase=-A2.a * ys**2 / (2.0 * A2.b),
        )
    if method != "direct":
        raise ValueError(f"unknown method {method!r}")
    # the integration variable (u, v) sits in the first kernel slot, making
    # K_{A^-1}(u, x) the conjugate of the forward kernel K_A(x, u)
    inv1, inv2 = A1.inverse(), A2.inverse()
    ki = kernel_matrix(inv1.a, inv1.b, inv1.d, F.grid.xs(), space.xs())
    kj = kernel_matrix(inv2.a, inv2.b, inv2.d, F.grid.ys(), space.ys())
    return _sandwich(F, ki, kj, space)


# --- real-signal four-component decomposition ------------------------------------------


def real_signal_components(f: QSignal, A1: ParamMatrix, A2: ParamMatrix,
                           freq: Grid2D) -> tuple[np.ndarray, ...]:
    """Cosine/sine quadrature integrals (P1, P2, P3, P4) of a real signal.

    P1..P4 are the even-even, odd-even, even-odd and odd-odd kernel-phase
    projections; :func:`recombine_components` reassembles the full QLCT.
    """
    _require_positive_b(A1, A2)
    if not f.is_real():
        raise ValueError("four-component decomposition requires a real signal")
    wx, wy = f.grid.trapezoid_weights()
    wf = f.values[:, :, 0] * wx[:, None] * wy[None, :]
    xs, ys = f.grid.xs(), f.grid.ys()
    us, vs = freq.xs(), freq.ys()
    ph1 = (A1.a * xs[:, None] ** 2 - 2.0 * np.outer(xs, us) + A1.d * us[None, :] ** 2) / (
        2.0 * A1.b
    )
    ph2 = (A2.a * ys[:, None] ** 2 - 2.0 * np.outer(ys, vs) + A2.d * vs[None, :] ** 2) / (
        2.0 * A2.b
    )
    cx, sx = np.cos(ph1), np.sin(ph1)
    cy, sy = np.cos(ph2), np.sin(ph2)
    p1 = cx.T @ wf @ cy
    p2 = sx.T @ wf @ cy
    p3 = cx.T @ wf @ sy
    p4 = sx.T @ wf @ sy
    return p1, p2, p3, p4


def recombine_components(p1, p2, p3, p4, A1: ParamMatrix, A2: ParamMatrix,
                         freq: Grid2D) -> QSignal:
    """-i sqrt(i)/(2 pi sqrt(b1 b2)) (P1 + i P2 + P3 j + i P4 j) (-j sqrt(j))."""
    sig = QSignal.from_complex_pair(freq, p1 + 1j * p2, p3 + 1j * p4)
    const = 1.0 / (2.0 * math.pi * math.sqrt(A1.b * A2.b))
    # -i sqrt(i) = e^(-i pi/4) on the left, -j sqrt(j) = e^(-j pi/4) on the right
    return _left_right_scalars(
        sig, const * cmath.exp(-0.25j * math.pi), cmath.exp(-0.25j * math.pi)
    )
