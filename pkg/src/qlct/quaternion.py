"""Hamilton quaternion arithmetic and the axis phase factors used by the
transform kernels.

Quaternions are stored as four doubles (q0, q1, q2, q3) meaning
q0 + i*q1 + j*q2 + k*q3 with i**2 = j**2 = k**2 = ijk = -1.  Values are
immutable; every operation returns a new instance, so they are safe to share
between threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = [
    "Quaternion",
    "ONE",
    "I",
    "J",
    "K",
    "axis_exp",
    "axis_inv_sqrt_scale",
]

_AXES = {"i": 1, "j": 2, "k": 3}


@dataclass(frozen=True, slots=True)
class Quaternion:
    q0: float = 0.0
    q1: float = 0.0
    q2: float = 0.0
    q3: float = 0.0

    # --- algebra ---------------------------------------------------------

    def __add__(self, other: "Quaternion | float") -> "Quaternion":
        other = _coerce(other)
        return Quaternion(
            self.q0 + other.q0,
            self.q1 + other.q1,
            self.q2 + other.q2,
            self.q3 + other.q3,
        )

    __radd__ = __add__

    def __sub__(self, other: "Quaternion | float") -> "Quaternion":
        return self + (-_coerce(other))

    def __rsub__(self, other: "Quaternion | float") -> "Quaternion":
        return _coerce(other) + (-self)

    def __neg__(self) -> "Quaternion":
        return Quaternion(-self.q0, -self.q1, -self.q2, -self.q3)

    def __mul__(self, other: "Quaternion | float") -> "Quaternion":
        if isinstance(other, (int, float)):
            return Quaternion(
                self.q0 * other, self.q1 * other, self.q2 * other, self.q3 * other
            )
        p, q = self, other
        return Quaternion(
            p.q0 * q.q0 - p.q1 * q.q1 - p.q2 * q.q2 - p.q3 * q.q3,
            p.q0 * q.q1 + p.q1 * q.q0 + p.q2 * q.q3 - p.q3 * q.q2,
            p.q0 * q.q2 - p.q1 * q.q3 + p.q2 * q.q0 + p.q3 * q.q1,
            p.q0 * q.q3 + p.q1 * q.q2 - p.q2 * q.q1 + p.q3 * q.q0,
        )

    def __rmul__(self, other: float) -> "Quaternion":
        # reals commute with everything, so left and right cases coincide
        return self * other

    # --- involutions and parts -------------------------------------------

    def conj(self) -> "Quaternion":
        return Quaternion(self.q0, -self.q1, -self.q2, -self.q3)

    def scalar(self) -> float:
        """Scalar part Sc(q) = (q + conj(q)) / 2."""
        return self.q0

    def vector(self) -> "Quaternion":
        """Vector part Vec(q) = (q - conj(q)) / 2."""
        return Quaternion(0.0, self.q1, self.q2, self.q3)

    def norm_sq(self) -> float:
        return self.q0**2 + self.q1**2 + self.q2**2 + self.q3**2

    def norm(self) -> float:
        return math.sqrt(self.norm_sq())

    __abs__ = norm

    def components(self) -> tuple[float, float, float, float]:
        return (self.q0, self.q1, self.q2, self.q3)

    def is_close(self, other: "Quaternion", tol: float = 1e-12) -> bool:
        return (self - _coerce(other)).norm() <= tol


def _coerce(value: "Quaternion | float") -> Quaternion:
    if isinstance(value, Quaternion):
        return value
    return Quaternion(float(value))


ONE = Quaternion(1.0)
I = Quaternion(0.0, 1.0)
J = Quaternion(0.0, 0.0, 1.0)
K = Quaternion(0.0, 0.0, 0.0, 1.0)


def _axis_unit(axis: str) -> Quaternion:
    try:
        idx = _AXES[axis]
    except KeyError:
        raise ValueError(f"axis must be one of {sorted(_AXES)}, got {axis!r}") from None
    comps = [0.0, 0.0, 0.0, 0.0]
    comps[idx] = 1.0
    return Quaternion(*comps)


def axis_exp(axis: str, theta: float) -> Quaternion:
    """Euler form exp(axis * theta) = cos(theta) + axis * sin(theta)."""
    unit = _axis_unit(axis)
    return Quaternion(math.cos(theta)) + unit * math.sin(theta)


def axis_inv_sqrt_scale(axis: str, b: float) -> Quaternion:
    """Reciprocal principal square root of (axis * 2*pi*b) for b > 0.

    Returns (2*pi*b)**(-1/2) * exp(-axis * pi/4), the prefactor carried by the
    b != 0 transform kernels.  The principal branch fixes sqrt(axis) as
    exp(axis * pi/4), so that squaring the returned value and multiplying by
    axis * 2*pi*b yields exactly 1.
    """
    if b <= 0:
        raise ValueError(f"b must be positive, got {b}")
    scale = 1.0 / math.sqrt(2.0 * math.pi * b)
    return axis_exp(axis, -math.pi / 4.0) * scale
