"""Sampled quaternion-valued 2D signals on uniform grids.

A :class:`QSignal` stores the four real components on a closed rectangular
grid, row-major in (x, y).  All integrals are trapezoid-rule quadratures; the
restricted (box) integrals use trapezoid weights of the sub-interval so that
box edges landing on grid nodes are integrated with second-order accuracy.
Signals are immutable after construction and all operations are pure.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .quaternion import Quaternion

__all__ = [
    "Grid2D",
    "Box",
    "QSignal",
    "inner_product",
    "energy",
    "energy_in_box",
    "angle",
    "project_box",
    "qmul",
    "save_signal",
    "load_signal",
]


@dataclass(frozen=True, slots=True)
class Grid2D:
    """Closed uniform grid: nx points from x_min to x_max inclusive, same in y."""

    x_min: float
    x_max: float
    y_min: float
    y_max: float
    nx: int
    ny: int

    def __post_init__(self):
        if self.nx < 2 or self.ny < 2:
            raise ValueError("grids need at least 2 points per axis")
        if not (self.x_max > self.x_min and self.y_max > self.y_min):
            raise ValueError("grid extents must be increasing")

    @property
    def dx(self) -> float:
        return (self.x_max - self.x_min) / (self.nx - 1)

    @property
    def dy(self) -> float:
        return (self.y_max - self.y_min) / (self.ny - 1)

    def xs(self) -> np.ndarray:
        return np.linspace(self.x_min, self.x_max, self.nx)

    def ys(self) -> np.ndarray:
        return np.linspace(self.y_min, self.y_max, self.ny)

    def mesh(self) -> tuple[np.ndarray, np.ndarray]:
        """(X, Y) arrays of shape (nx, ny), x varying along axis 0."""
        return np.meshgrid(self.xs(), self.ys(), indexing="ij")

    def trapezoid_weights(self) -> tuple[np.ndarray, np.ndarray]:
        wx = np.full(self.nx, self.dx)
        wx[0] = wx[-1] = 0.5 * self.dx
        wy = np.full(self.ny, self.dy)
        wy[0] = wy[-1] = 0.5 * self.dy
        return wx, wy

    @classmethod
    def symmetric(cls, half_extent: float, n: int, half_extent_y: float | None = None,
                  ny: int | None = None) -> "Grid2D":
        hy = half_extent if half_extent_y is None else half_extent_y
        ny = n if ny is None else ny
        return cls(-half_extent, half_extent, -hy, hy, n, ny)

    @classmethod
    def aligned_symmetric(cls, n: int, box_half_width: float,
                          min_half_extent: float) -> "Grid2D":
        """Symmetric n x n grid, as tight as possible but covering at least
        [-min_half_extent, min_half_extent], with +-box_half_width landing
        exactly on grid nodes.

        Symmetric grids have nodes at integer (odd n) or half-integer
        (even n) multiples of the spacing, so the admissible spacings are
        box/q with q integer resp. half-integer.
        """
        if min_half_extent < box_half_width:
            raise ValueError("extent must cover the box")
        q_max = (n - 1) * box_half_width / (2.0 * min_half_extent)
        if n % 2 == 1:
            q = math.floor(q_max)
        else:
            q = math.floor(q_max - 0.5) + 0.5
        if q < 0.5:
            raise ValueError("n too small to align the box inside the extent")
        dx = box_half_width / q
        half = (n - 1) * dx / 2.0
        return cls.symmetric(half, n)


@dataclass(frozen=True, slots=True)
class Box:
    """Centered square region [-half_width, half_width]^2 (closed)."""

    half_width: float

    def __post_init__(self):
        if self.half_width <= 0:
            raise ValueError("half_width must be positive")


def _box_mask(coords: np.ndarray, half_width: float) -> np.ndarray:
    # closed box: samples exactly on |x| = half_width are included
    return np.abs(coords) <= half_width * (1.0 + 1e-12) + 1e-300


def _box_trapezoid_weights(coords: np.ndarray, half_width: float,
                           corrected: bool | str = "auto") -> np.ndarray:
    """Quadrature weights for integrating over [-half_width, half_width].

    When the box edges land on grid nodes (and the box spans at least six of
    them) the classical endpoint-corrected (Gregory) rule with end weights
    {3/8, 7/6, 23/24} is used, which is fourth order for integrands smooth up
    to the edge.  Otherwise: trapezoid over the covered sub-interval plus
    partial-cell contributions (linear interpolation of the integrand at the
    exact edge), second order regardless of alignment.  ``corrected`` forces
    the choice (True requires aligned edges).
    """
    mask = _box_mask(coords, half_width)
    idx = np.nonzero(mask)[0]
    w = np.zeros_like(coords)
    if idx.size == 0:
        return w
    d = coords[1] - coords[0]
    if idx.size == 1:
        w[idx[0]] = d
        return w
    lo, hi = idx[0], idx[-1]
    theta_hi = (half_width - coords[hi]) / d
    theta_lo = (coords[lo] + half_width) / d
    aligned = theta_hi <= 1e-9 and theta_lo <= 1e-9
    w[idx] = d
    use_gregory = aligned if corrected == "auto" else bool(corrected)
    if use_gregory and not aligned:
        raise ValueError("corrected box rule requires edges on grid nodes")
    if use_gregory and idx.size >= 6:
        for ends in (idx[:3], idx[-1:-4:-1]):
            w[ends] = d * np.array([3.0 / 8.0, 7.0 / 6.0, 23.0 / 24.0])
        return w
    w[lo] = w[hi] = 0.5 * d
    # partial cells between the extreme included nodes and the true edges
    if hi + 1 < len(coords) and theta_hi > 1e-12:
        w[hi] += theta_hi * d * (2.0 - theta_hi) / 2.0
        w[hi + 1] += theta_hi**2 * d / 2.0
    if lo - 1 >= 0 and theta_lo > 1e-12:
        w[lo] += theta_lo * d * (2.0 - theta_lo) / 2.0
        w[lo - 1] += theta_lo**2 * d / 2.0
    return w


class QSignal:
    """Quaternion-valued samples on a :class:`Grid2D`.

    ``values`` has shape (nx, ny, 4) holding (q0, q1, q2, q3); the array is
    made read-only so signals behave as immutable values.
    """

    __slots__ = ("grid", "values")

    def __init__(self, grid: Grid2D, values: np.ndarray):
        values = np.ascontiguousarray(values, dtype=np.float64)
        if values.shape != (grid.nx, grid.ny, 4):
            raise ValueError(
                f"values must have shape {(grid.nx, grid.ny, 4)}, got {values.shape}"
            )
        values.setflags(write=False)
        object.__setattr__(self, "grid", grid)
        object.__setattr__(self, "values", values)

    def __setattr__(self, name, value):
        raise AttributeError("QSignal is immutable")

    # --- constructors ------------------------------------------------------

    @classmethod
    def zeros(cls, grid: Grid2D) -> "QSignal":
        return cls(grid, np.zeros((grid.nx, grid.ny, 4)))

    @classmethod
    def from_components(cls, grid: Grid2D, q0, q1=None, q2=None, q3=None) -> "QSignal":
        vals = np.zeros((grid.nx, grid.ny, 4))
        for k, comp in enumerate((q0, q1, q2, q3)):
            if comp is not None:
                vals[:, :, k] = comp
        return cls(grid, vals)

    @classmethod
    def from_real(cls, grid: Grid2D, samples: np.ndarray) -> "QSignal":
        return cls.from_components(grid, samples)

    @classmethod
    def from_complex_pair(cls, grid: Grid2D, za: np.ndarray, zb: np.ndarray) -> "QSignal":
        """Inverse of :meth:`complex_pair`: f = za + zb * j with i-complex za, zb."""
        vals = np.empty((grid.nx, grid.ny, 4))
        vals[:, :, 0] = za.real
        vals[:, :, 1] = za.imag
        vals[:, :, 2] = zb.real
        vals[:, :, 3] = zb.imag
        return cls(grid, vals)

    # --- views --------------------------------------------------------------

    def complex_pair(self) -> tuple[np.ndarray, np.ndarray]:
        """(za, zb) with f = za + zb*j, za = q0 + i q1, zb = q2 + i q3."""
        v = self.values
        return v[:, :, 0] + 1j * v[:, :, 1], v[:, :, 2] + 1j * v[:, :, 3]

    def symmetric_components(self) -> tuple[np.ndarray, ...]:
        """The four real signals of the symmetric form f0 + i f1 + f2 j + i f3 j.

        For real components f2*j = j*f2 and i*f3*j = k*f3, so this is exactly
        the componentwise split.
        """
        v = self.values
        return v[:, :, 0].copy(), v[:, :, 1].copy(), v[:, :, 2].copy(), v[:, :, 3].copy()

    def is_real(self, tol: float = 0.0) -> bool:
        return bool(np.all(np.abs(self.values[:, :, 1:]) <= tol))

    def abs_values(self) -> np.ndarray:
        return np.sqrt(np.sum(self.values**2, axis=2))

    # --- arithmetic -----------------------------------------------------------

    def __add__(self, other: "QSignal") -> "QSignal":
        _check_same_grid(self, other)
        return QSignal(self.grid, self.values + other.values)

    def __sub__(self, other: "QSignal") -> "QSignal":
        _check_same_grid(self, other)
        return QSignal(self.grid, self.values - other.values)

    def __mul__(self, scalar: float) -> "QSignal":
        return QSignal(self.grid, self.values * float(scalar))

    __rmul__ = __mul__

    def __neg__(self) -> "QSignal":
        return QSignal(self.grid, -self.values)

    def left_mul(self, c: Quaternion) -> "QSignal":
        """Pointwise left multiplication c * f by a constant quaternion."""
        ca = complex(c.q0, c.q1)
        cb = complex(c.q2, c.q3)
        za, zb = self.complex_pair()
        out_a = ca * za - cb * np.conj(zb)
        out_b = ca * zb + cb * np.conj(za)
        return QSignal.from_complex_pair(self.grid, out_a, out_b)


def _check_same_grid(f: QSignal, g: QSignal):
    if f.grid != g.grid:
        raise ValueError("signals live on different grids")


def qmul(f: QSignal, g: QSignal) -> QSignal:
    """Pointwise Hamilton product f(x,y) * g(x,y)."""
    _check_same_grid(f, g)
    fa, fb = f.complex_pair()
    ga, gb = g.complex_pair()
    out_a = fa * ga - fb * np.conj(gb)
    out_b = fa * gb + fb * np.conj(ga)
    return QSignal.from_complex_pair(f.grid, out_a, out_b)


# --- quadrature operations ----------------------------------------------------


def inner_product(f: QSignal, g: QSignal) -> Quaternion:
    """Left quaternionic inner product <f, g> = integral of f * conj(g)."""
    _check_same_grid(f, g)
    wx, wy = f.grid.trapezoid_weights()
    w = wx[:, None] * wy[None, :]
    fa, fb = f.complex_pair()
    ga, gb = g.complex_pair()
    # f * conj(g) = (fa*conj(ga) + fb*conj(gb)) + (fb*ga - fa*gb) * j
    part_a = np.sum(w * (fa * np.conj(ga) + fb * np.conj(gb)))
    part_b = np.sum(w * (fb * ga - fa * gb))
    return Quaternion(part_a.real, part_a.imag, part_b.real, part_b.imag)


def energy(f: QSignal) -> float:
    """Sc(<f, f>): trapezoid quadrature of |f|^2 over the grid."""
    wx, wy = f.grid.trapezoid_weights()
    dens = np.sum(f.values**2, axis=2)
    return float(wx @ dens @ wy)


def energy_in_box(f: QSignal, box: Box | float, half_width_y: float | None = None) -> float:
    """Quadrature of |f|^2 over the closed centered box.

    The sub-interval covered by the included samples is integrated with its
    own trapezoid weights (half weight at the extreme included nodes).
    """
    hx = box.half_width if isinstance(box, Box) else float(box)
    hy = hx if half_width_y is None else float(half_width_y)
    wx = _box_trapezoid_weights(f.grid.xs(), hx)
    wy = _box_trapezoid_weights(f.grid.ys(), hy)
    dens = np.sum(f.values**2, axis=2)
    return float(wx @ dens @ wy)


def angle(f: QSignal, g: QSignal) -> float:
    """Angle arccos( Sc<f,g> / (||f|| ||g||) ) in [0, pi]."""
    ef, eg = energy(f), energy(g)
    if ef <= 0 or eg <= 0:
        raise ValueError("angle requires non-zero-energy signals")
    cosine = inner_product(f, g).scalar() / math.sqrt(ef * eg)
    return math.acos(min(1.0, max(-1.0, cosine)))


def project_box(f: QSignal, box: Box) -> QSignal:
    """Multiply samples by the indicator of the closed box (idempotent)."""
    mx = _box_mask(f.grid.xs(), box.half_width)
    my = _box_mask(f.grid.ys(), box.half_width)
    mask = (mx[:, None] & my[None, :]).astype(np.float64)
    return QSignal(f.grid, f.values * mask[:, :, None])


# --- file format ---------------------------------------------------------------

_FMT = "%.17g"


def _sidecar_path(csv_path: Path) -> Path:
    return csv_path.with_suffix(".json")


def save_signal(path: str | Path, f: QSignal, metadata: dict | None = None) -> None:
    """Write the CSV sample table plus the JSON grid sidecar."""
    path = Path(path)
    X, Y = f.grid.mesh()
    v = f.values
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["x", "y", "q0", "q1", "q2", "q3"])
        rows = np.column_stack(
            [X.ravel(), Y.ravel()] + [v[:, :, k].ravel() for k in range(4)]
        )
        for row in rows:
            writer.writerow([_FMT % val for val in row])
    sidecar = {k: getattr(f.grid, k) for k in ("x_min", "x_max", "y_min", "y_max")}
    sidecar.update(nx=f.grid.nx, ny=f.grid.ny)
    if metadata:
        sidecar.update(metadata)
    with _sidecar_path(path).open("w") as fh:
        json.dump(sidecar, fh, indent=2, sort_keys=True)
        fh.write("\n")


def load_signal(path: str | Path) -> tuple[QSignal, dict]:
    """Read a signal written by :func:`save_signal`; returns (signal, metadata)."""
    path = Path(path)
    with _sidecar_path(path).open() as fh:
        meta = json.load(fh)
    grid = Grid2D(
        x_min=meta["x_min"], x_max=meta["x_max"],
        y_min=meta["y_min"], y_max=meta["y_max"],
        nx=meta["nx"], ny=meta["ny"],
    )
    data = np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)
    if data.shape != (grid.nx * grid.ny, 6):
        raise ValueError(f"signal file {path} does not match its grid sidecar")
    values = data[:, 2:].reshape(grid.nx, grid.ny, 4)
    extra = {k: v for k, v in meta.items()
             if k not in ("x_min", "x_max", "y_min", "y_max", "nx", "ny")}
    return QSignal(grid, values), extra
