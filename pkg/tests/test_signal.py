import math

import numpy as np
import pytest

from qlct.quaternion import Quaternion
from qlct.signal import (
    Box,
    Grid2D,
    QSignal,
    angle,
    energy,
    energy_in_box,
    inner_product,
    load_signal,
    project_box,
    qmul,
    save_signal,
)


class TestGrid2D:
    def test_spacing(self):
        g = Grid2D(-1.0, 1.0, -2.0, 2.0, 5, 9)
        assert g.dx == pytest.approx(0.5)
        assert g.dy == pytest.approx(0.5)
        assert np.allclose(g.xs(), [-1, -0.5, 0, 0.5, 1])

    def test_too_few_points(self):
        with pytest.raises(ValueError):
            Grid2D(-1, 1, -1, 1, 1, 4)

    def test_symmetric_nodes(self):
        for n in (32, 33):
            g = Grid2D.symmetric(3.0, n)
            assert np.allclose(g.xs() + g.xs()[::-1], 0.0)

    @pytest.mark.parametrize("n", [64, 65, 96, 97])
    def test_aligned_symmetric_puts_box_on_nodes(self, n):
        g = Grid2D.aligned_symmetric(n, 2.0, 6.0)
        assert g.x_max >= 6.0
        assert np.min(np.abs(g.xs() - 2.0)) < 1e-12
        assert np.min(np.abs(g.xs() + 2.0)) < 1e-12

    def test_trapezoid_weights_sum_to_length(self):
        g = Grid2D.symmetric(2.0, 17)
        wx, wy = g.trapezoid_weights()
        assert wx.sum() == pytest.approx(4.0)


class TestInnerProductAndEnergy:
    def test_constant_on_unit_square(self):
        g = Grid2D(-1, 1, -1, 1, 41, 41)
        f = QSignal.from_real(g, np.ones((41, 41)))
        ip = inner_product(f, f)
        assert ip.scalar() == pytest.approx(4.0)
        assert abs(ip.q1) + abs(ip.q2) + abs(ip.q3) < 1e-14

    def test_zero_second_argument(self, random_signal):
        g = Grid2D.symmetric(1.0, 8)
        f = random_signal(g)
        z = QSignal.zeros(g)
        assert inner_product(f, z).norm() == 0.0

    def test_hermitian_symmetry(self, random_signal):
        g = Grid2D.symmetric(1.5, 12)
        f, h = random_signal(g), random_signal(g)
        lhs = inner_product(f, h)
        rhs = inner_product(h, f).conj()
        assert (lhs - rhs).norm() < 1e-12 * max(1.0, lhs.norm())

    def test_grid_mismatch(self, random_signal):
        f = random_signal(Grid2D.symmetric(1.0, 8))
        h = random_signal(Grid2D.symmetric(2.0, 8))
        with pytest.raises(ValueError):
            inner_product(f, h)

    def test_energy_of_normalized_signal(self, random_signal):
        g = Grid2D.symmetric(2.0, 33)
        f = random_signal(g)
        f = f * (1.0 / math.sqrt(energy(f)))
        assert energy(f) == pytest.approx(1.0)

    def test_left_scaling(self, random_signal):
        g = Grid2D.symmetric(2.0, 16)
        f = random_signal(g)
        c = Quaternion(0.5, -1.0, 2.0, 0.25)
        assert energy(f.left_mul(c)) == pytest.approx(c.norm_sq() * energy(f))

    def test_delta_sample_weight(self):
        g = Grid2D.symmetric(1.0, 11)
        vals = np.zeros((11, 11, 4))
        vals[5, 6] = [1.0, -2.0, 0.5, 3.0]  # interior node
        f = QSignal(g, vals)
        q = Quaternion(1.0, -2.0, 0.5, 3.0)
        assert energy(f) == pytest.approx(q.norm_sq() * g.dx * g.dy)


class TestAngle:
    def test_self_angle_zero(self, random_signal):
        f = random_signal(Grid2D.symmetric(1.0, 10))
        assert angle(f, f) == pytest.approx(0.0, abs=1e-6)

    def test_antipodal(self, random_signal):
        f = random_signal(Grid2D.symmetric(1.0, 10))
        assert angle(f, -f) == pytest.approx(math.pi)

    def test_cauchy_schwarz(self, random_signal):
        g = Grid2D.symmetric(1.0, 14)
        for seed in range(5):
            f, h = random_signal(g, seed), random_signal(g, seed + 100)
            bound = math.sqrt(energy(f) * energy(h))
            assert abs(inner_product(f, h).scalar()) <= bound * (1 + 1e-12)

    def test_zero_energy_rejected(self, random_signal):
        g = Grid2D.symmetric(1.0, 8)
        with pytest.raises(ValueError):
            angle(QSignal.zeros(g), random_signal(g))


class TestProjectBox:
    def test_idempotent(self, random_signal):
        f = random_signal(Grid2D.symmetric(2.0, 21))
        box = Box(1.0)
        once = project_box(f, box)
        twice = project_box(once, box)
        assert np.array_equal(once.values, twice.values)

    def test_full_cover_is_identity(self, random_signal):
        f = random_signal(Grid2D.symmetric(2.0, 21))
        assert np.array_equal(project_box(f, Box(5.0)).values, f.values)

    def test_energy_contraction(self, random_signal):
        f = random_signal(Grid2D.symmetric(2.0, 21))
        assert energy(project_box(f, Box(0.7))) <= energy(f)

    def test_closed_box_includes_edge_sample(self):
        g = Grid2D.symmetric(2.0, 5)  # nodes at -2,-1,0,1,2
        f = QSignal.from_real(g, np.ones((5, 5)))
        p = project_box(f, Box(1.0))
        assert p.values[1, 1, 0] == 1.0  # (-1,-1) on the edge, included
        assert p.values[0, 1, 0] == 0.0


class TestEnergyInBox:
    def test_gaussian_against_erf(self):
        scipy_special = pytest.importorskip("scipy.special")
        g = Grid2D.symmetric(8.0, 321)
        X, Y = g.mesh()
        f = QSignal.from_real(g, np.exp(-(X**2 + Y**2) / 2.0))
        # integral of e^{-r^2} over the box, via the 1D erf product
        one_d = math.sqrt(math.pi) * scipy_special.erf(1.5)
        assert energy_in_box(f, Box(1.5)) == pytest.approx(one_d**2, rel=1e-8)

    def test_partial_cell_second_order(self):
        # box edge off the nodes: the partial-cell rule must stay accurate
        scipy_special = pytest.importorskip("scipy.special")
        half = 1.2345
        errs = []
        for n in (161, 321):
            g = Grid2D.symmetric(8.0, n)
            X, Y = g.mesh()
            f = QSignal.from_real(g, np.exp(-(X**2 + Y**2) / 2.0))
            exact = (math.sqrt(math.pi) * scipy_special.erf(half)) ** 2
            errs.append(abs(energy_in_box(f, Box(half)) - exact))
        assert errs[0] < 1e-4
        assert errs[1] < errs[0] / 2.0


class TestSymmetricComponents:
    def test_pure_real(self):
        g = Grid2D.symmetric(1.0, 6)
        arr = np.arange(36.0).reshape(6, 6)
        f = QSignal.from_real(g, arr)
        f0, f1, f2, f3 = f.symmetric_components()
        assert np.array_equal(f0, arr)
        assert not f1.any() and not f2.any() and not f3.any()

    def test_k_times_real(self):
        g = Grid2D.symmetric(1.0, 6)
        arr = np.linspace(-1, 1, 36).reshape(6, 6)
        f = QSignal.from_components(g, None, None, None, arr)
        f0, f1, f2, f3 = f.symmetric_components()
        assert np.array_equal(f3, arr)
        assert not f0.any() and not f1.any() and not f2.any()

    def test_round_trip(self, random_signal):
        f = random_signal(Grid2D.symmetric(1.0, 9))
        f0, f1, f2, f3 = f.symmetric_components()
        rebuilt = QSignal.from_components(f.grid, f0, f1, f2, f3)
        assert np.array_equal(rebuilt.values, f.values)


def test_qmul_matches_scalar_quaternion_product(random_signal):
    g = Grid2D.symmetric(1.0, 4)
    f, h = random_signal(g, 5), random_signal(g, 6)
    prod = qmul(f, h)
    p = Quaternion(*f.values[2, 3])
    q = Quaternion(*h.values[2, 3])
    assert (Quaternion(*prod.values[2, 3]) - p * q).norm() < 1e-12


def test_immutability(random_signal):
    f = random_signal(Grid2D.symmetric(1.0, 4))
    with pytest.raises(ValueError):
        f.values[0, 0, 0] = 7.0
    with pytest.raises(AttributeError):
        f.grid = None


class TestFileFormat:
    def test_round_trip(self, tmp_path, random_signal):
        f = random_signal(Grid2D.symmetric(1.5, 7))
        path = tmp_path / "sig.csv"
        save_signal(path, f, {"note": "test"})
        loaded, meta = load_signal(path)
        assert loaded.grid == f.grid
        assert np.array_equal(loaded.values, f.values)
        assert meta["note"] == "test"

    def test_header_and_order(self, tmp_path):
        g = Grid2D(-1.0, 1.0, -1.0, 1.0, 2, 2)
        f = QSignal.from_real(g, np.array([[1.0, 2.0], [3.0, 4.0]]))
        path = tmp_path / "sig.csv"
        save_signal(path, f)
        lines = path.read_text().strip().splitlines()
        assert lines[0] == "x,y,q0,q1,q2,q3"
        # row-major in (x, y): x outer, y inner
        assert [float(v) for v in lines[1].split(",")][:3] == [-1.0, -1.0, 1.0]
        assert [float(v) for v in lines[2].split(",")][:3] == [-1.0, 1.0, 2.0]

    def test_rewrite_is_byte_identical(self, tmp_path, random_signal):
        f = random_signal(Grid2D.symmetric(1.5, 7))
        p1, p2 = tmp_path / "a.csv", tmp_path / "b.csv"
        save_signal(p1, f)
        save_signal(p2, f)
        assert p1.read_bytes() == p2.read_bytes()
