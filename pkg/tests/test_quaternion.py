import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qlct.quaternion import I, J, K, ONE, Quaternion, axis_exp, axis_inv_sqrt_scale

finite = st.floats(min_value=-100.0, max_value=100.0, allow_nan=False)
quaternions = st.builds(Quaternion, finite, finite, finite, finite)


def components_close(p: Quaternion, q: Quaternion, tol=1e-12):
    return all(abs(a - b) <= tol for a, b in zip(p.components(), q.components()))


class TestMultiplicationTable:
    @pytest.mark.parametrize(
        "left,right,expected",
        [
            (I, J, K),
            (J, K, I),
            (K, I, J),
            (J, I, -K),
            (K, J, -I),
            (I, K, -J),
            (I, I, -ONE),
            (J, J, -ONE),
            (K, K, -ONE),
        ],
    )
    def test_hamilton_rules(self, left, right, expected):
        assert components_close(left * right, expected)

    def test_identity_element(self):
        q = Quaternion(0.3, -1.2, 4.4, 0.9)
        assert components_close(ONE * q, q)
        assert components_close(q * ONE, q)

    def test_anticommutation(self):
        assert components_close(I * J, -(J * I))


def oracle_product(p: Quaternion, q: Quaternion) -> Quaternion:
    """Independent 16-term expansion of (p0 + i p1 + j p2 + k p3)(q0 + ...)."""
    table = {
        (0, 0): (0, 1), (0, 1): (1, 1), (0, 2): (2, 1), (0, 3): (3, 1),
        (1, 0): (1, 1), (1, 1): (0, -1), (1, 2): (3, 1), (1, 3): (2, -1),
        (2, 0): (2, 1), (2, 1): (3, -1), (2, 2): (0, -1), (2, 3): (1, 1),
        (3, 0): (3, 1), (3, 1): (2, 1), (3, 2): (1, -1), (3, 3): (0, -1),
    }
    out = [0.0] * 4
    pc, qc = p.components(), q.components()
    for a in range(4):
        for b in range(4):
            axis, sign = table[(a, b)]
            out[axis] += sign * pc[a] * qc[b]
    return Quaternion(*out)


@settings(deadline=None)
@given(quaternions, quaternions)
def test_product_matches_componentwise_oracle(p, q):
    direct = p * q
    expected = oracle_product(p, q)
    scale = max(1.0, direct.norm())
    assert (direct - expected).norm() <= 1e-12 * scale


@settings(deadline=None)
@given(quaternions, quaternions)
def test_norm_multiplicative_within_4_ulps(p, q):
    prod_norm = (p * q).norm()
    sep_norm = p.norm() * q.norm()
    assert abs(prod_norm - sep_norm) <= 4 * math.ulp(max(prod_norm, sep_norm, 1e-300))


@settings(deadline=None)
@given(quaternions, quaternions)
def test_scalar_part_cyclic(p, q):
    assert (p * q).scalar() == pytest.approx((q * p).scalar(), abs=1e-9, rel=1e-12)


@settings(deadline=None)
@given(quaternions, quaternions)
def test_conjugation_antiautomorphism(p, q):
    lhs = (p * q).conj()
    rhs = q.conj() * p.conj()
    assert (lhs - rhs).norm() <= 1e-9


@settings(deadline=None)
@given(quaternions)
def test_conj_involution_and_scalar_part(q):
    assert components_close(q.conj().conj(), q)
    half_sum = (q + q.conj()) * 0.5
    assert components_close(half_sum, Quaternion(q.scalar()))
    assert q.norm_sq() == pytest.approx(sum(c * c for c in q.components()))


def test_norm_zero_iff_zero():
    assert Quaternion().norm() == 0.0
    assert Quaternion(0.0, 1e-300).norm() > 0.0


class TestAxisExp:
    def test_zero_angle_is_one(self):
        assert components_close(axis_exp("i", 0.0), ONE)

    def test_quarter_turn(self):
        assert components_close(axis_exp("i", math.pi / 2), I, tol=1e-15)

    @pytest.mark.parametrize("theta", [0.1, -2.2, 5.0, 0.77])
    def test_inverse_rotation(self, theta):
        prod = axis_exp("j", theta) * axis_exp("j", -theta)
        assert components_close(prod, ONE, tol=1e-15)

    def test_unit_norm(self):
        assert axis_exp("j", 1.234).norm() == pytest.approx(1.0)

    def test_unknown_axis(self):
        with pytest.raises(ValueError):
            axis_exp("x", 1.0)


class TestAxisInvSqrtScale:
    def test_unit_scale(self):
        got = axis_inv_sqrt_scale("i", 1.0 / (2.0 * math.pi))
        expected = axis_exp("i", -math.pi / 4)
        assert components_close(got, expected, tol=1e-15)

    @pytest.mark.parametrize("b", [0.1, 0.5, 1.0, 3.7])
    @pytest.mark.parametrize("axis,unit", [("i", I), ("j", J)])
    def test_algebraic_round_trip(self, b, axis, unit):
        # squaring the value and multiplying by axis*2*pi*b must give 1
        r = axis_inv_sqrt_scale(axis, b)
        prod = r * r * (unit * (2.0 * math.pi * b))
        assert components_close(prod, ONE, tol=1e-12)

    def test_modulus(self):
        b = 0.8
        assert axis_inv_sqrt_scale("j", b).norm() == pytest.approx(
            (2.0 * math.pi * b) ** -0.5
        )

    @pytest.mark.parametrize("b", [0.0, -1.0])
    def test_rejects_nonpositive(self, b):
        with pytest.raises(ValueError):
            axis_inv_sqrt_scale("i", b)
