"""传递函数内核测试"""

import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from src.exceptions import (
    DegenerateLoop, ImproperSystem, Indeterminate, PoleOnAxis, UnstableSystem, ZeroNumerator,
)
from src.models import FrequencyGrid
from src.tf_core import (
    Polynomial, RationalTF, coincident_roots, dc_gain, eval_response, feedback_transform,
    frequency_response, hf_derivative_limit, hinf_norm, is_stable, is_strictly_proper,
    poles, relative_degree, to_statespace, zeros,
)

VSM = RationalTF([1.0], [30.0, 10.0])


class TestPolynomial:

    def test_trailing_coefficients_trimmed(self):
        p = Polynomial([1.0, 2.0, 1e-20])
        assert p.degree == 1
        assert_allclose(p.coeffs, [1.0, 2.0])

    def test_zero_polynomial(self):
        p = Polynomial([0.0, 0.0, 0.0])
        assert p.is_zero
        assert p.degree == 0

    def test_roots_sorted(self):
        p = Polynomial.from_factors([1, 1], [2, 1])
        assert_allclose(p.roots(), [-2.0, -1.0], atol=1e-12)

    def test_arithmetic(self):
        a = Polynomial([1.0, 1.0])
        b = Polynomial([2.0, 0.0, 1.0])
        assert (a * b) == Polynomial([2.0, 2.0, 1.0, 1.0])
        assert (b - a) == Polynomial([1.0, -1.0, 1.0])
        assert (a + 1) == Polynomial([2.0, 1.0])
        assert a(2.0) == pytest.approx(3.0)

    def test_non_finite_rejected(self):
        with pytest.raises(ValueError):
            Polynomial([1.0, math.inf])


class TestRationalTF:

    def test_denominator_is_monic(self):
        tf = RationalTF([2.0], [4.0, 2.0])
        assert_allclose(tf.num.coeffs, [1.0])
        assert_allclose(tf.den.coeffs, [2.0, 1.0])

    def test_eval_response(self):
        omega = 0.7
        assert eval_response(VSM, omega) == pytest.approx(1 / (30 + 10j * omega))

    def test_pole_on_axis(self):
        integrator = RationalTF([1.0], [0.0, 1.0])
        with pytest.raises(PoleOnAxis) as err:
            eval_response(integrator, 0.0)
        assert err.value.omega == 0.0
        assert eval_response(integrator, 1.0) == pytest.approx(-1j)

    def test_frequency_response_skips_axis_poles(self):
        integrator = RationalTF([1.0], [0.0, 1.0])
        values = frequency_response(integrator, [0.0, 1.0, 2.0], skip_axis_poles=True)
        assert np.isnan(values[0])
        assert_allclose(values[1:], [-1j, -0.5j])
        with pytest.raises(PoleOnAxis):
            frequency_response(integrator, [0.0, 1.0])

    def test_stability(self):
        assert is_stable(VSM).stable
        assert is_stable(VSM).margin == pytest.approx(-3.0)
        assert not is_stable(RationalTF([1.0], [-1.0, 1.0])).stable
        assert not is_stable(RationalTF([1.0], [0.0, 1.0])).stable

    def test_poles_and_zeros(self):
        tf = RationalTF(Polynomial.from_factors([1, 1]), Polynomial.from_factors([2, 1], [3, 1]))
        assert_allclose(poles(tf), [-3.0, -2.0], atol=1e-12)
        assert_allclose(zeros(tf), [-1.0], atol=1e-12)

    def test_relative_degree(self):
        assert relative_degree(VSM) == 1
        assert is_strictly_proper(VSM)
        assert not is_strictly_proper(RationalTF.constant(0.05))

    def test_hf_derivative_limit(self):
        assert hf_derivative_limit(VSM) == pytest.approx(0.1)
        assert hf_derivative_limit(RationalTF([1.0], [1.0, 1.0, 1.0])) == 0.0
        assert hf_derivative_limit(RationalTF.constant(0.05)) == math.inf

    def test_dc_gain(self):
        assert dc_gain(VSM) == pytest.approx(1 / 30)
        assert dc_gain(RationalTF([1.0], [0.0, 1.0])) == math.inf
        with pytest.raises(Indeterminate):
            dc_gain(RationalTF([0.0, 1.0], [0.0, 1.0]))

    def test_inverse(self):
        inv = VSM.inverse()
        assert eval_response(inv, 2.0) == pytest.approx(30 + 20j)
        with pytest.raises(ZeroNumerator):
            RationalTF([0.0], [1.0, 1.0]).inverse()

    def test_feedback_transform(self):
        tf = RationalTF([1.0], [1.0, 1.0])
        shifted = feedback_transform(tf, 0.5)
        assert_allclose(shifted.den.coeffs, [0.5, 1.0])
        for omega in (0.0, 0.3, 5.0):
            d = eval_response(tf, omega)
            assert eval_response(shifted, omega) == pytest.approx(d / (1 - 0.5 * d))

    def test_feedback_transform_degenerate(self):
        with pytest.raises(DegenerateLoop):
            feedback_transform(RationalTF.constant(2.0), 0.5)

    def test_coincident_roots_warns(self, caplog):
        tf = RationalTF([1.0, 1.0], [1.0, 1.0])
        pairs = coincident_roots(tf)
        assert len(pairs) == 1
        assert "重合零极点" in caplog.text


class TestStateSpace:

    def test_realization_matches_transfer(self):
        tf = RationalTF([3.0, 1.0], [10000.0, 140.0, 1.0])
        ss = to_statespace(tf)
        assert ss.n_states == 2
        for omega in (0.0, 1.0, 100.0, 1e3):
            assert ss.response(omega)[0, 0] == pytest.approx(eval_response(tf, omega))

    def test_biproper_feedthrough(self):
        tf = RationalTF([2.0, 3.0], [1.0, 1.0])
        ss = to_statespace(tf)
        assert ss.Dff[0, 0] == pytest.approx(3.0)
        assert ss.response(2.0)[0, 0] == pytest.approx(eval_response(tf, 2.0))

    def test_constant_has_no_states(self):
        ss = to_statespace(RationalTF.constant(0.03))
        assert ss.n_states == 0
        assert ss.response(1.0)[0, 0] == pytest.approx(0.03)

    def test_improper_rejected(self):
        with pytest.raises(ImproperSystem):
            to_statespace(RationalTF([0.0, 0.0, 1.0], [1.0, 1.0]))


class TestHinfNorm:

    def test_first_order_peak_at_dc(self):
        norm, omega = hinf_norm(VSM, FrequencyGrid(points_per_decade=20))
        assert norm == pytest.approx(1 / 30)
        assert omega == 0.0

    def test_resonant_peak_refined(self):
        zeta = 0.1
        tf = RationalTF([1.0], [1.0, 2 * zeta, 1.0])
        exact = 1 / (2 * zeta * math.sqrt(1 - zeta ** 2))
        coarse = FrequencyGrid(points_per_decade=5)
        norm, omega = hinf_norm(tf, coarse)
        assert norm == pytest.approx(exact, rel=1e-6)
        # 峰值频率 ω_r = sqrt(1 − 2ζ²)
        assert omega == pytest.approx(math.sqrt(1 - 2 * zeta ** 2), rel=1e-3)

    def test_refinement_never_below_grid(self):
        tf = RationalTF([1.0], [1.0, 0.4, 1.0])
        grid = FrequencyGrid(points_per_decade=10)
        grid_max = float(np.max(np.abs(frequency_response(tf, grid.points()))))
        assert hinf_norm(tf, grid)[0] >= grid_max

    def test_improper_is_unbounded(self):
        tf = RationalTF([0.0, 0.0, 1.0], [1.0, 1.0])
        assert hinf_norm(tf, FrequencyGrid()) == (math.inf, math.inf)

    def test_unstable_raises(self):
        with pytest.raises(UnstableSystem):
            hinf_norm(RationalTF([1.0], [-1.0, 1.0]), FrequencyGrid())


def random_stable_tf(rng, max_order=4):
    """随机稳定传递函数: 实极点与一对复极点，分子阶次不超过分母"""
    factors = [[p, 1.0] for p in rng.uniform(0.1, 10.0, int(rng.integers(0, max_order - 1)))]
    omega_n, zeta = rng.uniform(0.1, 10.0), rng.uniform(0.1, 0.9)
    factors.append([omega_n ** 2, 2 * zeta * omega_n, 1.0])
    den = Polynomial.from_factors(*factors)
    num = rng.uniform(-1.0, 1.0, int(rng.integers(1, den.degree + 2)))
    num[-1] = math.copysign(max(abs(num[-1]), 0.1), num[-1])
    return RationalTF(num, den)


class TestRandomized:

    def test_conjugate_symmetry(self):
        rng = np.random.default_rng(3)
        omegas = np.logspace(-2, 3, 40)
        for _ in range(20):
            tf = random_stable_tf(rng)
            assert_allclose(frequency_response(tf, -omegas),
                            np.conj(frequency_response(tf, omegas)), rtol=1e-12)

    def test_statespace_matches_rational(self):
        rng = np.random.default_rng(5)
        omegas = [0.0, 0.01, 0.3, 1.0, 7.0, 50.0, 1e3]
        for _ in range(100):
            tf = random_stable_tf(rng)
            ss = to_statespace(tf)
            expected = frequency_response(tf, omegas)
            actual = np.array([ss.response(w)[0, 0] for w in omegas])
            assert np.max(np.abs(actual - expected)) <= 1e-9 * np.max(np.abs(expected))

    def test_hinf_matches_fine_grid(self):
        rng = np.random.default_rng(9)
        coarse = FrequencyGrid(points_per_decade=10)
        fine = FrequencyGrid(points_per_decade=100)
        for _ in range(20):
            omega_n, zeta = rng.uniform(0.1, 100.0), rng.uniform(0.2, 0.9)
            den = Polynomial.from_factors([omega_n ** 2, 2 * zeta * omega_n, 1.0],
                                          [rng.uniform(0.1, 10.0), 1.0])
            num = [rng.uniform(0.1, 10.0), 1.0] if rng.random() < 0.5 else [1.0]
            tf = RationalTF(num, den)
            norm, _ = hinf_norm(tf, coarse)
            fine_max = float(np.max(np.abs(frequency_response(tf, fine.points()))))
            assert norm == pytest.approx(fine_max, rel=5e-3)

    def test_feedback_poles(self):
        rng = np.random.default_rng(17)
        for _ in range(20):
            tf = random_stable_tf(rng)
            c = float(rng.uniform(-2.0, 2.0))
            if tf.num.degree == tf.den.degree and abs(1 - c * tf.num.lead) < 0.1:
                continue
            expected = (tf.den - tf.num * c).roots()
            assert_allclose(poles(feedback_transform(tf, c)), expected, rtol=1e-8, atol=1e-8)
