import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.special import binom, erfcx

from fopid_lqr.frac_num import DomainError, gl_apply, gl_weights, mittag_leffler


def signed_binomial(order, count):
    return np.array([(-1) ** j * binom(order, j) for j in range(count)])


class TestGlWeights:
    def test_identity(self):
        assert gl_weights(0, 4).weights.tolist() == [1, 0, 0, 0]

    def test_first_difference(self):
        assert gl_weights(1, 4).weights.tolist() == [1, -1, 0, 0]

    def test_half_order_against_binomials(self):
        expected = signed_binomial(0.5, 4)
        np.testing.assert_allclose(expected, [1, -0.5, -0.125, -0.0625], rtol=1e-15)
        np.testing.assert_allclose(gl_weights(0.5, 4).weights, expected, rtol=1e-14)

    @pytest.mark.parametrize("m", [0, 1, 2, 3, 5])
    def test_integer_orders_are_exact_binomials(self, m):
        w = gl_weights(m, m + 6).weights
        np.testing.assert_array_equal(w[: m + 1], signed_binomial(m, m + 1))
        assert np.all(w[m + 1 :] == 0)

    @given(st.floats(-2, 2, allow_nan=False), st.integers(2, 60))
    def test_recurrence(self, order, count):
        w = gl_weights(order, count).weights
        assert w[0] == 1
        for j in range(1, count):
            # equal up to rounding of the factor, which may cancel near j = order + 1
            assert abs(w[j] - w[j - 1] * (1 - (order + 1) / j)) <= 4e-16 * abs(w[j - 1]) * (1 + abs(order))

    def test_sign_patterns(self):
        assert np.all(gl_weights(-0.7, 50).weights > 0)
        w = gl_weights(0.3, 50).weights
        assert w[0] == 1 and np.all(w[1:] < 0)

    @pytest.mark.parametrize("bad", [math.nan, math.inf, -math.inf])
    def test_non_finite_order(self, bad):
        with pytest.raises(ValueError):
            gl_weights(bad, 3)

    def test_count_must_be_positive(self):
        with pytest.raises(ValueError):
            gl_weights(0.5, 0)


class TestGlApply:
    h = 0.01
    t = np.arange(0, 2 + h / 2, h)

    def test_integral_of_ramp(self):
        out = gl_apply(self.t, -1, self.h)
        assert np.max(np.abs(out - self.t**2 / 2)) <= 0.02

    def test_zero_order_is_identity(self):
        x = np.sin(self.t) + 3
        np.testing.assert_array_equal(gl_apply(x, 0, 0.37), x)

    def test_derivative_of_ramp(self):
        out = gl_apply(self.t, 1, self.h)
        np.testing.assert_allclose(out[1:], 1.0, atol=1e-12)

    def test_half_derivative_of_ramp(self):
        # D^0.5 t = 2 sqrt(t / pi); GL is first order in h
        out = gl_apply(self.t, 0.5, self.h)
        exact = 2 * np.sqrt(self.t / np.pi)
        assert np.max(np.abs(out - exact)[10:]) < 0.01

    def test_invalid_step(self):
        with pytest.raises(ValueError):
            gl_apply([1.0, 2.0], 0.5, 0.0)
        with pytest.raises(ValueError):
            gl_apply([1.0], 0.5, -1.0)

    def test_empty_signal(self):
        with pytest.raises(ValueError):
            gl_apply([], 0.5, 0.1)

    @pytest.mark.parametrize("q", [0.2, 0.5, 0.9])
    def test_composition_recovers_signal(self, q):
        f = np.sin(self.t)
        back = gl_apply(gl_apply(f, -q, self.h), q, self.h)
        assert np.max(np.abs(back[1:] - f[1:])) <= self.h

    @settings(max_examples=50)
    @given(
        st.lists(st.floats(-10, 10), min_size=1, max_size=40),
        st.floats(-1.5, 1.5),
        st.floats(-3, 3),
        st.floats(-3, 3),
    )
    def test_linearity(self, values, q, a, b):
        f = np.array(values)
        g = np.cos(np.arange(len(f)))
        h = 0.05
        lhs = gl_apply(a * f + b * g, q, h)
        rhs = a * gl_apply(f, q, h) + b * gl_apply(g, q, h)
        scale = 1 + np.max(np.abs(lhs)) + np.max(np.abs(a * gl_apply(f, q, h)))
        assert np.max(np.abs(lhs - rhs)) <= 1e-12 * scale * len(f)


class TestMittagLeffler:
    def test_exponential_case(self):
        assert mittag_leffler(1, -1) == pytest.approx(math.exp(-1), abs=1e-12)

    @pytest.mark.parametrize("alpha", [0.1, 0.5, 1.0, 1.7, 2.0])
    def test_zero_argument(self, alpha):
        assert mittag_leffler(alpha, 0) == 1

    def test_cosine_case(self):
        assert mittag_leffler(2, -1) == pytest.approx(math.cos(1), abs=1e-12)

    @pytest.mark.parametrize("x", [0.5, 2.0, 4.5])
    def test_alpha_two_is_cos(self, x):
        assert mittag_leffler(2, -(x**2)) == pytest.approx(math.cos(x), abs=1e-10)

    @pytest.mark.parametrize("z", np.linspace(-20, 20, 17))
    def test_agrees_with_exp(self, z):
        assert mittag_leffler(1, z) == pytest.approx(math.exp(z), abs=1e-8, rel=1e-12)

    @pytest.mark.parametrize("z", [-30.0, -12.5, -3.0, 0.7, 2.5])
    def test_half_order_against_erfcx(self, z):
        # E_1/2(z) = exp(z^2) erfc(-z)
        assert mittag_leffler(0.5, z) == pytest.approx(erfcx(-z), abs=1e-8, rel=1e-10)

    @pytest.mark.parametrize("alpha,z", [(1.0, -31.0), (0.7, 40.0), (0.3, -2.0), (2.5, 1.0), (0.0, 1.0)])
    def test_domain_errors(self, alpha, z):
        with pytest.raises(DomainError):
            mittag_leffler(alpha, z)
