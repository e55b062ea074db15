"""Unit tests for the J function, its series and the Legendre function Q_1/2."""

import math

import numpy as np
import pytest

from leapfrog.errors import DomainError
from leapfrog.specfun import (
    J_SERIES,
    LN8,
    check_J_ode,
    eval_J,
    eval_J_array,
    eval_J_prime,
    eval_J_series,
    legendre_Q_half,
)


def _simpson_J(s: float, n: int = 200_000) -> float:
    """Brute-force composite Simpson oracle for J."""
    theta = np.linspace(0.0, math.pi, n + 1)
    f = np.cos(theta) / np.sqrt(s + 2.0 - 2.0 * np.cos(theta))
    h = math.pi / n
    return h / 3.0 * (f[0] + f[-1] + 4.0 * f[1:-1:2].sum() + 2.0 * f[2:-1:2].sum())


class TestSeriesCoefficients:
    """Test cases for the small-s expansion coefficients."""

    def test_log_coefficients(self):
        """Test the A_n values."""
        assert J_SERIES.A == [0.5, 3.0 / 32.0, -15.0 / 2048.0, 105.0 / 98304.0]

    def test_regular_coefficients(self):
        """Test the B_n values."""
        assert J_SERIES.B[0] == LN8 - 2.0
        assert J_SERIES.B[1] == pytest.approx(-1.0 / 16.0 + 3.0 / 16.0 * LN8, abs=1e-15)
        assert J_SERIES.B[2] == pytest.approx(31.0 / 2048.0 - 15.0 / 1024.0 * LN8, abs=1e-15)


class TestEvalJ:
    """Test cases for the quadrature evaluation of J."""

    def test_matches_simpson_oracle(self):
        """Test agreement with brute-force quadrature at s = 1."""
        assert eval_J(1.0) == pytest.approx(_simpson_J(1.0), abs=1e-10)

    def test_far_field(self):
        """Test the (pi / 2) s^(-3/2) decay."""
        s = 1e8
        assert eval_J(s) == pytest.approx(0.5 * math.pi * s**-1.5, rel=1e-3)

    def test_near_zero_matches_series(self):
        """Test that the series is accurate for small s."""
        s = 1e-4
        # the missing B_3 term leaves an O(s^3) remainder
        assert abs(eval_J(s) - eval_J_series(s, 3)) < 1e-10

    def test_strictly_decreasing(self):
        """Test monotonicity on a log grid."""
        values = [eval_J(s) for s in np.logspace(-6, 3, 40)]
        assert all(a > b for a, b in zip(values[:-1], values[1:]))

    @pytest.mark.parametrize("s", [0.0, -1.0, float("nan")])
    def test_rejects_non_positive(self, s):
        """Test domain errors."""
        with pytest.raises(DomainError):
            eval_J(s)

    def test_derivative_matches_differences(self):
        """Test J' against central differences of J."""
        for s in (0.05, 1.0, 7.0):
            h = 1e-5 * s
            fd = (eval_J(s + h) - eval_J(s - h)) / (2.0 * h)
            assert eval_J_prime(s) == pytest.approx(fd, rel=1e-6)


class TestEvalJSeries:
    """Test cases for the truncated series."""

    def test_value_at_one_is_exact(self):
        """Test that the log term vanishes at s = 1."""
        assert eval_J_series(1.0, 0) == LN8 - 2.0

    def test_higher_truncation_is_closer(self):
        """Test truncation monotonicity at s = 0.5."""
        exact = eval_J(0.5)
        assert abs(exact - eval_J_series(0.5, 3)) < abs(exact - eval_J_series(0.5, 1))

    def test_small_argument(self):
        """Test agreement at s = 0.01."""
        assert eval_J_series(0.01, 2) == pytest.approx(eval_J(0.01), abs=1e-5)

    def test_error_scaling_under_halving(self):
        """Test that the truncation error scales like s^3 |ln s|."""
        s_values = [1e-2, 5e-3, 2.5e-3]
        errors = [abs(eval_J(s) - eval_J_series(s, 2)) for s in s_values]
        ratios = [b / a for a, b in zip(errors[:-1], errors[1:])]
        for r in ratios:
            assert 0.08 <= r <= 0.20

    @pytest.mark.parametrize("s,n_max", [(4.0, 1), (5.0, 1), (100.0, 0), (0.0, 1), (0.5, 4), (0.5, -1)])
    def test_domain(self, s, n_max):
        """Test rejected arguments."""
        with pytest.raises(DomainError):
            eval_J_series(s, n_max)


class TestOdeAndLegendre:
    """Test cases for the ODE residual and the Legendre identity."""

    @pytest.mark.parametrize("s,bound", [(0.1, 1e-4), (1.0, 1e-5), (10.0, 1e-6)])
    def test_ode_residual(self, s, bound):
        """Test the Legendre-type ODE satisfied by J."""
        assert check_J_ode(s) < bound

    @pytest.mark.parametrize("s", [1.0, 2.0, 0.3])
    def test_q_half_identity(self, s):
        """Test J(s) = Q_1/2(s/2 + 1)."""
        assert legendre_Q_half(0.5 * s + 1.0) == pytest.approx(eval_J(s), abs=1e-10)

    def test_q_half_near_one(self):
        """Test logarithmic growth near x = 1."""
        value = legendre_Q_half(1.0001)
        assert 0 < value < 10

    def test_q_half_domain(self):
        """Test x <= 1 is rejected."""
        with pytest.raises(DomainError):
            legendre_Q_half(1.0)


class TestEvalJArray:
    """Test cases for the vectorized evaluation used by grid quadratures."""

    def test_matches_scalar_path(self):
        """Test the three regimes against eval_J."""
        s = np.array([1e-8, 1e-3, 0.7, 12.0, 40.0, 300.0])
        expected = np.array([eval_J(x) for x in s])
        np.testing.assert_allclose(eval_J_array(s), expected, rtol=1e-10)

    def test_derivative_output(self):
        """Test the optional derivative."""
        s = np.array([0.2, 5.0])
        _, deriv = eval_J_array(s, derivative=True)
        np.testing.assert_allclose(deriv, [eval_J_prime(x) for x in s], rtol=1e-7)

    def test_shape_preserved(self):
        """Test that input shape is kept."""
        assert eval_J_array(np.full((3, 4), 0.5)).shape == (3, 4)
