"""Unit tests for the torus Fourier toolkit."""

import logging
import math

import numpy as np
import pytest
from scipy.integrate import quad

from leapfrog.contour import aux_functions
from leapfrog.errors import DomainError
from leapfrog.kernel import hessian_G
from leapfrog.models import DiophantineParams, PhysicalParams
from leapfrog.spectral import (
    FourierSeries,
    apply_transport,
    asymptotic_constant,
    chi_cutoff,
    coefficient_I,
    coefficient_I_quadrature,
    diagonal_eigenvalue,
    divisor_scan,
    hilbert,
    hilbert_pv,
    integral_identities,
    lambda_m,
    lambda_multiplier,
    mu_j2,
    op_Hu0,
    op_Q,
    op_S,
    project,
    transport_expansion,
    transport_invert,
)


def _random_series(rng, n_modes: int = 8) -> FourierSeries:
    k = range(1, n_modes + 1)
    return FourierSeries.from_cos_sin(
        cos=dict(zip(k, rng.normal(size=n_modes))), sin=dict(zip(k, rng.normal(size=n_modes)))
    )


def _assert_same(a: FourierSeries, b: FourierSeries, atol: float = 1e-14):
    for key in set(a.modes) | set(b.modes):
        assert abs(a.coefficient(key) - b.coefficient(key)) <= atol, key


class TestFourierSeries:
    """Test cases for the sparse series container."""

    def test_real_flag_checked(self):
        """Test a non-conjugate-symmetric series cannot be flagged real."""
        with pytest.raises(DomainError):
            FourierSeries({1: 1.0, -1: 2.0})

    def test_from_function(self):
        """Test sampling a trigonometric polynomial recovers it."""
        series = FourierSeries.from_function(lambda t: np.cos(t) + 0.5 * np.sin(3 * t), n=32)
        theta = np.array([0.1, 1.7, 4.0])
        np.testing.assert_allclose(series.sample(theta).real, np.cos(theta) + 0.5 * np.sin(3 * theta), atol=1e-14)

    def test_mixed_indices(self):
        """Test one- and two-dimensional keys cannot be mixed."""
        with pytest.raises(DomainError):
            FourierSeries({1: 1.0, (0, 1): 1.0}, real=False)

    def test_samples_round_trip(self, rng):
        """Test sampling then transforming recovers the coefficients."""
        series = _random_series(rng)
        theta = 2.0 * np.pi * np.arange(32) / 32
        _assert_same(FourierSeries.from_samples(series.sample(theta), drop=1e-14), series, atol=1e-13)

    def test_two_dimensional_sampling(self):
        """Test sampling of a (phi, theta) mode."""
        series = FourierSeries({(1, 2): 0.5, (-1, -2): 0.5})
        assert float(series.sample(0.3, phi=0.2)) == pytest.approx(math.cos(0.2 + 0.6))

    def test_derivative(self):
        """Test d/dtheta sin(2 theta) = 2 cos(2 theta)."""
        d = FourierSeries.from_cos_sin(sin={2: 1.0}).derivative()
        assert d.cos_coefficient(2) == pytest.approx(2.0)
        assert d.sin_coefficient(2) == pytest.approx(0.0)

    def test_norm_is_rms(self):
        """Test the normalized L2 norm of cos(theta)."""
        assert FourierSeries.from_cos_sin(cos={1: 1.0}).norm() == pytest.approx(math.sqrt(0.5))


class TestProjection:
    """Test cases for single-mode projections."""

    def test_cos_part(self):
        """Test Pi_1c[cos theta + 2 sin 5 theta] = cos theta."""
        series = FourierSeries.from_cos_sin(cos={1: 1.0}, sin={5: 2.0})
        _assert_same(project(series, 1, "cos"), FourierSeries.from_cos_sin(cos={1: 1.0}))

    def test_orthogonal(self):
        """Test Pi_1s[cos theta] = 0."""
        assert project(FourierSeries.from_cos_sin(cos={1: 1.0}), 1, "sin").norm() == 0.0

    def test_matches_grid_quadrature(self, rng):
        """Test coefficient extraction against (1/pi) int h cos(k theta) on a grid."""
        series = _random_series(rng, 16)
        theta = 2.0 * np.pi * np.arange(64) / 64
        values = series.sample(theta)
        for k in (1, 5, 16):
            cos_k = 2.0 * np.mean(values * np.cos(k * theta))
            sin_k = 2.0 * np.mean(values * np.sin(k * theta))
            assert project(series, k, "cos").cos_coefficient(k) == pytest.approx(cos_k, abs=1e-12)
            assert project(series, k, "sin").sin_coefficient(k) == pytest.approx(sin_k, abs=1e-12)

    def test_mode_zero_rejected(self):
        """Test k >= 1."""
        with pytest.raises(DomainError):
            project(FourierSeries.from_cos_sin(cos={1: 1.0}), 0, "cos")


class TestHilbert:
    """Test cases for the periodic Hilbert transform."""

    def test_cos3(self):
        """Test H[cos 3 theta] = -sin 3 theta."""
        h = hilbert(FourierSeries.from_cos_sin(cos={3: 1.0}))
        assert h.sin_coefficient(3) == pytest.approx(-1.0)
        assert h.cos_coefficient(3) == pytest.approx(0.0)

    def test_constant_annihilated(self, caplog):
        """Test H[1] = 0 with a warning."""
        with caplog.at_level(logging.WARNING, logger="leapfrog.spectral"):
            assert hilbert(FourierSeries({0: 1.0})).norm() == 0.0
        assert "non-zero mean" in caplog.text

    def test_squares_to_minus_identity(self, rng):
        """Test H^2 = -Id on zero-mean series."""
        series = _random_series(rng)
        _assert_same(hilbert(hilbert(series)), -series)

    def test_skew(self, rng):
        """Test <Hu, v> = -<u, Hv>."""
        u, v = _random_series(rng), _random_series(rng)
        assert hilbert(u).inner(v) == pytest.approx(-u.inner(hilbert(v)), abs=1e-14)

    @pytest.mark.parametrize("theta", [0.0, 0.4, 2.5])
    def test_principal_value_oracle(self, theta):
        """Test the cot-kernel quadrature against the multiplier."""
        assert hilbert_pv(lambda eta: np.cos(3 * eta), theta) == pytest.approx(-math.sin(3 * theta), abs=1e-8)


class TestLogMultipliers:
    """Test cases for the Lambda_m multipliers and I_(m, n) coefficients."""

    @pytest.mark.parametrize("j", range(2, 11))
    def test_I2_closed_form(self, j):
        """Test I_(2, j) = 1 / (4 j (j^2 - 1))."""
        assert coefficient_I(2, j) == pytest.approx(1.0 / (4 * j * (j * j - 1)), rel=1e-12)
        assert coefficient_I_quadrature(2, j) == pytest.approx(1.0 / (4 * j * (j * j - 1)), abs=1e-10)

    def test_sign_convention(self):
        """Test coefficient_I is the log-kernel multiplier with the opposite sign."""
        for m, n in ((0, 3), (1, 2), (2, 5), (3, 1)):
            assert coefficient_I(m, n) == -lambda_multiplier(m, n)
        assert coefficient_I(2, 3) > 0

    def test_mean_of_log(self):
        """Test the mean of -ln|sin(x/2)| is ln 2."""
        assert lambda_multiplier(0, 0) == pytest.approx(math.log(2.0), rel=1e-14)
        assert lambda_multiplier(0, 5) == pytest.approx(0.1, rel=1e-14)

    @pytest.mark.slow
    def test_closed_form_matches_quadrature(self):
        """Test m in 0..4 and |n| <= 12."""
        for m in range(5):
            for n in range(-12, 13):
                assert coefficient_I(m, n) == pytest.approx(coefficient_I_quadrature(m, n), abs=1e-9), (m, n)

    def test_d2(self):
        """Test d_2 = -1/12 through the operator and the closed form."""
        assert diagonal_eigenvalue(2) == pytest.approx(-1.0 / 12.0)
        out = lambda_m(FourierSeries({2: 1.0}, real=False), 2).derivative()
        assert out.coefficient(2) == pytest.approx(1j * -1.0 / 12.0)

    def test_diagonal_domain(self):
        """Test |j| >= 2."""
        with pytest.raises(DomainError):
            diagonal_eigenvalue(1)

    @pytest.mark.parametrize("m", [2, 4])
    def test_even_asymptotics(self, m):
        """Test n^(m+1) Lambda_(m, n) approaches its limit."""
        gaps = [abs(lambda_multiplier(m, n) * n ** (m + 1) - asymptotic_constant(m)) for n in (10, 50, 200)]
        assert gaps[0] > gaps[1] > gaps[2]
        assert gaps[2] < 1e-3 * abs(asymptotic_constant(m))

    @pytest.mark.parametrize("m", [1, 3])
    def test_odd_asymptotics(self, m):
        """Test n^(m+1) Lambda_(m, n) / ln n approaches its limit."""
        gaps = [
            abs(lambda_multiplier(m, n) * n ** (m + 1) / math.log(n) / asymptotic_constant(m) - 1.0)
            for n in (20, 60, 200)
        ]
        assert gaps[0] > gaps[1] > gaps[2]

    def test_negative_order(self):
        """Test m >= 0."""
        with pytest.raises(DomainError):
            lambda_multiplier(-1, 3)


class TestModeOneOperators:
    """Test cases for the finite-rank operators."""

    G3 = 0.7

    def test_S_on_cos(self):
        """Test d/dtheta S[cos theta] = g3 sin 2 theta."""
        out = op_S(FourierSeries.from_cos_sin(cos={1: 1.0}), self.G3).derivative()
        assert out.sin_coefficient(2) == pytest.approx(self.G3)
        assert out.cos_coefficient(2) == pytest.approx(0.0)

    def test_S_on_sin2(self):
        """Test d/dtheta S[sin 2 theta] = (g3 / 2) cos theta."""
        out = op_S(FourierSeries.from_cos_sin(sin={2: 1.0}), self.G3).derivative()
        assert out.cos_coefficient(1) == pytest.approx(0.5 * self.G3)

    def test_Hu0_on_cos(self):
        """Test H_u0[cos theta] = -3 g3 sin 2 theta."""
        out = op_Hu0(FourierSeries.from_cos_sin(cos={1: 1.0}), self.G3)
        assert out.sin_coefficient(2) == pytest.approx(-3.0 * self.G3)
        assert out.cos_coefficient(2) == pytest.approx(0.0, abs=1e-15)

    def test_Q_localizes_on_mode_one(self):
        """Test Q vanishes on a mode-3 series."""
        aux = {"p11": 0.4, "q1": 0.3, "q2": -0.2, "q3": 0.1, "q4": 0.5}
        mode3 = FourierSeries.from_cos_sin(cos={3: 1.0}, sin={3: 2.0})
        assert op_Q(mode3, mode3, aux).derivative().norm() == 0.0

    def test_Q_self_part(self):
        """Test the diagonal part of Q on cos theta."""
        aux = {"p11": 0.4, "q1": 0.0, "q2": 0.0, "q3": 0.0, "q4": 0.0}
        out = op_Q(FourierSeries.from_cos_sin(cos={1: 1.0}), FourierSeries(), aux)
        assert out.cos_coefficient(1) == pytest.approx(-(0.8**-1.5) / 16.0)
        assert out.sin_coefficient(1) == pytest.approx(0.0)


def _mode(kind: str, k: int):
    """A single trigonometric mode and its derivative."""
    if kind == "cos":
        return FourierSeries.from_cos_sin(cos={k: 1.0}), lambda x: math.cos(k * x), lambda x: -k * math.sin(k * x)
    return FourierSeries.from_cos_sin(sin={k: 1.0}), lambda x: math.sin(k * x), lambda x: k * math.cos(k * x)


def _mean(g) -> float:
    return quad(g, 0.0, 2.0 * math.pi, epsabs=1e-13, epsrel=1e-13, limit=200)[0] / (2.0 * math.pi)


def _log_mean(g) -> float:
    """Mean over x of -ln|sin(x / 2)| g(x), with the log singularity at 0 as a weight."""

    def pair(x: float) -> float:
        return g(x) + g(-x)

    def remainder(x: float) -> float:
        return pair(x) * (math.log(math.sin(0.5 * x) / x) if x > 0 else math.log(0.5))

    log_part = quad(pair, 0.0, math.pi, weight="alg-loga", wvar=(0.0, 0.0), limit=200)[0]
    rest = quad(remainder, 0.0, math.pi, epsabs=1e-13, epsrel=1e-13, limit=200)[0]
    return -(log_part + rest) / (2.0 * math.pi)


MODES = [(kind, k) for kind in ("cos", "sin") for k in (1, 2, 3)]
THETA_SAMPLES = (0.3, 1.7, 4.0)


class TestModeOneQuadrature:
    """Test cases comparing the mode maps with their integral definitions."""

    G3 = 0.7

    @pytest.mark.parametrize("kind,k", MODES)
    def test_S(self, kind, k):
        """Test S[h] = -g3 mean_eta (cos(theta + 2 eta) + cos(2 theta + eta)) h(eta)."""
        series, h, _ = _mode(kind, k)
        out = op_S(series, self.G3)
        for theta in THETA_SAMPLES:
            direct = -self.G3 * _mean(lambda eta: (math.cos(theta + 2 * eta) + math.cos(2 * theta + eta)) * h(eta))
            assert float(out.sample(theta)) == pytest.approx(direct, abs=1e-8)

    @pytest.mark.parametrize("kind,k", MODES)
    def test_Hu0(self, kind, k):
        """Test H_u0[h] = 4 g3 d/dtheta mean_eta -ln|sin((theta - eta) / 2)| (cos theta + cos eta) h(eta)."""
        series, h, dh = _mode(kind, k)
        out = op_Hu0(series, self.G3)
        for theta in THETA_SAMPLES:

            def integrand(x, th=theta):
                eta = th + x
                return (
                    -math.sin(th) * h(eta)
                    + (math.cos(th) + math.cos(eta)) * dh(eta)
                    - math.sin(eta) * h(eta)
                )

            assert float(out.sample(theta)) == pytest.approx(4.0 * self.G3 * _log_mean(integrand), abs=1e-8)

    @pytest.mark.integration
    @pytest.mark.parametrize("kind,k", MODES)
    def test_Q(self, reference_orbit, kind, k):
        """Test Q against its self part plus the mixed Hessian of G paired with both ellipses."""
        params = PhysicalParams(eps=0.05, kappa=0.4, lam=1.0)
        phi = 0.9
        aux = aux_functions(params, reference_orbit, [phi])
        p11, p12, p21, p22 = reference_orbit.state(phi)
        mixed = hessian_G((p11, p12), (p21, p22))[:2, 2:] / params.log_eps
        a, b = (2.0 * p11) ** 0.25, (2.0 * p21) ** 0.25
        series, h, _ = _mode(kind, k)
        star, h_star, _ = _mode("sin" if kind == "cos" else "cos", k)
        out = op_Q(series, star, aux)
        hc, hs = _mean(lambda eta: h(eta) * math.cos(eta)), _mean(lambda eta: h(eta) * math.sin(eta))
        for theta in THETA_SAMPLES:
            z = np.array([a * math.cos(theta), math.sin(theta) / a])

            def paired(eta, z=z):
                return h_star(eta) * float(z @ mixed @ np.array([b * math.cos(eta), math.sin(eta) / b]))

            direct = -0.125 * (2.0 * p11) ** -1.5 * (math.cos(theta) * hc + 3.0 * math.sin(theta) * hs)
            direct += _mean(paired) / math.sqrt(p11)
            assert float(out.sample(theta)) == pytest.approx(direct, abs=1e-8)


class TestIntegralIdentities:
    """Test cases for the disk integrals with a boundary log singularity."""

    @pytest.fixture(scope="class")
    def report(self):
        return {check.name: check for check in integral_identities()}

    def test_all_present(self, report):
        """Test every identity is reported."""
        assert set(report) == {
            "log", "log_mode1", "log_mode2", "poisson", "cos_cos", "cos_sin",
            "cos_cos3", "cos_cos_sin2", "cos_cos2_sin", "cos_cos2",
        }

    def test_required_identities(self, report):
        """Test every required identity to 1e-6."""
        for check in report.values():
            if check.required:
                assert check.deviation < 1e-6, check

    @pytest.mark.parametrize("name,expected", [("log", 0.0), ("log_mode2", -math.pi / 6), ("poisson", math.pi)])
    def test_reference_values(self, report, name, expected):
        """Test the closed forms used as references."""
        assert report[name].expected == pytest.approx(expected)


class TestTransport:
    """Test cases for the regularized transport inverter."""

    DIO = DiophantineParams(nu=0.5, tau=1.5, ncut=16)

    def test_single_mode(self):
        """Test h = e^(i theta), c = -1/2 gives rho = 2i e^(i theta)."""
        rho, report = transport_invert(FourierSeries({(0, 1): 1.0}, real=False), 1e-3, 1.0, -0.5, self.DIO)
        assert rho.coefficient((0, 1)) == pytest.approx(2j)
        assert report.residual == 0.0
        assert report.diophantine

    def test_random_nonresonant(self, rng):
        """Test the substitution residual on a dense block of non-resonant modes."""
        modes = {
            (l, j): complex(rng.normal(), rng.normal())
            for l in range(-16, 16)
            for j in range(-16, 16)
            if j != 0
        }
        h = FourierSeries(modes, real=False)
        rho, report = transport_invert(h, 1e-3, 1.0, -0.5, self.DIO)
        assert report.diophantine
        assert report.residual < 1e-12
        _assert_same(apply_transport(rho, 1e-3, 1.0, -0.5), h, atol=1e-12)

    def test_resonant_mode_cut(self):
        """Test an exactly resonant mode is zeroed and accounted for."""
        h = FourierSeries({(1, 1): 3.0, (0, 1): 1.0}, real=False)
        rho, report = transport_invert(h, 0.5, 1.0, -0.5, self.DIO)
        assert report.cut_modes == [(1, 1)]
        assert report.cut_norm == pytest.approx(3.0)
        assert report.residual == pytest.approx(3.0)
        assert rho.coefficient((1, 1)) == 0
        assert not report.diophantine

    def test_expansion_agrees_on_low_modes(self):
        """Test the Neumann expansion against the exact inverse."""
        h = FourierSeries({(2, 1): 1.0, (1, 3): 0.5j, (-1, 2): -0.3}, real=False)
        rho, _ = transport_invert(h, 1e-3, 1.0, -0.5, self.DIO)
        _assert_same(transport_expansion(h, 1e-3, 1.0, -0.5, order=3), rho, atol=1e-8)


class TestDivisorScan:
    """Test cases for the Diophantine admissibility scan."""

    def test_vacuous_threshold(self):
        """Test nu -> 0 admits every lambda."""
        df = divisor_scan(
            0.01, lambda lam: 1.0, lambda lam: 0.3 + lam, np.linspace(0.5, 2.0, 7), DiophantineParams(nu=1e-300, tau=1.5, ncut=8)
        )
        assert df.attrs["admissible_fraction"] == 1.0
        assert list(df.columns) == ["lambda", "admissible", "worst_divisor", "worst_mode_l", "worst_mode_j"]

    def test_exact_resonance(self):
        """Test c = 2 eps1 omega fails for every lambda."""
        df = divisor_scan(0.01, lambda lam: 1.0, lambda lam: 0.02, [0.5, 1.0, 1.5], DiophantineParams(nu=0.1, tau=1.5, ncut=8))
        assert df.attrs["admissible_fraction"] == 0.0
        assert np.all(df["worst_divisor"] == 0.0)

    def test_spectrum_option(self):
        """Test a mu_j2 spectrum is accepted."""
        mu = lambda lam, js: np.array([mu_j2(int(j), 0.5, 0.1, lam, 0.05) for j in js])  # noqa: E731
        df = divisor_scan(0.01, lambda lam: 1.0, lambda lam: 0.5, [1.0], DiophantineParams(nu=1e-3, tau=1.5, ncut=4), mu)
        assert len(df) == 1


class TestChiCutoff:
    """Test cases for the smooth cut-off."""

    def test_plateaus(self):
        """Test 0 below 1/3 and 1 above 1/2."""
        assert chi_cutoff(0.0) == 0.0
        assert chi_cutoff(-0.3) == 0.0
        assert chi_cutoff(0.5) == 1.0
        assert chi_cutoff(-2.0) == 1.0

    def test_monotone_ramp(self):
        """Test strict increase between the plateaus."""
        values = chi_cutoff(np.linspace(0.34, 0.49, 20))
        assert np.all(np.diff(values) > 0)
        assert np.all((values > 0) & (values < 1))
