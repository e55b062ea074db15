"""Tests for the filament pair dynamics, the period and the period averages."""

import math

import numpy as np
import pytest

from leapfrog.errors import DomainError, SingularityError
from leapfrog.filaments import (
    apex_x2,
    check_symmetries,
    drift_speed,
    filament_rhs,
    frequency_omega,
    hamiltonian_H,
    initial_pair,
    integrate,
    level_set_residual,
    measure_period,
    midpoint,
    omega_from_samples,
    omega_limit,
    period_bounds,
    period_T0,
    reduced_rhs,
    to_physical,
    to_scaled,
    trajectory_frame,
)
from leapfrog.kernel import eval_G
from leapfrog.models import FilamentPair, HalfPlanePoint, PhysicalParams, ScaledState
from tests.conftest import assert_dataframe_has_columns

LN8 = math.log(8.0)


def _pair(p11, p12, p21, p22) -> FilamentPair:
    return FilamentPair(P1=HalfPlanePoint(rho=p11, z=p12), P2=HalfPlanePoint(rho=p21, z=p22))


def _self_energy(rho: float, log_eps: float) -> float:
    return math.sqrt(rho) / (2.0 * math.sqrt(2.0)) * (log_eps - 1.75 + 1.25 * LN8 + 0.75 * math.log(rho))


class TestHamiltonian:
    """Test cases for the pair Hamiltonian."""

    def test_term_by_term(self, reference_params):
        """Test H at the reference initial data against an independent evaluation."""
        P = initial_pair(reference_params)
        L = reference_params.log_eps
        expected = (
            eval_G((P.P1.rho, 0.0), (P.P2.rho, 0.0)) / math.sqrt(2.0)
            + _self_energy(P.P1.rho, L)
            + _self_energy(P.P2.rho, L)
        )
        assert hamiltonian_H(P, reference_params) == pytest.approx(expected, rel=1e-12)

    def test_translation_invariant(self, reference_params):
        """Test invariance under a common z shift."""
        a = hamiltonian_H(_pair(0.5, 0.1, 0.3, -0.2), reference_params)
        b = hamiltonian_H(_pair(0.5, 2.1, 0.3, 1.8), reference_params)
        assert a == pytest.approx(b, rel=1e-12)

    def test_exchange_symmetric(self, reference_params):
        """Test H(P1, P2) = H(P2, P1)."""
        a = hamiltonian_H(_pair(0.5, 0.1, 0.3, -0.2), reference_params)
        b = hamiltonian_H(_pair(0.3, -0.2, 0.5, 0.1), reference_params)
        assert a == pytest.approx(b, rel=1e-12)

    def test_coincident(self, reference_params):
        """Test P1 = P2 is singular."""
        with pytest.raises(SingularityError):
            hamiltonian_H(_pair(0.4, 0.0, 0.4, 0.0), reference_params)


class TestFilamentRhs:
    """Test cases for the filament velocities."""

    def test_rho_sum_conserved(self, rng, reference_params):
        """Test the first components of the two velocities cancel."""
        for _ in range(5):
            P = _pair(rng.uniform(0.45, 0.55), rng.uniform(-0.2, 0.2), rng.uniform(0.25, 0.35), rng.uniform(-0.2, 0.2))
            v1, v2 = filament_rhs(P, reference_params)
            assert v1[0] + v2[0] == pytest.approx(0.0, abs=1e-12)

    def test_hamiltonian_structure(self, rng, reference_params):
        """Test P_j' = rotate(grad_Pj H) / |ln eps| with finite-difference gradients."""
        h = 1e-6
        for _ in range(5):
            state = np.array([rng.uniform(0.45, 0.55), rng.uniform(-0.2, 0.2), rng.uniform(0.25, 0.35), rng.uniform(-0.2, 0.2)])
            grad = np.empty(4)
            for i in range(4):
                e = np.zeros(4)
                e[i] = h
                grad[i] = (
                    hamiltonian_H(FilamentPair.from_array(state + e), reference_params)
                    - hamiltonian_H(FilamentPair.from_array(state - e), reference_params)
                ) / (2.0 * h)
            v1, v2 = filament_rhs(FilamentPair.from_array(state), reference_params)
            expected = np.array([-grad[1], grad[0], -grad[3], grad[2]]) / reference_params.log_eps
            np.testing.assert_allclose(np.concatenate([v1, v2]), expected, atol=1e-7)

    def test_exchange_swaps_velocities(self, reference_params):
        """Test swapping the filaments swaps their velocities."""
        v1, v2 = filament_rhs(_pair(0.5, 0.1, 0.3, -0.2), reference_params)
        w1, w2 = filament_rhs(_pair(0.3, -0.2, 0.5, 0.1), reference_params)
        np.testing.assert_allclose(v1, w2, rtol=1e-12)
        np.testing.assert_allclose(v2, w1, rtol=1e-12)


class TestReducedSystem:
    """Test cases for the scaled relative motion."""

    def test_limiting_start_value(self, reference_params):
        """Test the velocity at (1, 0) for kappa = 0.4."""
        v = reduced_rhs(ScaledState(x1=1.0, x2=0.0), reference_params)
        assert v[0] == 0.0
        assert v[1] == pytest.approx(-1.3125, rel=1e-15)

    def test_origin(self, reference_params):
        """Test the singular origin."""
        with pytest.raises(SingularityError):
            reduced_rhs(ScaledState(x1=0.0, x2=0.0), reference_params)

    def test_perturbation_shrinks_with_eps(self):
        """Test perturbed minus limiting decays as |ln eps| grows."""
        s = ScaledState(x1=1.0, x2=0.3)
        gaps = []
        for eps in (1e-4, 1e-8):
            params = PhysicalParams(eps=eps, kappa=0.4, lam=1.0)
            gaps.append(np.linalg.norm(reduced_rhs(s, params, "perturbed") - reduced_rhs(s, params)))
        assert gaps[1] < 0.8 * gaps[0]

    def test_scaling_round_trip(self, reference_params):
        """Test to_scaled inverts to_physical."""
        s = ScaledState(x1=0.7, x2=-1.1)
        back = to_scaled(to_physical(s, reference_params), reference_params)
        assert back.x1 == pytest.approx(s.x1, rel=1e-14)
        assert back.x2 == pytest.approx(s.x2, rel=1e-14)

    def test_initial_pair(self, reference_params):
        """Test the vertical initial configuration maps to (lambda, 0)."""
        P = initial_pair(reference_params)
        assert P.P1.rho + P.P2.rho == pytest.approx(2.0 * reference_params.kappa, rel=1e-15)
        s = to_scaled(P, reference_params)
        assert s.x1 == pytest.approx(reference_params.lam, rel=1e-14)
        assert s.x2 == 0.0


class TestPeriod:
    """Test cases for the closed-form period of the limiting orbit."""

    def test_circular_limit(self):
        """Test T0 -> 2 pi lambda^2 as alpha -> 0."""
        assert period_T0(1.0, 1e9) == pytest.approx(2.0 * math.pi, rel=1e-6)

    def test_reference_value_range(self):
        """Test lambda = 1, kappa = 0.4."""
        assert 5.48 <= period_T0(1.0, 0.4) <= 7.35

    def test_bounds_on_grid(self):
        """Test the explicit bounds on a 20 x 20 grid."""
        for lam in np.linspace(0.1, 3.0, 20):
            for kappa in np.linspace(0.05, 2.0, 20):
                lo, hi = period_bounds(lam, kappa)
                assert lo <= period_T0(lam, kappa) <= hi

    def test_increasing_in_lambda(self):
        """Test strict monotonicity in lambda."""
        values = [period_T0(lam, 0.4) for lam in np.linspace(0.2, 2.5, 12)]
        assert all(a < b for a, b in zip(values[:-1], values[1:]))

    def test_scaling(self):
        """Test doubling lambda at fixed alpha quadruples the period."""
        assert period_T0(2.0, 1.6) == pytest.approx(4.0 * period_T0(1.0, 0.4), rel=1e-12)

    @pytest.mark.parametrize("lam,kappa", [(0.0, 1.0), (1.0, -1.0)])
    def test_domain(self, lam, kappa):
        """Test non-positive arguments."""
        with pytest.raises(DomainError):
            period_T0(lam, kappa)

    def test_omega_limit(self):
        """Test the frequency limit formula."""
        assert omega_limit(1.0, 0.4) * math.sqrt(0.8) * period_T0(1.0, 0.4) == pytest.approx(2.0 * math.pi)


@pytest.mark.integration
class TestLimitingOrbit:
    """Test cases for integrated orbits of the limiting system."""

    @pytest.fixture(scope="class")
    def orbit(self):
        params = PhysicalParams(eps=0.05, kappa=0.4, lam=1.0)
        T0 = period_T0(1.0, 0.4)
        return params, T0, integrate(np.array([1.0, 0.0]), params, "limiting", T0, tol=1e-12)

    def test_measured_period(self, orbit):
        """Test the section return time against the closed form."""
        params, T0, _ = orbit
        assert measure_period(params, "limiting", tol=1e-12) == pytest.approx(T0, rel=1e-6)

    def test_level_set(self, orbit):
        """Test the samples stay on the explicit level set."""
        _, _, traj = orbit
        assert np.max(traj.logs["levelset_residual"]) < 1e-8

    def test_radius_bounds(self, orbit):
        """Test lambda^2 <= |x|^2 <= lambda^2 e^(lambda^2 / (8 kappa))."""
        _, _, traj = orbit
        r2 = np.sum(traj.states**2, axis=1)
        assert np.all(r2 >= 1.0 - 1e-8)
        assert np.all(r2 <= math.exp(1.0 / 3.2) + 1e-8)

    def test_apex(self):
        """Test the apex lies on the level set."""
        x2 = apex_x2(1.0, 0.4)
        assert level_set_residual(np.array([0.0, x2]), 1.0, 0.4) < 1e-12

    def test_symmetries(self, orbit):
        """Test the half-period exchange and the time reversal."""
        _, T0, traj = orbit
        assert check_symmetries(traj, T0).max_deviation < 1e-8

    def test_short_span_rejected(self, orbit):
        """Test a trajectory shorter than one period."""
        _, T0, traj = orbit
        with pytest.raises(DomainError):
            check_symmetries(traj, 2.0 * T0)


@pytest.mark.slow
@pytest.mark.integration
class TestPairDynamics:
    """Test cases for the full pair at the reference parameters."""

    @pytest.fixture(scope="class")
    def run(self):
        params = PhysicalParams(eps=0.05, kappa=0.4, lam=1.0)
        T = measure_period(params, "perturbed", tol=1e-12)
        traj = integrate(initial_pair(params), params, "physical", T, tol=1e-12)
        return params, T, traj

    def test_conservation(self, run):
        """Test p11 + p21 and H over one period."""
        _, _, traj = run
        sum_rho, H = traj.logs["sum_rho"], traj.logs["H"]
        assert np.max(np.abs(sum_rho - 0.8)) < 1e-10
        assert np.max(np.abs(H - H[0])) / abs(H[0]) < 1e-8

    def test_leapfrogging(self, run):
        """Test the rho ordering of the filaments flips during a period."""
        _, _, traj = run
        order = np.sign(traj.states[:, 0] - traj.states[:, 2])
        assert order.min() < 0 < order.max()

    def test_symmetries(self, run):
        """Test the symmetries of the perturbed orbit."""
        _, T, traj = run
        assert check_symmetries(traj, T).max_deviation < 1e-6

    def test_midpoint(self, run):
        """Test C1 = kappa and C2(T) - C2(0) = U T."""
        params, T, traj = run
        C = midpoint(traj)
        assert np.max(np.abs(C[:, 0] - params.kappa)) < 1e-10
        U = drift_speed(params, T, traj)
        assert C[-1, 1] - C[0, 1] == pytest.approx(U * T, rel=1e-6)

    def test_frame(self, run):
        """Test the exported table."""
        _, T, traj = run
        df = trajectory_frame(traj, U=0.3)
        assert_dataframe_has_columns(df, ["t", "p11", "p12", "p21", "p22", "H", "sum_rho"])
        assert len(df) == len(traj.times)


class TestOmega:
    """Test cases for the renormalized frequency."""

    def test_frozen_orbit(self):
        """Test a constant p11 gives 2 pi / (sqrt(2 kappa) T)."""
        assert omega_from_samples(np.full(64, 0.4), 6.0) == pytest.approx(2.0 * math.pi / (math.sqrt(0.8) * 6.0), rel=1e-15)

    @pytest.mark.slow
    def test_default_period_is_measured(self, reference_params):
        """Test omitting T uses the measured period of the perturbed orbit."""
        T = measure_period(reference_params, "perturbed")
        assert frequency_omega(reference_params) == pytest.approx(frequency_omega(reference_params, T), rel=1e-12)

    @pytest.mark.slow
    def test_approaches_limit(self):
        """Test omega sqrt(2 kappa) T0 -> 2 pi and the drift speed -> 1 / (4 sqrt(2 kappa))."""
        T0 = period_T0(1.0, 0.4)
        omega_gaps, drift_gaps = [], []
        for eps in (1e-2, 1e-4, 1e-8):
            params = PhysicalParams(eps=eps, kappa=0.4, lam=1.0)
            T = measure_period(params, "perturbed", tol=1e-11)
            traj = integrate(initial_pair(params), params, "physical", T, tol=1e-11)
            omega_gaps.append(abs(frequency_omega(params, T, traj) * math.sqrt(0.8) * T0 - 2.0 * math.pi))
            drift_gaps.append(abs(drift_speed(params, T, traj) - 0.25 / math.sqrt(0.8)))
        assert omega_gaps[0] > omega_gaps[1] > omega_gaps[2]
        assert drift_gaps[0] > drift_gaps[1] > drift_gaps[2]
