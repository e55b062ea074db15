"""Tests for Pydantic models."""

import math

import numpy as np
import pytest
from pydantic import ValidationError

from leapfrog.models import (
    CheckResult,
    DiophantineParams,
    ExpansionTable,
    FilamentPair,
    HalfPlanePoint,
    PhysicalParams,
    RunConfig,
    ScaledState,
    SymmetryReport,
)


def test_physical_params_alias():
    """Test PhysicalParams accepts lambda and lam."""
    a = PhysicalParams(eps=0.05, kappa=0.4, **{"lambda": 1.0})
    b = PhysicalParams(eps=0.05, kappa=0.4, lam=1.0)
    assert a == b


def test_physical_params_derived():
    """Test log_eps, r_eps and alpha."""
    params = PhysicalParams(eps=0.01, kappa=0.5, lam=2.0)
    assert params.log_eps == pytest.approx(math.log(100.0))
    assert params.r_eps == pytest.approx(1.0 / math.sqrt(math.log(100.0)))
    assert params.alpha == pytest.approx(1.0)


@pytest.mark.parametrize("eps", [0.0, 0.5, 1.0])
def test_physical_params_eps_range(eps):
    """Test eps must lie below e^-1."""
    with pytest.raises(ValidationError):
        PhysicalParams(eps=eps, kappa=0.4, lam=1.0)


def test_half_plane_point_on_axis():
    """Test rho = 0 is rejected."""
    with pytest.raises(ValidationError):
        HalfPlanePoint(rho=0.0, z=1.0)


def test_filament_pair_array():
    """Test the state vector layout and separation."""
    pair = FilamentPair.from_array([1.0, 0.5, 0.7, 0.1])
    np.testing.assert_array_equal(pair.as_array(), [1.0, 0.5, 0.7, 0.1])
    assert pair.separation == pytest.approx(0.5)


def test_scaled_state_radius():
    """Test the squared radius of a scaled state."""
    assert ScaledState(x1=3.0, x2=4.0).radius2 == 25.0


def test_expansion_table_lengths():
    """Test the coefficient count depends on the role."""
    ExpansionTable(role="plain", log_coeffs=[1.0, 0.0, 0.0, 0.0], reg_coeffs=[0.0, 0.0, 0.0])
    with pytest.raises(ValidationError):
        ExpansionTable(role="gradient", log_coeffs=[1.0, 0.0, 0.0, 0.0], reg_coeffs=[0.0, 0.0, 0.0])


def test_diophantine_bounds():
    """Test nu in (0, 1] and the default cut-off."""
    assert DiophantineParams(nu=1.0, tau=2.0).ncut == 64
    with pytest.raises(ValidationError):
        DiophantineParams(nu=1.5, tau=2.0)


def test_symmetry_report_max():
    """Test the largest deviation is reported."""
    report = SymmetryReport(exchange_rho=1e-9, exchange_z=3e-8, reflection_x1=0.0, reflection_x2=2e-9)
    assert report.max_deviation == 3e-8


def test_check_result_passed():
    """Test the passed property."""
    assert CheckResult(scenario="period", check="x", status="pass").passed
    assert not CheckResult(scenario="period", check="x", status="fail").passed


def test_run_config_defaults():
    """Test RunConfig defaults."""
    cfg = RunConfig(scenario="filaments")
    assert cfg.tol == 1e-12
    assert cfg.model == "perturbed"
    assert cfg.svg is True


def test_run_config_epsilon():
    """Test epsilon outside (0, 1)."""
    with pytest.raises(ValidationError):
        RunConfig(scenario="filaments", epsilon=1.5)
