"""Pytest configuration and shared fixtures for all tests."""

from typing import List, Sequence

import numpy as np
import pandas as pd
import pytest

from leapfrog.config import config as run_config
from leapfrog.models import PhysicalParams


@pytest.fixture
def reference_params():
    """The reference leapfrogging pair: kappa = 0.4, eps = 0.05, lambda = 1."""
    return PhysicalParams(eps=0.05, kappa=0.4, lam=1.0)


@pytest.fixture(scope="module")
def reference_orbit():
    """Phase-parametrized orbit of the reference pair, shared within a module."""
    from leapfrog.contour import OrbitPhase

    return OrbitPhase.from_params(PhysicalParams(eps=0.05, kappa=0.4, lam=1.0), tol=1e-11)


@pytest.fixture
def rng():
    """Seeded generator for reproducible random inputs."""
    return np.random.default_rng(run_config.RANDOM_SEED)


@pytest.fixture
def sample_config_file(tmp_path):
    """A key=value run configuration with comments."""
    path = tmp_path / "run.cfg"
    path.write_text(
        "# reference pair\n"
        "scenario = filaments\n"
        "epsilon = 0.05\n"
        "kappa = 0.4   # mean position\n"
        "lambda = 1.0\n"
        "\n"
        "n_periods = 2\n"
    )
    return path


def pytest_configure(config):
    """Pytest configuration hook."""
    config.addinivalue_line(
        "markers", "slow: marks tests as slow (deselect with '-m \"not slow\"')"
    )
    config.addinivalue_line(
        "markers", "integration: marks tests as integration tests"
    )
    config.addinivalue_line(
        "markers", "e2e: marks tests as end-to-end tests"
    )
    config.addinivalue_line(
        "markers", "unit: marks tests as unit tests"
    )


# Custom assertions
def assert_ratio_in_window(errors: Sequence[float], lo: float, hi: float):
    """Assert consecutive error ratios (halving the parameter) lie in [lo, hi]."""
    ratios = [a / b for a, b in zip(errors[:-1], errors[1:])]
    for r in ratios:
        assert lo <= r <= hi, f"error ratio {r:.3f} outside [{lo}, {hi}] (ratios {ratios})"


def assert_dataframe_has_columns(df: pd.DataFrame, required_columns: List[str]):
    """Assert DataFrame has all required columns."""
    missing = set(required_columns) - set(df.columns)
    assert not missing, f"DataFrame missing required columns: {missing}"


# Pytest plugins
pytest_plugins = []
