"""Configuration management for leapfrog runs."""

import os
from pathlib import Path

from dotenv import load_dotenv

# Load environment variables
load_dotenv()


class Config:
    """Application configuration."""

    # Parallelism
    THREADS: int = int(os.getenv("LEAPFROG_THREADS", str(os.cpu_count() or 1)))

    # Paths
    PROJECT_ROOT: Path = Path(__file__).parent.parent
    OUTPUT_DIR: Path = PROJECT_ROOT / os.getenv("LEAPFROG_OUTPUT_DIR", "output")

    # Integrator tolerances
    RTOL: float = float(os.getenv("LEAPFROG_RTOL", "1e-12"))
    ATOL: float = float(os.getenv("LEAPFROG_ATOL", "1e-14"))
    ODE_METHOD: str = os.getenv("LEAPFROG_ODE_METHOD", "RK45")

    # Quadrature
    J_TOL: float = float(os.getenv("LEAPFROG_J_TOL", "1e-12"))
    THETA_POINTS: int = int(os.getenv("LEAPFROG_THETA_POINTS", "64"))
    PHI_POINTS: int = int(os.getenv("LEAPFROG_PHI_POINTS", "1024"))
    ORBIT_POINTS: int = int(os.getenv("LEAPFROG_ORBIT_POINTS", "256"))
    SELF_RESOLUTION: int = int(os.getenv("LEAPFROG_SELF_RESOLUTION", "20"))

    # Sampling
    RANDOM_SEED: int = int(os.getenv("LEAPFROG_SEED", "42"))

    # Logging
    LOG_LEVEL: str = os.getenv("LEAPFROG_LOG_LEVEL", "WARNING")

    @classmethod
    def ensure_dirs(cls) -> None:
        """Create necessary directories if they don't exist."""
        cls.OUTPUT_DIR.mkdir(parents=True, exist_ok=True)


config = Config()
