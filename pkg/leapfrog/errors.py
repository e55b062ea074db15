"""Exception hierarchy shared by the numerical modules and the CLI."""

from typing import Any


class LeapfrogError(Exception):
    """Base class for every error raised by the package."""


class DomainError(LeapfrogError, ValueError):
    """An argument lies outside the domain of an operation."""


class SingularityError(DomainError):
    """Coincident points, or a state at the singular origin."""


class DegenerateConfigurationError(DomainError):
    """Kernel expansion requested where D = 0."""


class ShapeError(DomainError):
    """A ring shape with 1 + 2*eps*f <= 0 somewhere on the grid."""


class UsageError(LeapfrogError, ValueError):
    """Invalid run configuration. ``key`` names the offending entry."""

    def __init__(self, message: str, key: str | None = None):
        super().__init__(message)
        self.key = key


class IntegrationError(LeapfrogError, RuntimeError):
    """The ODE integrator stopped before reaching the requested time."""

    def __init__(self, message: str, last_time: float | None = None, last_state: Any = None):
        super().__init__(message)
        self.last_time = last_time
        self.last_state = last_state


class NonPeriodicError(IntegrationError):
    """No return to the Poincare section within the search horizon."""


class QuadratureError(LeapfrogError, RuntimeError):
    """Quadrature refinement did not reach the requested tolerance."""


class SolverError(LeapfrogError, RuntimeError):
    """Linear system too ill-conditioned to be trusted."""
