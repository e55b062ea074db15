"""Pydantic models for leapfrog parameters, states and reports."""

import math
from dataclasses import dataclass
from pathlib import Path
from typing import Literal, Optional

import numpy as np
from pydantic import BaseModel, Field, field_validator, model_validator

EPS_MAX = math.exp(-1.0)


class HalfPlanePoint(BaseModel):
    """A point of the meridian half-plane, with rho = r**2 / 2 > 0."""

    rho: float = Field(gt=0, description="Half squared distance to the symmetry axis")
    z: float = Field(default=0.0, description="Axial coordinate")

    class Config:
        frozen = True

    def as_array(self) -> np.ndarray:
        return np.array([self.rho, self.z])


class PhysicalParams(BaseModel):
    """Core size, mean ring position and initial separation of a leapfrogging pair."""

    eps: float = Field(gt=0, lt=EPS_MAX, description="Vortex core size, |ln eps| > 1")
    kappa: float = Field(gt=0, description="Mean rho-position of the pair")
    lam: float = Field(gt=0, alias="lambda", description="Initial scaled half separation")

    class Config:
        frozen = True
        populate_by_name = True

    @property
    def log_eps(self) -> float:
        """|ln eps|."""
        return -math.log(self.eps)

    @property
    def r_eps(self) -> float:
        """Scaled separation unit (2 kappa)^(1/4) |ln eps|^(-1/2)."""
        return (2.0 * self.kappa) ** 0.25 / math.sqrt(self.log_eps)

    @property
    def alpha(self) -> float:
        """Orbit nonlinearity lambda**2 / (8 kappa)."""
        return self.lam**2 / (8.0 * self.kappa)


class FilamentPair(BaseModel):
    """Positions of the two point filaments in the half-plane."""

    P1: HalfPlanePoint
    P2: HalfPlanePoint

    class Config:
        frozen = True

    def as_array(self) -> np.ndarray:
        """State vector (p11, p12, p21, p22)."""
        return np.array([self.P1.rho, self.P1.z, self.P2.rho, self.P2.z])

    @classmethod
    def from_array(cls, state) -> "FilamentPair":
        p11, p12, p21, p22 = (float(v) for v in state)
        return cls(P1=HalfPlanePoint(rho=p11, z=p12), P2=HalfPlanePoint(rho=p21, z=p22))

    @property
    def separation(self) -> float:
        return math.hypot(self.P1.rho - self.P2.rho, self.P1.z - self.P2.z)


class ScaledState(BaseModel):
    """Scaled relative coordinates (x1, x2) of the pair."""

    x1: float
    x2: float

    def as_array(self) -> np.ndarray:
        return np.array([self.x1, self.x2])

    @property
    def radius2(self) -> float:
        return self.x1**2 + self.x2**2


class JSeriesCoeffs(BaseModel):
    """Small-s expansion J(s) = |ln s| sum A_n s^n + sum B_n s^n."""

    A: list[float]
    B: list[float]

    class Config:
        frozen = True


class ExpansionTable(BaseModel):
    """Coefficients of a near-diagonal expansion of G or of its gradient."""

    role: Literal["plain", "anisotropic", "gradient"]
    log_coeffs: list[float] | list[tuple[float, float]]
    reg_coeffs: list[float] | list[tuple[float, float]]

    @model_validator(mode="after")
    def check_lengths(self) -> "ExpansionTable":
        expected = (3, 3) if self.role == "gradient" else (4, 3)
        if (len(self.log_coeffs), len(self.reg_coeffs)) != expected:
            raise ValueError(f"{self.role} table needs {expected} coefficients")
        return self


class DiophantineParams(BaseModel):
    """Non-resonance exponents (nu, tau) and mode cut-off for the transport equation."""

    nu: float = Field(gt=0, le=1)
    tau: float = Field(gt=0)
    ncut: int = Field(default=64, ge=1)


class SecondDerivativeLimits(BaseModel):
    """Leading |ln eps| coefficients of three second derivatives of G."""

    d11: float = Field(description="d^2 G / d p11^2")
    d22: float = Field(description="d^2 G / d p12^2")
    d12: float = Field(description="d^2 G / d p11 d p12")
    P1: HalfPlanePoint
    P2: HalfPlanePoint


class SymmetryReport(BaseModel):
    """Maximal deviations from the half-period exchange and the time reversal."""

    exchange_rho: float
    exchange_z: float
    reflection_x1: float
    reflection_x2: float

    @property
    def max_deviation(self) -> float:
        return max(self.exchange_rho, self.exchange_z, self.reflection_x1, self.reflection_x2)


class IdentityCheck(BaseModel):
    """One disk integral evaluated by quadrature against its closed form."""

    name: str
    quadrature: float
    expected: float
    deviation: float
    required: bool = True


class TransportReport(BaseModel):
    """Outcome of the truncated transport-equation inversion."""

    residual: float
    cut_modes: list[tuple[int, int]]
    cut_norm: float
    diophantine: bool


class CoefficientSet(BaseModel):
    """Low-mode theta coefficients of the contour functional."""

    sin3: float
    cos2: float
    sin2: float
    cos1: float
    sin1: float


class TrivialStateProjection(BaseModel):
    """Measured and predicted low modes of F at f = V = 0."""

    phi: float
    eps: float
    measured: CoefficientSet
    predicted: CoefficientSet


class ZeroBracket(BaseModel):
    """A sign change of the non-resonance function and its refined root."""

    lo: float
    hi: float
    root: float


class CheckResult(BaseModel):
    """Outcome of one internal check of a command-line scenario."""

    scenario: str
    check: str
    status: Literal["pass", "fail"]
    detail: str = Field(default="", description="Measured value against its threshold")

    @property
    def passed(self) -> bool:
        return self.status == "pass"


class RunConfig(BaseModel):
    """Validated command-line run configuration."""

    scenario: Literal[
        "filaments", "period", "rings", "kernel-check", "spectral-check", "modeone", "divisors"
    ]
    epsilon: Optional[float] = None
    kappa: Optional[float] = None
    lam: Optional[float] = None
    lambda_min: Optional[float] = None
    lambda_max: Optional[float] = None
    kappa_min: Optional[float] = None
    kappa_max: Optional[float] = None
    n_lambda: int = Field(default=16, ge=2)
    n_kappa: int = Field(default=8, ge=2)
    n_periods: float = Field(default=3.0, gt=0)
    tol: float = Field(default=1e-12, gt=0, lt=1)
    model: Literal["limiting", "perturbed"] = "perturbed"
    output_dir: Path = Path("output")
    svg: bool = True
    seed: int = 42
    diophantine_nu: float = 0.5
    diophantine_tau: float = 1.5

    @field_validator("epsilon")
    @classmethod
    def epsilon_in_range(cls, v: Optional[float]) -> Optional[float]:
        if v is not None and not 0 < v < 1:
            raise ValueError("epsilon must lie in (0, 1)")
        return v


# Array-valued records


@dataclass(frozen=True)
class AuxFunctions:
    """Orbit-dependent coefficients sampled on a uniform phase grid."""

    phi: np.ndarray
    p11: np.ndarray
    f2: np.ndarray
    h2: np.ndarray
    g2: np.ndarray
    g3: np.ndarray
    q1: np.ndarray
    q2: np.ndarray
    q3: np.ndarray
    q4: np.ndarray
    b: np.ndarray
    alpha_check: np.ndarray
    h2_check: np.ndarray

    def at(self, index: int) -> dict[str, float]:
        """All coefficients at one grid index."""
        names = ("p11", "f2", "h2", "g2", "g3", "q1", "q2", "q3", "q4", "b")
        return {name: float(getattr(self, name)[index]) for name in names}
