"""Limiting-order analysis of the first Fourier mode.

On the limiting orbit y(phi) = x(T0 phi / (2 pi)) set
alpha = y1 y2 / |y|^4, h2 = (y1^2 - y2^2) / |y|^4, f3 = (T0 / pi) * int_0^phi alpha,
rho1 = rho3 = exp(-f3) and rho2 = T0^2 h2 exp(2 f3) / (64 pi^2 kappa).
The operator T[g] = rho1 int_0^phi rho2 int_0^t rho3 g and the scalar
P = 1 + int_0^pi rho2 int_0^t rho3 (Id - T)^-1[rho1] decide whether the
mode-one problem can be solved.
"""

import logging
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Mapping

import numpy as np
import scipy.linalg

from .config import config
from .errors import DomainError, SolverError
from .filaments import limiting_orbit, period_T0
from .models import ZeroBracket
from .quadrature import cumulative_matrix

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CoefficientTriple:
    """rho1, rho2, rho3 sampled on phi_k = 2 pi k / n, k = 0..n (endpoint included)."""

    phi: np.ndarray
    rho1: np.ndarray
    rho2: np.ndarray
    rho3: np.ndarray

    def __post_init__(self):
        n = self.phi.size
        if n < 513 or (n - 1) % 2:
            raise DomainError("phi grid needs an even number of intervals and at least 512 of them")
        if not all(r.shape == self.phi.shape for r in (self.rho1, self.rho2, self.rho3)):
            raise DomainError("coefficients must share the phi grid")

    @property
    def dx(self) -> float:
        return float(self.phi[1] - self.phi[0])

    @property
    def half(self) -> int:
        """Grid index of phi = pi."""
        return (self.phi.size - 1) // 2

    @classmethod
    def constant(cls, c1: float, c2: float, c3: float, n: int = 1024) -> "CoefficientTriple":
        phi = np.linspace(0.0, 2.0 * np.pi, n + 1)
        one = np.ones_like(phi)
        return cls(phi, c1 * one, c2 * one, c3 * one)

    def scaled(self, rho2_scale: float) -> "CoefficientTriple":
        return CoefficientTriple(self.phi, self.rho1, rho2_scale * self.rho2, self.rho3)

    def star_defect(self) -> float:
        """max_j max_phi |rho_j(phi + pi) - rho_j(phi)|."""
        h = self.half
        return max(float(np.max(np.abs(r[h:] - r[: h + 1]))) for r in (self.rho1, self.rho2, self.rho3))


@dataclass(frozen=True)
class StarEvenFunction:
    """Even 2 pi-periodic samples with g(phi + pi) = -g(phi): odd cosine modes only."""

    phi: np.ndarray
    values: np.ndarray

    @classmethod
    def from_coefficients(cls, coeffs: Mapping[int, float], phi: np.ndarray) -> "StarEvenFunction":
        """sum_n a_n cos((2n + 1) phi)."""
        values = sum(a * np.cos((2 * n + 1) * phi) for n, a in coeffs.items())
        return cls(phi, np.asarray(values, dtype=float) * np.ones_like(phi))

    def support_defect(self) -> float:
        """Largest Fourier coefficient outside the odd cosine modes."""
        samples = self.values[:-1]
        c = np.fft.rfft(samples) / samples.size
        bad = np.abs(c.imag).max(initial=0.0)
        bad = max(bad, float(np.abs(c.real[0::2]).max(initial=0.0)))
        return float(bad)


def _values(g) -> np.ndarray:
    return g.values if isinstance(g, StarEvenFunction) else np.asarray(g, dtype=float)


@lru_cache(maxsize=8)
def _cumulative(n: int, dx: float) -> np.ndarray:
    return cumulative_matrix(n, dx)


def _C(coeffs: CoefficientTriple) -> np.ndarray:
    return _cumulative(coeffs.phi.size, coeffs.dx)


# Coefficients from the limiting orbit


def limiting_profiles(lam: float, kappa: float, n_phi: int | None = None):
    """alpha_check, h2_check and f3 on the phase grid of the limiting orbit.

    Returns:
        (phi, alpha_check, h2_check, f3, T0)
    """
    n = n_phi or config.PHI_POINTS
    T0 = period_T0(lam, kappa)
    phi = np.linspace(0.0, 2.0 * np.pi, n + 1)
    y = limiting_orbit(lam, kappa, phi)
    y1, y2 = y[:, 0], y[:, 1]
    r4 = (y1**2 + y2**2) ** 2
    alpha = y1 * y2 / r4
    h2 = (y1**2 - y2**2) / r4

    # spectral primitive of the periodic alpha
    a = np.fft.fft(alpha[:-1]) / n
    k = np.fft.fftfreq(n, 1.0 / n)
    safe_k = np.where(k == 0, 1.0, k)
    prim = np.where(k == 0, 0.0, a / (1j * safe_k))
    primitive = (np.exp(1j * np.outer(phi, k)) - 1.0) @ prim + a[0].real * phi
    f3 = T0 / np.pi * primitive.real
    return phi, alpha, h2, f3, T0


@lru_cache(maxsize=32)
def build_coefficients(lam: float, kappa: float, n_phi: int | None = None) -> CoefficientTriple:
    """Coefficient triple of the mode-one operators on the limiting orbit."""
    if lam <= 0 or kappa <= 0:
        raise DomainError("lambda and kappa must be positive")
    phi, _, h2, f3, T0 = limiting_profiles(lam, kappa, n_phi)
    rho1 = np.exp(-f3)
    rho2 = T0**2 * h2 * np.exp(2.0 * f3) / (64.0 * np.pi**2 * kappa)
    coeffs = CoefficientTriple(phi, rho1, rho2, rho1.copy())
    logger.debug("coefficients for lambda=%g kappa=%g, star defect %.2e", lam, kappa, coeffs.star_defect())
    return coeffs


# Operators


def _inner(g: np.ndarray, coeffs: CoefficientTriple) -> np.ndarray:
    """int_0^phi rho2 int_0^t rho3 g."""
    C = _C(coeffs)
    return C @ (coeffs.rho2 * (C @ (coeffs.rho3 * g)))


def apply_T(g, coeffs: CoefficientTriple) -> np.ndarray:
    """T[g](phi) = rho1(phi) int_0^phi rho2(t) int_0^t rho3(s) g(s) ds dt."""
    return coeffs.rho1 * _inner(_values(g), coeffs)


def b_correction(g, coeffs: CoefficientTriple) -> float:
    """Constant b = -1/2 int_0^pi rho2 int_0^t rho3 g making P[g] star-compatible."""
    return -0.5 * float(_inner(_values(g), coeffs)[coeffs.half])


def apply_P(g, coeffs: CoefficientTriple) -> np.ndarray:
    """P[g] = rho1 (b + int_0^phi rho2 int_0^t rho3 g) with b from b_correction."""
    values = _values(g)
    return coeffs.rho1 * (b_correction(values, coeffs) + _inner(values, coeffs))


def t_matrix(coeffs: CoefficientTriple) -> np.ndarray:
    """Nystrom matrix of T on the phi grid."""
    C = _C(coeffs)
    return coeffs.rho1[:, None] * (C * coeffs.rho2[None, :]) @ (C * coeffs.rho3[None, :])


def invert_IminusT(rhs, coeffs: CoefficientTriple) -> tuple[np.ndarray, float]:
    """Solve (Id - T) u = rhs by a dense Nystrom solve.

    Returns:
        (u, sup-norm residual of u - T u - rhs)
    """
    b = _values(rhs)
    A = np.eye(b.size) - t_matrix(coeffs)
    cond = np.linalg.cond(A, 1)
    if not np.isfinite(cond) or cond > 1e12:
        logger.warning("Id - T is ill-conditioned (cond=%.3g)", cond)
        raise SolverError(f"Id - T condition number {cond:.3g} exceeds 1e12")
    u = scipy.linalg.solve(A, b)
    residual = float(np.max(np.abs(u - apply_T(u, coeffs) - b)))
    return u, residual


def neumann_inverse(rhs, coeffs: CoefficientTriple, K: int = 20) -> np.ndarray:
    """Partial sum sum_{k <= K} T^k rhs."""
    term = _values(rhs).copy()
    total = term.copy()
    for _ in range(K):
        term = apply_T(term, coeffs)
        total += term
    return total


# Non-resonance


def nonresonance_from_coefficients(coeffs: CoefficientTriple, K: int | None = None) -> float:
    """1 + int_0^pi rho2 int_0^t rho3 (Id - T)^-1[rho1], or its Neumann truncation when K is given."""
    if K is None:
        u, _ = invert_IminusT(coeffs.rho1, coeffs)
    else:
        u = neumann_inverse(coeffs.rho1, coeffs, K)
    return 1.0 + float(_inner(u, coeffs)[coeffs.half])


def nonresonance_P(lam: float, kappa: float, rho2_scale: float = 1.0, n_phi: int | None = None) -> float:
    """Non-resonance function P(lambda, kappa)."""
    coeffs = build_coefficients(lam, kappa, n_phi)
    if rho2_scale != 1.0:
        coeffs = coeffs.scaled(rho2_scale)
    return nonresonance_from_coefficients(coeffs)


def solvability_constant(lam: float, kappa: float, n_phi: int | None = None) -> float:
    """The 2 + int ... variant of the invertibility constant, reported alongside P."""
    return nonresonance_P(lam, kappa, n_phi=n_phi) + 1.0


def bounds(lam: float, kappa: float) -> dict[str, float]:
    """Explicit sup-bounds on rho_j^(+-1), the norm of T and |P - 1|."""
    e = math.exp(lam**2 / (16.0 * kappa))
    growth = math.pi**2 * math.exp(9.0 * math.pi * e)
    return {
        "rho_sup": math.exp(2.0 * math.pi * e),
        "T_norm": growth * lam**2 / (16.0 * kappa),
        "P_minus_1": growth * lam**2 / (8.0 * kappa),
    }


def scan_zeros(
    kappa: float,
    lambda_range: tuple[float, float],
    n_points: int,
    p_func: Callable[[float], float] | None = None,
    width: float = 1e-6,
) -> list[ZeroBracket]:
    """Sign changes of P(., kappa) on a uniform grid, each narrowed by bisection to `width`."""
    lo, hi = lambda_range
    if not 0 < lo < hi or n_points < 2:
        raise DomainError("need 0 < lambda_min < lambda_max and n_points >= 2")
    func = p_func or (lambda lam: nonresonance_P(lam, kappa))
    grid = np.linspace(lo, hi, n_points)
    values = [func(x) for x in grid]
    brackets = []
    for a, b, fa, fb in zip(grid[:-1], grid[1:], values[:-1], values[1:]):
        if fa == 0 or np.sign(fa) == np.sign(fb):
            continue
        while b - a > width:
            mid = 0.5 * (a + b)
            fm = func(mid)
            if np.sign(fm) == np.sign(fa):
                a, fa = mid, fm
            else:
                b = mid
        brackets.append(ZeroBracket(lo=float(a), hi=float(b), root=float(0.5 * (a + b))))
    logger.debug("scan over [%g, %g] found %d sign changes", lo, hi, len(brackets))
    return brackets
