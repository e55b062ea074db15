"""The special function J(s) behind the axisymmetric Green's function.

J(s) is the integral over [0, pi] of cos(theta) / sqrt(s + 2 - 2 cos(theta)).
It is log-singular at s = 0 and decays like (pi / 2) s^(-3/2) at infinity.
"""

import logging
import math
from functools import lru_cache

import numpy as np
from scipy.integrate import quad

from .config import config
from .errors import DomainError
from .models import JSeriesCoeffs
from .quadrature import composite_rule, integrate_doubling

logger = logging.getLogger(__name__)

LN8 = math.log(8.0)

J_SERIES = JSeriesCoeffs(
    A=[1.0 / 2.0, 3.0 / 32.0, -15.0 / 2048.0, 105.0 / 98304.0],
    B=[LN8 - 2.0, -1.0 / 16.0 + 3.0 / 16.0 * LN8, 31.0 / 2048.0 - 15.0 / 1024.0 * LN8],
)

# Below this s the truncated series is exact to double precision.
SERIES_CUTOFF = 1e-6
TABLE_MAX = 64.0


def _check_s(s: float) -> float:
    s = float(s)
    if not s > 0 or not math.isfinite(s):
        raise DomainError(f"J(s) needs s > 0, got {s}")
    return s


def _theta_of(v: np.ndarray, s: float) -> np.ndarray:
    return math.sqrt(s) * np.sinh(v)


def _j_integrand(v: np.ndarray, s: float) -> np.ndarray:
    """J integrand after theta = sqrt(s) sinh(v), written without cancellation."""
    theta = _theta_of(v, s)
    c = np.cos(theta)
    a = s + 4.0 * np.sin(0.5 * theta) ** 2
    b = s + 2.0
    sa, sb = np.sqrt(a), math.sqrt(b)
    return 2.0 * c * c / (sa * sb * (sa + sb)) * np.sqrt(s + theta * theta)


def _j_prime_integrand(v: np.ndarray, s: float) -> np.ndarray:
    theta = _theta_of(v, s)
    c = np.cos(theta)
    a = s + 4.0 * np.sin(0.5 * theta) ** 2
    b = s + 2.0
    sa, sb = np.sqrt(a), math.sqrt(b)
    num = c * c * (a + sa * sb + b)
    den = (sa + sb) * a * sa * b * sb
    return -num / den * np.sqrt(s + theta * theta)


def eval_J(s: float, tol: float | None = None) -> float:
    """Evaluate J(s) by composite Gauss-Legendre quadrature with panel doubling.

    Args:
        s: Argument, s > 0
        tol: Relative agreement between successive refinements

    Returns:
        J(s)
    """
    s = _check_s(s)
    tol = config.J_TOL if tol is None else tol
    upper = math.asinh(math.pi / math.sqrt(s))
    return integrate_doubling(lambda v: _j_integrand(v, s), 0.0, upper, tol)


def eval_J_prime(s: float, tol: float | None = None) -> float:
    """Evaluate dJ/ds by the same quadrature as eval_J."""
    s = _check_s(s)
    tol = config.J_TOL if tol is None else tol
    upper = math.asinh(math.pi / math.sqrt(s))
    return integrate_doubling(lambda v: _j_prime_integrand(v, s), 0.0, upper, tol)


def eval_J_series(s: float, n_max: int = 3) -> float:
    """Truncated small-s expansion of J.

    Log coefficients are used up to n_max (at most 3), regular ones up to
    min(n_max, 2).
    """
    s = _check_s(s)
    if s >= 4.0:
        raise DomainError(f"series needs s < 4, got {s}")
    if not 0 <= n_max <= 3:
        raise DomainError("n_max must lie in 0..3")
    log_s = abs(math.log(s))
    log_part = sum(a * s**n for n, a in enumerate(J_SERIES.A[: n_max + 1]))
    reg_part = sum(b * s**n for n, b in enumerate(J_SERIES.B[: min(n_max, 2) + 1]))
    return log_s * log_part + reg_part


def _series_array(s: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Series value and derivative for s < 1."""
    log_s = -np.log(s)
    A, B = J_SERIES.A, J_SERIES.B
    pa = sum(a * s**n for n, a in enumerate(A))
    dpa = sum(n * a * s ** (n - 1) for n, a in enumerate(A) if n)
    pb = sum(b * s**n for n, b in enumerate(B))
    dpb = sum(n * b * s ** (n - 1) for n, b in enumerate(B) if n)
    return log_s * pa + pb, -pa / s + log_s * dpa + dpb


def legendre_Q_half(x: float) -> float:
    """Legendre function of the second kind Q_{1/2}(x) for x > 1, by adaptive quadrature.

    Independent of eval_J; J(s) = Q_{1/2}(s / 2 + 1).
    """
    x = float(x)
    if not x > 1:
        raise DomainError(f"Q_1/2(x) needs x > 1, got {x}")

    def integrand(theta: float) -> float:
        return math.cos(theta) / math.sqrt(2.0 * (x - 1.0) + 4.0 * math.sin(0.5 * theta) ** 2)

    breaks = sorted({min(math.sqrt(x - 1.0) * k, math.pi / 2) for k in (1.0, 10.0)})
    value, _ = quad(integrand, 0.0, math.pi, points=breaks, epsabs=1e-15, epsrel=1e-13, limit=500)
    return value


def check_J_ode(s: float, h: float | None = None, tol: float | None = None) -> float:
    """Residual of the Legendre-type ODE s(s+4)J'' + 2(s+2)J' - (3/4)J = 0.

    Derivatives are central differences of eval_J with step h, which
    defaults to max(1e-4, 1e-3 s).
    """
    s = _check_s(s)
    h = max(1e-4, 1e-3 * s) if h is None else h
    if h >= s:
        raise DomainError("finite-difference step must be smaller than s")
    jm, j0, jp = (eval_J(s + k * h, tol) for k in (-1.0, 0.0, 1.0))
    d1 = (jp - jm) / (2.0 * h)
    d2 = (jp - 2.0 * j0 + jm) / (h * h)
    return abs(s * (s + 4.0) * d2 + 2.0 * (s + 2.0) * d1 - 0.75 * j0)


# Vectorized evaluation used by grid quadratures


_TABLE_PANELS = 20
_TABLE_DEGREE = 24


@lru_cache(maxsize=1)
def _chebyshev_table() -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Piecewise Chebyshev interpolant of J in u = ln s on [SERIES_CUTOFF, TABLE_MAX]."""
    lo, hi = math.log(SERIES_CUTOFF), math.log(TABLE_MAX)
    edges = np.linspace(lo, hi, _TABLE_PANELS + 1)
    k = np.arange(_TABLE_DEGREE + 1)
    x = np.cos(np.pi * (k + 0.5) / (_TABLE_DEGREE + 1))
    coeffs = np.empty((_TABLE_PANELS, _TABLE_DEGREE + 1))
    for i in range(_TABLE_PANELS):
        mid, half = 0.5 * (edges[i] + edges[i + 1]), 0.5 * (edges[i + 1] - edges[i])
        values = np.array([eval_J(math.exp(mid + half * xi), tol=1e-14) for xi in x])
        coeffs[i] = np.polynomial.chebyshev.chebfit(x, values, _TABLE_DEGREE)
    logger.debug("built J table with %d panels", _TABLE_PANELS)
    return edges, coeffs, np.array([np.polynomial.chebyshev.chebder(c) for c in coeffs])


def _table_eval(s: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    edges, coeffs, dcoeffs = _chebyshev_table()
    u = np.log(s)
    idx = np.clip(np.searchsorted(edges, u) - 1, 0, _TABLE_PANELS - 1)
    half = 0.5 * (edges[1] - edges[0])
    x = (u - 0.5 * (edges[idx] + edges[idx + 1])) / half
    c = coeffs[idx]
    dc = dcoeffs[idx]
    # Clenshaw recurrence, one coefficient row per point
    b1 = np.zeros_like(x)
    b2 = np.zeros_like(x)
    for k in range(_TABLE_DEGREE, 0, -1):
        b1, b2 = 2.0 * x * b1 - b2 + c[:, k], b1
    value = x * b1 - b2 + c[:, 0]
    b1 = np.zeros_like(x)
    b2 = np.zeros_like(x)
    for k in range(_TABLE_DEGREE - 1, 0, -1):
        b1, b2 = 2.0 * x * b1 - b2 + dc[:, k], b1
    dvalue_dx = x * b1 - b2 + dc[:, 0]
    return value, dvalue_dx / half / s


def _far_eval(s: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    upper = np.arcsinh(np.pi / np.sqrt(s))
    v01, w01 = composite_rule(0.0, 1.0, 4, 16)
    v = upper[:, None] * v01[None, :]
    w = upper[:, None] * w01[None, :]
    vals = np.empty_like(s)
    ders = np.empty_like(s)
    for i, si in enumerate(s):
        vals[i] = np.dot(w[i], _j_integrand(v[i], si))
        ders[i] = np.dot(w[i], _j_prime_integrand(v[i], si))
    return vals, ders


def eval_J_array(s: np.ndarray, derivative: bool = False):
    """Vectorized J (and optionally J') for grid quadratures.

    Uses the series below SERIES_CUTOFF, a Chebyshev table built from eval_J
    up to TABLE_MAX, and a fixed Gauss rule beyond.
    """
    s = np.asarray(s, dtype=float)
    if np.any(~(s > 0)):
        raise DomainError("J(s) needs s > 0")
    flat = s.ravel()
    value = np.empty_like(flat)
    deriv = np.empty_like(flat)
    for mask, evaluator in (
        (flat < SERIES_CUTOFF, _series_array),
        ((flat >= SERIES_CUTOFF) & (flat <= TABLE_MAX), _table_eval),
        (flat > TABLE_MAX, _far_eval),
    ):
        if np.any(mask):
            value[mask], deriv[mask] = evaluator(flat[mask])
    if derivative:
        return value.reshape(s.shape), deriv.reshape(s.shape)
    return value.reshape(s.shape)
