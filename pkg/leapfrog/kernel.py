"""The axisymmetric Green's function G on the meridian half-plane and its expansions.

G(p, q) = (rho rho')^(1/4) J(s) with
s = (2 (sqrt(rho) - sqrt(rho'))^2 + (z - z')^2) / (2 sqrt(rho rho')).
"""

import logging
import math
from typing import Literal, Sequence

import numpy as np
from pydantic import ValidationError

from .errors import DegenerateConfigurationError, DomainError, SingularityError
from .models import ExpansionTable, HalfPlanePoint, SecondDerivativeLimits
from .specfun import LN8, eval_J, eval_J_array, eval_J_prime

logger = logging.getLogger(__name__)

PointLike = HalfPlanePoint | Sequence[float] | np.ndarray
Variant = Literal["plain", "anisotropic"]


def as_point(p: PointLike) -> tuple[float, float]:
    """Coerce a point to (rho, z), rejecting rho <= 0."""
    if isinstance(p, HalfPlanePoint):
        return p.rho, p.z
    try:
        point = HalfPlanePoint(rho=float(p[0]), z=float(p[1]))
    except ValidationError as e:
        raise DomainError(f"point {tuple(p)} is not in the half-plane rho > 0") from e
    return point.rho, point.z


def s_argument(r1, z1, r2, z2):
    """The J argument s for two points; works on scalars and arrays."""
    sqrt_prod = np.sqrt(r1 * r2)
    d_sqrt2 = (r1 - r2) ** 2 / (np.sqrt(r1) + np.sqrt(r2)) ** 2
    return (2.0 * d_sqrt2 + (z1 - z2) ** 2) / (2.0 * sqrt_prod)


def _checked_pair(p: PointLike, q: PointLike) -> tuple[float, float, float, float]:
    r1, z1 = as_point(p)
    r2, z2 = as_point(q)
    if r1 == r2 and z1 == z2:
        raise SingularityError(f"G is singular at coincident points ({r1}, {z1})")
    return r1, z1, r2, z2


def eval_G(p: PointLike, q: PointLike, tol: float | None = None) -> float:
    """Evaluate G(p, q) for distinct points of the half-plane."""
    r1, z1, r2, z2 = _checked_pair(p, q)
    s = float(s_argument(r1, z1, r2, z2))
    return (r1 * r2) ** 0.25 * eval_J(s, tol)


def green_array(r1, z1, r2, z2) -> np.ndarray:
    """Vectorized G for quadrature grids, through the tabulated J."""
    s = s_argument(r1, z1, r2, z2)
    return (r1 * r2) ** 0.25 * eval_J_array(s)


def green_and_gradients(p: PointLike, q: PointLike, tol: float | None = None):
    """G(p, q) together with its gradients in p and in q.

    Returns:
        (G, grad_p, grad_q), gradients as arrays (d/drho, d/dz)
    """
    r1, z1, r2, z2 = _checked_pair(p, q)
    s = float(s_argument(r1, z1, r2, z2))
    j, dj = eval_J(s, tol), eval_J_prime(s, tol)
    scale = (r1 * r2) ** 0.25
    g = scale * j
    d_sqrt = (r1 - r2) / (math.sqrt(r1) + math.sqrt(r2))
    root = math.sqrt(r1 * r2)
    ds_r1 = d_sqrt / (r1 * math.sqrt(r2)) - s / (2.0 * r1)
    ds_r2 = -d_sqrt / (r2 * math.sqrt(r1)) - s / (2.0 * r2)
    ds_z1 = (z1 - z2) / root
    grad_p = np.array([g / (4.0 * r1) + scale * dj * ds_r1, scale * dj * ds_z1])
    grad_q = np.array([g / (4.0 * r2) + scale * dj * ds_r2, -scale * dj * ds_z1])
    return g, grad_p, grad_q


def grad_G(p: PointLike, q: PointLike, which: Literal["first", "second"] = "first") -> np.ndarray:
    """Gradient of G in its first or second argument."""
    _, grad_p, grad_q = green_and_gradients(p, q)
    return grad_p if which == "first" else grad_q


def check_harmonic(p: PointLike, q: PointLike, h: float) -> float:
    """Residual of 2 rho G_rhorho + G_zz at p, by central differences of step h."""
    r1, z1, r2, z2 = _checked_pair(p, q)
    if h <= 0 or h >= r1:
        raise DomainError("step must satisfy 0 < h < rho")
    g0 = eval_G((r1, z1), (r2, z2))
    g_rr = (eval_G((r1 + h, z1), (r2, z2)) - 2.0 * g0 + eval_G((r1 - h, z1), (r2, z2))) / h**2
    g_zz = (eval_G((r1, z1 + h), (r2, z2)) - 2.0 * g0 + eval_G((r1, z1 - h), (r2, z2))) / h**2
    return abs(2.0 * r1 * g_rr + g_zz)


def _hessian_differences(base: np.ndarray, h: float) -> np.ndarray:
    hess = np.empty((4, 4))
    for k in range(4):
        step = np.zeros(4)
        step[k] = h
        _, gp_plus, gq_plus = green_and_gradients((base + step)[:2], (base + step)[2:])
        _, gp_minus, gq_minus = green_and_gradients((base - step)[:2], (base - step)[2:])
        plus = np.concatenate([gp_plus, gq_plus])
        minus = np.concatenate([gp_minus, gq_minus])
        hess[:, k] = (plus - minus) / (2.0 * h)
    return hess


def hessian_G(P1: PointLike, P2: PointLike, h: float | None = None, richardson: bool = False) -> np.ndarray:
    """Second derivatives of G in (p11, p12, p21, p22), by differencing the exact gradient.

    With richardson=True the steps h and h/2 are combined to cancel the
    O(h^2) term of the central differences.
    """
    base = np.array([*as_point(P1), *as_point(P2)])
    if h is None:
        h = 1e-4 * max(math.hypot(base[0] - base[2], base[1] - base[3]), 1e-6)
    hess = _hessian_differences(base, h)
    if richardson:
        hess = (4.0 * _hessian_differences(base, 0.5 * h) - hess) / 3.0
    return 0.5 * (hess + hess.T)


# Near-diagonal expansions


def _plain_coefficients(z1: float, X, Y) -> tuple[list[float], list[float]]:
    x1, x2 = float(X[0]), float(X[1])
    y1, y2 = float(Y[0]), float(Y[1])
    d1, d2 = x1 - y1, x2 - y2
    D = d1**2 + 2.0 * z1 * d2**2
    if D == 0:
        raise DegenerateConfigurationError("expansion undefined for D = 0")
    E = d1**2 + z1 * d2**2
    P0 = D / (2.0 * z1) ** 2
    lnP0 = math.log(P0)
    rz = math.sqrt(z1)
    sx = x1 + y1

    A = [
        rz,
        sx / (4.0 * rz),
        (6.0 * z1 * d2**2 - 2.0 * x1 * y1 - 3.0 * x1**2 - 3.0 * y1**2) / (64.0 * z1**1.5),
        sx * (5.0 * x1**2 - 2.0 * x1 * y1 + 5.0 * y1**2 - 6.0 * z1 * d2**2) / (256.0 * z1**2.5),
    ]
    c0 = LN8 - 2.0 - 0.5 * lnP0
    quartic = (
        15.0 * x1**4
        - 12.0 * x1**3 * y1
        - 6.0 * x1**2 * y1**2
        - 12.0 * x1 * y1**3
        + 15.0 * y1**4
        + 4.0 * z1 * d2**2 * (3.0 * x1**2 + 2.0 * x1 * y1 + 3.0 * y1**2)
    )
    B = [
        rz * c0,
        sx / (4.0 * rz) * c0 + sx / (2.0 * rz) * E / D,
        (x1 * y1 - 1.5 * x1**2 - 1.5 * y1**2) / (16.0 * z1**1.5) * c0
        + sx**2 / (8.0 * z1**1.5) * E / D
        + (3.0 * LN8 - 1.0) / 16.0 * rz * P0
        + sx**2 / (4.0 * z1**1.5) * (E / D) ** 2
        - 3.0 / 32.0 * rz * P0 * lnP0
        - quartic / (32.0 * z1**1.5 * D),
    ]
    return A, B


def _anisotropic_map(z1: float, X) -> tuple[float, float]:
    """Scaled displacement ((2 z1)^(1/4) x1, (2 z1)^(-1/4) x2)."""
    k = (2.0 * z1) ** 0.25
    return k * float(X[0]), float(X[1]) / k


def expansion_table(Z: PointLike, X, Y, variant: Variant = "plain") -> ExpansionTable:
    """Coefficients of G(Z + eps X, Z + eps Y) = ln(1/eps) sum A_n eps^n + sum B_n eps^n.

    For the anisotropic variant the displacements are first scaled by
    ((2 z1)^(1/4), (2 z1)^(-1/4)).
    """
    z1, _ = as_point(Z)
    if variant == "anisotropic":
        X, Y = _anisotropic_map(z1, X), _anisotropic_map(z1, Y)
    A, B = _plain_coefficients(z1, X, Y)
    return ExpansionTable(role=variant, log_coeffs=A, reg_coeffs=B)


def expansion_points(Z: PointLike, X, Y, eps: float, variant: Variant = "plain"):
    """The two physical points at which an expansion approximates G."""
    z1, z2 = as_point(Z)
    if variant == "anisotropic":
        X, Y = _anisotropic_map(z1, X), _anisotropic_map(z1, Y)
    return (z1 + eps * X[0], z2 + eps * X[1]), (z1 + eps * Y[0], z2 + eps * Y[1])


def expand_G(Z: PointLike, X, Y, eps: float, variant: Variant = "plain") -> float:
    """Evaluate the near-diagonal expansion of G, accurate to O(eps^3)."""
    if not 0 < eps < 1:
        raise DomainError("eps must lie in (0, 1)")
    table = expansion_table(Z, X, Y, variant)
    log_term = sum(a * eps**n for n, a in enumerate(table.log_coeffs))
    reg_term = sum(b * eps**n for n, b in enumerate(table.reg_coeffs))
    return -math.log(eps) * log_term + reg_term


def expand_G_plain(Z: PointLike, X, Y, eps: float) -> float:
    """G(Z + eps X, Z + eps Y) to O(eps^3)."""
    return expand_G(Z, X, Y, eps, "plain")


def expand_G_anisotropic(Z: PointLike, X, Y, eps: float) -> float:
    """G at Z + eps((2 z1)^(1/4) X1, (2 z1)^(-1/4) X2) and likewise for Y, to O(eps^3)."""
    return expand_G(Z, X, Y, eps, "anisotropic")


def gradient_table(Z: PointLike, X, Y, h: float = 1e-5) -> ExpansionTable:
    """Coefficients C_1..C_3 and D_0..D_2 of the first-argument gradient expansion.

    D_2 is the scaled gradient of the anisotropic B_2, by central differences.
    """
    z1, _ = as_point(Z)
    x1, x2 = float(X[0]), float(X[1])
    y1, y2 = float(Y[0]), float(Y[1])
    d1, d2 = x1 - y1, x2 - y2
    R = d1**2 + d2**2
    if R == 0:
        raise DegenerateConfigurationError("gradient expansion undefined for X = Y")
    k = (2.0 * z1) ** 0.25
    rz = math.sqrt(z1)
    sx = x1 + y1

    C = [
        (1.0 / (4.0 * rz), 0.0),
        (-k * (y1 + 3.0 * x1) / (32.0 * z1**1.5), 3.0 * k**3 * d2 / (32.0 * z1**1.5)),
        (
            math.sqrt(2.0) * (15.0 * x1**2 + 6.0 * x1 * y1 + 3.0 * y1**2 - 3.0 * d2**2) / (256.0 * z1**2),
            -6.0 * math.sqrt(2.0) * k**2 * sx * d2 / (256.0 * z1**2),
        ),
    ]
    log_bracket = 1.25 * LN8 + 0.75 * math.log(z1) - 1.0 - 0.5 * math.log(R)
    D0 = (-rz * d1 / (k * R), -rz * k * d2 / R)
    D1 = (
        (log_bracket + (d1**2 + sx * d1) / R - 2.0 * sx * d1**3 / R**2) / (4.0 * rz),
        math.sqrt(2.0) / 4.0 * sx * (-d2 / R - 2.0 * d1**2 * d2 / R**2),
    )

    def b2(x_1: float, x_2: float) -> float:
        return expansion_table(Z, (x_1, x_2), Y, "anisotropic").reg_coeffs[2]

    hx = h * max(1.0, abs(x1))
    hy = h * max(1.0, abs(x2))
    D2 = (
        (b2(x1 + hx, x2) - b2(x1 - hx, x2)) / (2.0 * hx) / k,
        (b2(x1, x2 + hy) - b2(x1, x2 - hy)) / (2.0 * hy) * k,
    )
    return ExpansionTable(role="gradient", log_coeffs=C, reg_coeffs=[D0, D1, D2])


def expand_grad_G(
    Z: PointLike, X, Y, eps: float, which: Literal["first", "second"] = "first"
) -> np.ndarray:
    """Expansion of the gradient of G at the anisotropically scaled points.

    |ln eps| sum_{n=1..3} eps^(n-1) C_n + sum_{n=0..2} eps^(n-1) D_n,
    accurate to O(eps^2 |ln eps|). The second-argument gradient swaps X and Y.
    """
    if not 0 < eps < 1:
        raise DomainError("eps must lie in (0, 1)")
    if which == "second":
        X, Y = Y, X
    table = gradient_table(Z, X, Y)
    out = np.zeros(2)
    for n, c in enumerate(table.log_coeffs, start=1):
        out += -math.log(eps) * eps ** (n - 1) * np.asarray(c)
    for n, d in enumerate(table.reg_coeffs):
        out += eps ** (n - 1) * np.asarray(d)
    return out


def scaled_pair_points(kappa: float, eps: float, x1: float, x2: float, center_z: float = 0.0):
    """Physical positions of a pair with scaled separation (x1, x2) about (kappa, center_z)."""
    log_eps = -math.log(eps)
    r = (2.0 * kappa) ** 0.25 / math.sqrt(log_eps)
    k = (2.0 * kappa) ** 0.25
    drho = 0.5 * r * k * x1
    dz = 0.5 * r * x2 / k
    return (kappa + drho, center_z + dz), (kappa - drho, center_z - dz)


def second_deriv_asymptotics(kappa: float, eps: float, x1: float, x2: float) -> SecondDerivativeLimits:
    """Leading |ln eps| coefficients of G_p11p11, G_p12p12 and G_p11p12 for a close pair."""
    rho2 = x1**2 + x2**2
    if rho2 == 0:
        raise SingularityError("scaled separation must be non-zero")
    if kappa <= 0 or not 0 < eps < 1:
        raise DomainError("need kappa > 0 and eps in (0, 1)")
    diff = (x1**2 - x2**2) / rho2**2
    P1, P2 = scaled_pair_points(kappa, eps, x1, x2)
    return SecondDerivativeLimits(
        d11=diff / (2.0 * math.sqrt(kappa)),
        d22=-math.sqrt(kappa) * diff,
        d12=math.sqrt(2.0) * x1 * x2 / rho2**2,
        P1=HalfPlanePoint(rho=P1[0], z=P1[1]),
        P2=HalfPlanePoint(rho=P2[0], z=P2[1]),
    )
