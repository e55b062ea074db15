"""Quadrature rules shared by the kernel, contour and mode-one modules."""

import logging
from functools import lru_cache
from typing import Callable

import numpy as np
from scipy.integrate import cumulative_simpson

from .errors import QuadratureError

logger = logging.getLogger(__name__)


@lru_cache(maxsize=64)
def gauss_legendre(order: int) -> tuple[np.ndarray, np.ndarray]:
    """Gauss-Legendre nodes and weights on [0, 1]."""
    x, w = np.polynomial.legendre.leggauss(order)
    return 0.5 * (x + 1.0), 0.5 * w


def composite_rule(a: float, b: float, panels: int, order: int) -> tuple[np.ndarray, np.ndarray]:
    """Composite Gauss-Legendre rule with equal panels on [a, b]."""
    x, w = gauss_legendre(order)
    edges = np.linspace(a, b, panels + 1)
    width = np.diff(edges)
    nodes = (edges[:-1, None] + width[:, None] * x[None, :]).ravel()
    weights = (width[:, None] * w[None, :]).ravel()
    return nodes, weights


def integrate_doubling(
    func: Callable[[np.ndarray], np.ndarray],
    a: float,
    b: float,
    tol: float,
    order: int = 16,
    panels: int = 4,
    max_doublings: int = 14,
) -> float:
    """Integrate a smooth function by doubling the panel count until two passes agree.

    Args:
        func: Vectorized integrand
        a: Lower limit
        b: Upper limit
        tol: Relative agreement required between successive passes
        order: Gauss-Legendre order per panel
        panels: Initial panel count
        max_doublings: Refinement budget

    Returns:
        The finer of the last two estimates
    """
    nodes, weights = composite_rule(a, b, panels, order)
    previous = float(np.dot(weights, func(nodes)))
    for _ in range(max_doublings):
        panels *= 2
        nodes, weights = composite_rule(a, b, panels, order)
        current = float(np.dot(weights, func(nodes)))
        if abs(current - previous) <= tol * max(abs(current), 1e-300):
            return current
        previous = current
    raise QuadratureError(
        f"no agreement to {tol:g} after {max_doublings} doublings on [{a:g}, {b:g}]"
    )


@lru_cache(maxsize=16)
def corner_rule(n_radial: int, n_angular: int, power: int = 3) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Rule on the unit square for integrands singular at the corner (0, 0).

    The square is split along its diagonal and each triangle is collapsed
    onto the corner, so log and 1/r singularities become u*log(u) and
    bounded terms. The radial variable is then stretched as u = x**power.

    Returns:
        (a, e, w): node coordinates and weights on [0, 1]^2
    """
    x, wx = gauss_legendre(n_radial)
    v, wv = gauss_legendre(n_angular)
    u = x**power
    du = power * x ** (power - 1) * wx
    uu, vv = np.meshgrid(u, v, indexing="ij")
    ww = (du * u)[:, None] * wv[None, :]
    a = np.concatenate([uu.ravel(), (uu * vv).ravel()])
    e = np.concatenate([(uu * vv).ravel(), uu.ravel()])
    w = np.concatenate([ww.ravel(), ww.ravel()])
    return a, e, w


def boundary_point_rule(theta: float, resolution: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Rule for integrals over t in [0, 1], eta in [theta - pi, theta + pi].

    The integrand may be singular at the boundary point t = 1, eta = theta.

    Returns:
        (t, eta, w) with eta left unwrapped
    """
    a, e, w = corner_rule(resolution, resolution)
    t = np.concatenate([1.0 - a, 1.0 - a])
    eta = np.concatenate([theta + np.pi * e, theta - np.pi * e])
    weights = np.pi * np.concatenate([w, w])
    return t, eta, weights


def disk_rule(n_radial: int, n_angular: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Tensor rule on t in [0, 1] (Gauss) times eta in [0, 2 pi) (periodic trapezoid)."""
    t, wt = gauss_legendre(n_radial)
    eta = 2.0 * np.pi * np.arange(n_angular) / n_angular
    tt, ee = np.meshgrid(t, eta, indexing="ij")
    ww = wt[:, None] * np.full(n_angular, 2.0 * np.pi / n_angular)[None, :]
    return tt.ravel(), ee.ravel(), ww.ravel()


def cumulative_matrix(n: int, dx: float) -> np.ndarray:
    """Matrix C with (C @ g)[k] = integral of g from grid[0] to grid[k], Simpson accurate."""
    return cumulative_simpson(np.eye(n), dx=dx, axis=0, initial=0.0)
