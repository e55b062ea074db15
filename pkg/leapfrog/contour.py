"""Ring boundaries, the stream function on them and the contour functional F.

Ring j is parametrized by
gamma_j = P_j + i eps |ln eps|^-1 V_j + eps w_j Z_j,  w_j = sqrt(1 + 2 eps f_j),
Z_j = ((2 p_j1)^(1/4) cos(theta), (2 p_j1)^(-1/4) sin(theta)).
Everything is expressed in the phase phi = omega * int_0^tau sqrt(2 p11), in
which the orbit is 2 pi-periodic and ring 2 carries the shape f(phi + pi, .).
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Literal

import numpy as np
import pandas as pd

from .config import config
from .errors import DomainError, QuadratureError, ShapeError
from .filaments import (
    PhaseMap,
    Trajectory,
    initial_pair,
    integrate,
    limiting_orbit,
    measure_period,
    phase_map,
)
from .kernel import green_array, hessian_G
from .models import AuxFunctions, CoefficientSet, PhysicalParams, TrivialStateProjection
from .quadrature import boundary_point_rule, disk_rule
from .spectral import FourierSeries

logger = logging.getLogger(__name__)

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class OrbitPhase:
    """The filament pair as a function of the phase phi.

    Positions are stored as truncated Fourier series of their periodic parts
    plus the axial drift per period, so any real phi can be evaluated.
    """

    params: PhysicalParams
    T: float
    omega: float
    drift: float
    coeffs: np.ndarray
    phases: PhaseMap

    @classmethod
    def from_params(cls, params: PhysicalParams, tol: float | None = None, n_points: int | None = None) -> "OrbitPhase":
        """Measure the period, integrate the pair over it and build the phase representation."""
        T = measure_period(params, "perturbed", tol)
        traj = integrate(initial_pair(params), params, "physical", T, tol)
        return cls.from_trajectory(traj, T, n_points)

    @classmethod
    def from_trajectory(cls, traj: Trajectory, T: float, n_points: int | None = None) -> "OrbitPhase":
        if traj.kind != "pair" or traj.times[0] != 0 or traj.times[-1] < T * (1 - 1e-12):
            raise DomainError("need a pair trajectory starting at 0 and spanning one period")
        raw = phase_map(traj, 1.0, T)
        omega = TWO_PI / float(raw.phi(T))
        phases = phase_map(traj, omega, T)

        n = n_points or config.ORBIT_POINTS
        phi = TWO_PI * np.arange(n) / n
        states = traj(np.clip(phases.tau(phi), 0.0, T))
        drift = float(traj(T)[1] - traj(0.0)[1])
        periodic = states.copy()
        periodic[:, [1, 3]] -= drift * phi[:, None] / TWO_PI
        coeffs = np.fft.rfft(periodic, axis=0) / n
        coeffs[1:] *= 2.0
        if n % 2 == 0:
            coeffs[-1] = 0.0
        logger.debug("orbit phase: T=%.12g omega=%.12g drift=%.3e", T, omega, drift)
        return cls(params=traj.params, T=T, omega=omega, drift=drift, coeffs=coeffs, phases=phases)

    def _series(self, phi, order: int = 0) -> np.ndarray:
        phi = np.atleast_1d(np.asarray(phi, dtype=float))
        k = np.arange(self.coeffs.shape[0])
        basis = np.exp(1j * np.outer(phi, k)) * (1j * k) ** order
        return (basis @ self.coeffs).real

    def state(self, phi) -> np.ndarray:
        """(p11, p12, p21, p22) at phase(s) phi, one row per phase."""
        out = self._series(phi)
        out[:, [1, 3]] += self.drift * np.atleast_1d(phi)[:, None] / TWO_PI
        return out[0] if np.ndim(phi) == 0 else out

    def velocity(self, phi) -> np.ndarray:
        """dP/dphi at phase(s) phi."""
        out = self._series(phi, order=1)
        out[:, [1, 3]] += self.drift / TWO_PI
        return out[0] if np.ndim(phi) == 0 else out

    def p11(self, phi) -> np.ndarray:
        return self.state(phi)[..., 0]

    def phase_of_tau(self, tau):
        """phi(tau) for any real tau, using phi(tau + T) = phi(tau) + 2 pi."""
        tau = np.asarray(tau, dtype=float)
        laps = np.floor(tau / self.T)
        return laps * TWO_PI + self.phases.phi(tau - laps * self.T)

    @property
    def drift_speed(self) -> float:
        return self.drift / self.T


@dataclass(frozen=True)
class RingShape:
    """Core deformation f(phi, theta) of ring 1; ring 2 uses f(phi + pi, theta)."""

    eps: float
    f: FourierSeries = field(default_factory=FourierSeries)

    @classmethod
    def trivial(cls, eps: float) -> "RingShape":
        return cls(eps=eps)

    def slice(self, phi: float, ring: int = 1) -> FourierSeries:
        return self.f.at_phi(phi + (ring - 1) * math.pi)

    def w(self, phi: float, theta, ring: int = 1) -> np.ndarray:
        """sqrt(1 + 2 eps f), rejecting shapes that turn the core inside out."""
        radial = 1.0 + 2.0 * self.eps * self.slice(phi, ring).sample(theta)
        if np.any(radial <= 0):
            raise ShapeError(f"1 + 2 eps f <= 0 at phi={phi:g}")
        return np.sqrt(radial)

    def check(self, n_phi: int = 32, n_theta: int = 64) -> None:
        theta = TWO_PI * np.arange(n_theta) / n_theta
        for phi in TWO_PI * np.arange(n_phi) / n_phi:
            self.w(phi, theta)


def _speed_values(V: FourierSeries | None, phi: float) -> tuple[float, float]:
    """Value and phi-derivative of a speed modulation given as a series in phi."""
    if V is None:
        return 0.0, 0.0
    if V.two_dim:
        raise DomainError("speed modulations are one-dimensional series in phi")
    if any(abs(V.cos_coefficient(abs(k))) > 1e-12 for k in V.modes):
        raise DomainError("speed modulations must be odd in phi")
    return float(V.sample(phi)), float(V.derivative().sample(phi))


def _ellipse(p: float, theta) -> tuple[np.ndarray, np.ndarray]:
    k = (2.0 * p) ** 0.25
    return k * np.cos(theta), np.sin(theta) / k


def _centers(orbit: OrbitPhase, ring: int, phi: float) -> tuple[np.ndarray, np.ndarray]:
    state = orbit.state(phi)
    if ring == 1:
        return state[:2], state[2:]
    if ring == 2:
        return state[2:], state[:2]
    raise DomainError("ring must be 1 or 2")


def boundary_gamma(
    params: PhysicalParams,
    orbit: OrbitPhase,
    shape: RingShape,
    ring: Literal[1, 2],
    tau: float,
    theta,
    V: FourierSeries | None = None,
) -> np.ndarray:
    """Boundary points of ring `ring` at time tau, one (rho, z) row per theta."""
    phi = float(orbit.phase_of_tau(tau))
    center, _ = _centers(orbit, ring, phi)
    theta = np.atleast_1d(np.asarray(theta, dtype=float))
    v, _ = _speed_values(V, phi)
    w = shape.w(phi, theta, ring)
    zr, zz = _ellipse(center[0], theta)
    eps = params.eps
    return np.column_stack([center[0] + eps * w * zr, center[1] + eps * v / params.log_eps + eps * w * zz])


# Stream function


def _self_part(eps: float, center: np.ndarray, target: np.ndarray, shape_slice: FourierSeries, theta: float, resolution: int) -> float:
    t, eta, weights = boundary_point_rule(theta, resolution)
    w = np.sqrt(1.0 + 2.0 * eps * shape_slice.sample(eta))
    zr, zz = _ellipse(center[0], eta)
    g = green_array(target[0], target[1], center[0] + eps * t * w * zr, center[1] + eps * t * w * zz)
    return math.sqrt(2.0) / TWO_PI * float(np.dot(weights, g * w * w * t))


def _interaction_part(eps: float, partner: np.ndarray, target: np.ndarray, shape_slice: FourierSeries, resolution: int) -> float:
    t, eta, weights = disk_rule(resolution, 2 * resolution)
    w = np.sqrt(1.0 + 2.0 * eps * shape_slice.sample(eta))
    zr, zz = _ellipse(partner[0], eta)
    g = green_array(target[0], target[1], partner[0] + eps * t * w * zr, partner[1] + eps * t * w * zz)
    return math.sqrt(2.0) / TWO_PI * float(np.dot(weights, g * w * w * t))


def _stream_samples(
    params: PhysicalParams,
    orbit: OrbitPhase,
    shape: RingShape,
    phi: float,
    theta: np.ndarray,
    U_minus: float,
    ring: int,
    part: str,
    resolution: int,
) -> np.ndarray:
    eps = params.eps
    center, partner = _centers(orbit, ring, phi)
    own = shape.slice(phi, ring)
    other = shape.slice(phi, 3 - ring)
    w = shape.w(phi, theta, ring)
    zr, zz = _ellipse(center[0], theta)
    shift = eps * U_minus / params.log_eps
    out = np.zeros(theta.size)
    for i, th in enumerate(theta):
        target = np.array([center[0] + eps * w[i] * zr[i], center[1] + eps * w[i] * zz[i]])
        if part in ("self", "total"):
            out[i] += _self_part(eps, center, target, own, th, resolution)
        if part in ("interaction", "total"):
            shifted = target + np.array([0.0, shift])
            out[i] += _interaction_part(eps, partner, shifted, other, resolution)
    return out


def stream_Psi(
    params: PhysicalParams,
    orbit: OrbitPhase,
    shape: RingShape,
    phi: float,
    theta,
    V_minus: float = 0.0,
    ring: Literal[1, 2] = 1,
    part: Literal["self", "interaction", "total"] = "total",
    resolution: int | None = None,
    check: bool = False,
    tol: float = 1e-8,
) -> np.ndarray:
    """Stream function of both cores on the boundary of ring `ring`.

    The self-interaction integral is singular where the source point meets
    the boundary point; it is evaluated with a corner-collapsing rule
    centred there. The interaction integral is smooth.

    Args:
        V_minus: Value of V_ring - V_other at phi
        check: Recompute at doubled resolution and raise QuadratureError
            when the relative change exceeds tol

    Returns:
        Psi(gamma(phi, theta)) for each theta
    """
    resolution = resolution or config.SELF_RESOLUTION
    theta = np.atleast_1d(np.asarray(theta, dtype=float))
    values = _stream_samples(params, orbit, shape, phi, theta, V_minus, ring, part, resolution)
    if check:
        finer = _stream_samples(params, orbit, shape, phi, theta, V_minus, ring, part, 2 * resolution)
        change = float(np.max(np.abs(finer - values)) / max(np.max(np.abs(finer)), 1e-300))
        if change > tol:
            raise QuadratureError(f"stream function changed by {change:.2e} under refinement at phi={phi:g}")
        values = finer
    return values


# The contour functional


def _theta_grid(n: int) -> np.ndarray:
    return TWO_PI * np.arange(n) / n


def _spectral_dtheta(values: np.ndarray) -> np.ndarray:
    n = values.size
    k = np.fft.fftfreq(n, 1.0 / n)
    if n % 2 == 0:
        k[n // 2] = 0.0
    return np.fft.ifft(1j * k * np.fft.fft(values)).real


def functional_F(
    params: PhysicalParams,
    orbit: OrbitPhase,
    shape: RingShape,
    phi: float,
    theta=None,
    V1: FourierSeries | None = None,
    V2: FourierSeries | None = None,
    n_theta: int | None = None,
    resolution: int | None = None,
) -> np.ndarray:
    """F(eps, V1, V2, f)(phi, .) on the theta grid, or interpolated at theta.

    F = eps^3 L omega d_phi f + (2 p11)^(-1/2) d_theta Psi(gamma)
        - omega (L P1' + i eps V1') . i d_theta gamma
        + eps^2 L omega p11' / (8 p11) d_theta((1 + 2 eps f) sin 2 theta)
    with L = |ln eps| and primes in phi.
    """
    n = n_theta or config.THETA_POINTS
    grid = _theta_grid(n)
    eps, L, omega = params.eps, params.log_eps, orbit.omega

    state = orbit.state(phi)
    vel = orbit.velocity(phi)
    p11 = state[0]
    v1, dv1 = _speed_values(V1, phi)
    v2, _ = _speed_values(V2, phi)

    f_slice = shape.slice(phi)
    f = f_slice.sample(grid)
    df_theta = f_slice.derivative().sample(grid)
    df_phi = shape.f.derivative("phi").at_phi(phi).sample(grid) if shape.f.two_dim else np.zeros(n)

    w = shape.w(phi, grid)
    dw = eps * df_theta / w
    zr, zz = _ellipse(p11, grid)
    dzr, dzz = -((2.0 * p11) ** 0.25) * np.sin(grid), np.cos(grid) / (2.0 * p11) ** 0.25
    dgamma_r = eps * (dw * zr + w * dzr)
    dgamma_z = eps * (dw * zz + w * dzz)

    psi = stream_Psi(params, orbit, shape, phi, grid, V_minus=v1 - v2, resolution=resolution)
    transport = -omega * (L * vel[0] * (-dgamma_z) + (L * vel[1] + eps * dv1) * dgamma_r)
    stretch = (
        eps**2 * L * omega * vel[0] / (8.0 * p11)
        * (2.0 * eps * df_theta * np.sin(2.0 * grid) + 2.0 * (1.0 + 2.0 * eps * f) * np.cos(2.0 * grid))
    )
    values = eps**3 * L * omega * df_phi + _spectral_dtheta(psi) / math.sqrt(2.0 * p11) + transport + stretch
    if theta is None:
        return values
    return FourierSeries.from_samples(values).sample(theta)


def theta_coefficients(values: np.ndarray) -> CoefficientSet:
    """Low cosine and sine coefficients of samples on a uniform theta grid."""
    grid = _theta_grid(values.size)
    scale = 2.0 / values.size
    return CoefficientSet(
        sin3=scale * float(np.dot(values, np.sin(3 * grid))),
        cos2=scale * float(np.dot(values, np.cos(2 * grid))),
        sin2=scale * float(np.dot(values, np.sin(2 * grid))),
        cos1=scale * float(np.dot(values, np.cos(grid))),
        sin1=scale * float(np.dot(values, np.sin(grid))),
    )


# Orbit-dependent coefficients


def aux_functions(params: PhysicalParams, orbit: OrbitPhase, phi_grid) -> AuxFunctions:
    """Coefficient functions built from second derivatives of G along the orbit."""
    phi = np.atleast_1d(np.asarray(phi_grid, dtype=float))
    L, kappa = params.log_eps, params.kappa
    states = np.atleast_2d(orbit.state(phi))
    rows = []
    for p11, p12, p21, p22 in states:
        H = hessian_G((p11, p12), (p21, p22)) / L
        a, b = (2.0 * p11) ** 0.25, (2.0 * p21) ** 0.25
        rows.append(
            (
                p11,
                H[0, 1] / (math.sqrt(2.0) * a * a),
                -H[1, 1] / math.sqrt(p11),
                0.25 / (a * a) * (3.0 / (8.0 * p11) - 2.0 * math.sqrt(p11) * H[0, 0] + H[1, 1] / math.sqrt(p11)),
                0.125 / a**3,
                -b / (math.sqrt(2.0) * a) * H[0, 2],
                -1.0 / (math.sqrt(2.0) * a * b) * H[0, 3],
                b / (math.sqrt(2.0) * a**3) * H[1, 2],
                1.0 / (math.sqrt(2.0) * a**3 * b) * H[1, 3],
            )
        )
    table = np.array(rows)
    y = np.atleast_2d(limiting_orbit(params.lam, kappa, phi))
    r4 = (y[:, 0] ** 2 + y[:, 1] ** 2) ** 2
    alpha_check = y[:, 0] * y[:, 1] / r4
    h2_check = (y[:, 0] ** 2 - y[:, 1] ** 2) / r4
    return AuxFunctions(
        phi=phi,
        p11=table[:, 0],
        f2=table[:, 1],
        h2=table[:, 2],
        g2=table[:, 3],
        g3=table[:, 4],
        q1=table[:, 5],
        q2=table[:, 6],
        q3=table[:, 7],
        q4=table[:, 8],
        b=(3.0 / (16.0 * kappa) + h2_check) / (16.0 * kappa),
        alpha_check=alpha_check,
        h2_check=h2_check,
    )


def predicted_F_trivial(params: PhysicalParams, orbit: OrbitPhase, phi: float, aux: AuxFunctions | None = None) -> CoefficientSet:
    """Leading low-mode coefficients of F(eps, 0, 0, 0) at phase phi."""
    aux = aux or aux_functions(params, orbit, [phi])
    c = aux.at(0)
    eps, L, omega = params.eps, params.log_eps, orbit.omega
    p11 = c["p11"]
    dp11 = float(orbit.velocity(phi)[0])
    return CoefficientSet(
        sin3=-eps * c["g3"],
        cos2=eps**2 * L * (c["f2"] + omega * dp11 / (4.0 * p11)),
        sin2=eps**2 * L * c["g2"],
        cos1=0.0,
        sin1=-(eps**3) * L * (2.0 * p11) ** 0.25 * c["b"],
    )


def project_F_trivial(
    params: PhysicalParams,
    orbit: OrbitPhase,
    phi: float,
    n_theta: int | None = None,
    resolution: int | None = None,
) -> TrivialStateProjection:
    """Measured low modes of F at the trivial state next to their predicted values."""
    values = functional_F(params, orbit, RingShape.trivial(params.eps), phi, n_theta=n_theta, resolution=resolution)
    return TrivialStateProjection(
        phi=phi,
        eps=params.eps,
        measured=theta_coefficients(values),
        predicted=predicted_F_trivial(params, orbit, phi),
    )


# Approximate profile


def approx_profile_h0(params: PhysicalParams, orbit: OrbitPhase, phi, theta, aux: AuxFunctions | None = None):
    """h0 = g3 cos 3 theta - 2 eps L g2 cos 2 theta + 2 eps L (f2 + omega p11' / (4 p11)) sin 2 theta.

    Each mode inverts (H - d_theta) eps / 2 on the matching mode of F(eps, 0),
    so the stretching part omega p11' / (4 p11) of the cos 2 theta coefficient
    is absorbed as well. That part is O(|ln eps|^(-1/2)); the remaining
    O(eps |ln eps|^(1/2)) correction is not included.
    """
    phi = np.atleast_1d(np.asarray(phi, dtype=float))
    aux = aux or aux_functions(params, orbit, phi)
    eL = params.eps * params.log_eps
    stretch = orbit.omega * np.atleast_2d(orbit.velocity(phi))[:, 0] / (4.0 * aux.p11)
    theta = np.asarray(theta, dtype=float)
    return (
        aux.g3[:, None] * np.cos(3 * theta)
        - 2.0 * eL * aux.g2[:, None] * np.cos(2 * theta)
        + 2.0 * eL * (aux.f2 + stretch)[:, None] * np.sin(2 * theta)
    ).squeeze()


def approx_profile_series(params: PhysicalParams, orbit: OrbitPhase, n_phi: int = 32) -> FourierSeries:
    """h0 as a two-dimensional series, usable as a RingShape deformation."""
    phi = TWO_PI * np.arange(n_phi) / n_phi
    theta = _theta_grid(8)
    samples = np.atleast_2d(approx_profile_h0(params, orbit, phi, theta))
    return FourierSeries.from_samples(samples, drop=1e-15)


def ring_snapshot(
    params: PhysicalParams,
    orbit: OrbitPhase,
    shape: RingShape,
    tau: float,
    n_theta: int = 128,
    V1: FourierSeries | None = None,
    V2: FourierSeries | None = None,
) -> pd.DataFrame:
    """Boundary samples of both rings at time tau."""
    theta = _theta_grid(n_theta)
    frames = []
    for ring, V in ((1, V1), (2, V2)):
        points = boundary_gamma(params, orbit, shape, ring, tau, theta, V)
        frames.append(
            pd.DataFrame({"tau": tau, "theta": theta, "x": points[:, 0], "y": points[:, 1], "ring_id": ring})
        )
    return pd.concat(frames, ignore_index=True)
