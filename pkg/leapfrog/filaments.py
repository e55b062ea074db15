"""Point-filament dynamics of a leapfrogging pair of vortex rings.

Two filaments P1, P2 in the meridian half-plane move under the Hamiltonian
H = G(P1, P2) / sqrt(2) + sum_j sqrt(p_j1) / (2 sqrt 2) * (|ln eps| - 7/4 + 5/4 ln 8 + 3/4 ln p_j1).
The relative motion, scaled anisotropically, is a planar system whose
eps -> 0 limit has the explicit level sets
x1^2 + x2^2 = lambda^2 exp(-(x1^2 - lambda^2) / (8 kappa)).
"""

import logging
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Literal

import numpy as np
import pandas as pd
from scipy.integrate import solve_ivp
from scipy.interpolate import CubicSpline
from scipy.optimize import brentq
from scipy.special import exprel

from .config import config
from .errors import DomainError, IntegrationError, NonPeriodicError, SingularityError
from .kernel import eval_G, green_and_gradients, scaled_pair_points
from .models import FilamentPair, HalfPlanePoint, PhysicalParams, ScaledState, SymmetryReport
from .quadrature import integrate_doubling

logger = logging.getLogger(__name__)

LN8 = math.log(8.0)
Model = Literal["physical", "limiting", "perturbed"]


@dataclass
class Trajectory:
    """Integrated trajectory with dense output and per-step conservation logs."""

    times: np.ndarray
    states: np.ndarray
    kind: Literal["pair", "scaled"]
    model: str
    params: PhysicalParams
    logs: dict[str, np.ndarray] = field(default_factory=dict)
    sol: object = None

    def __call__(self, t) -> np.ndarray:
        """Dense-output states at time(s) t, one row per time."""
        if self.sol is None:
            raise DomainError("trajectory has no dense output")
        lo, hi = self.times[0], self.times[-1]
        t_arr = np.atleast_1d(np.asarray(t, dtype=float))
        slack = 1e-9 * max(1.0, abs(hi - lo))
        if np.any(t_arr < lo - slack) or np.any(t_arr > hi + slack):
            raise DomainError(f"time outside the integrated span [{lo:g}, {hi:g}]")
        out = self.sol(np.clip(t_arr, min(lo, hi), max(lo, hi))).T
        return out[0] if np.ndim(t) == 0 else out

    @property
    def span(self) -> float:
        return float(self.times[-1] - self.times[0])

    def scaled(self) -> np.ndarray:
        """States as scaled (x1, x2) rows."""
        if self.kind == "scaled":
            return self.states
        return scaled_coordinates(self.states, self.params)


# Hamiltonian and vector fields


def _self_term(rho, log_eps: float):
    """The single-filament part of the Hamiltonian for one filament."""
    return np.sqrt(rho) / (2.0 * math.sqrt(2.0)) * (log_eps - 1.75 + 1.25 * LN8 + 0.75 * np.log(rho))


def _self_term_derivative(rho, log_eps: float):
    return (log_eps - 0.25 + 1.25 * LN8 + 0.75 * np.log(rho)) / (4.0 * np.sqrt(2.0 * rho))


def _as_pair(P) -> FilamentPair:
    if isinstance(P, FilamentPair):
        return P
    return FilamentPair.from_array(P)


def hamiltonian_H(P: FilamentPair, params: PhysicalParams) -> float:
    """Hamiltonian of the filament pair."""
    P = _as_pair(P)
    g = eval_G(P.P1, P.P2)
    return g / math.sqrt(2.0) + float(
        _self_term(P.P1.rho, params.log_eps) + _self_term(P.P2.rho, params.log_eps)
    )


def _pair_field(state: np.ndarray, params: PhysicalParams) -> np.ndarray:
    p11, p12, p21, p22 = state
    if p11 <= 0 or p21 <= 0:
        raise SingularityError("filament left the half-plane rho > 0")
    _, grad1, grad2 = green_and_gradients((p11, p12), (p21, p22))
    L = params.log_eps
    c = 1.0 / (math.sqrt(2.0) * L)
    return np.array(
        [
            -c * grad1[1],
            c * grad1[0] + _self_term_derivative(p11, L) / L,
            -c * grad2[1],
            c * grad2[0] + _self_term_derivative(p21, L) / L,
        ]
    )


def filament_rhs(P: FilamentPair, params: PhysicalParams) -> tuple[np.ndarray, np.ndarray]:
    """Velocities of the two filaments.

    P_j' = grad_perp_Pj G / (sqrt(2) |ln eps|)
           + i (2 p_j1)^(-1/2) [|ln eps| + (5 ln 8 + 3 ln p_j1 - 1) / 4] / (4 |ln eps|)

    Returns:
        (P1', P2') as arrays (d rho/dt, dz/dt)
    """
    v = _pair_field(_as_pair(P).as_array(), params)
    return v[:2], v[2:]


def limiting_field(x: np.ndarray, kappa: float) -> np.ndarray:
    x1, x2 = x
    rho2 = x1 * x1 + x2 * x2
    if rho2 == 0:
        raise SingularityError("the reduced system is singular at the origin")
    return np.array([x2 / rho2, -x1 / rho2 - x1 / (8.0 * kappa)])


def _perturbed_field(x: np.ndarray, params: PhysicalParams) -> np.ndarray:
    if x[0] == 0 and x[1] == 0:
        raise SingularityError("the reduced system is singular at the origin")
    pair = np.array([p for point in scaled_pair_points(params.kappa, params.eps, *x) for p in point])
    v = _pair_field(pair, params)
    k = (2.0 * params.kappa) ** 0.25
    r = params.r_eps
    return np.array([(v[0] - v[2]) / (r * k), (v[1] - v[3]) * k / r])


def reduced_rhs(
    s: ScaledState, params: PhysicalParams, model: Literal["limiting", "perturbed"] = "limiting"
) -> np.ndarray:
    """Vector field of the scaled relative motion.

    The perturbed model maps the state to physical coordinates about
    (kappa, 0), applies filament_rhs and maps back, so no term is truncated.
    """
    x = s.as_array() if isinstance(s, ScaledState) else np.asarray(s, dtype=float)
    if model == "limiting":
        return limiting_field(x, params.kappa)
    return _perturbed_field(x, params)


# Coordinates


def initial_pair(params: PhysicalParams) -> FilamentPair:
    """Vertical initial configuration P_1,2(0) = (kappa +- (2 kappa)^(1/2) lambda / (2 sqrt|ln eps|), 0)."""
    offset = 0.5 * math.sqrt(2.0 * params.kappa) * params.lam / math.sqrt(params.log_eps)
    if offset >= params.kappa:
        raise DomainError("initial separation reaches the symmetry axis")
    return FilamentPair(
        P1=HalfPlanePoint(rho=params.kappa + offset, z=0.0),
        P2=HalfPlanePoint(rho=params.kappa - offset, z=0.0),
    )


def scaled_coordinates(states: np.ndarray, params: PhysicalParams) -> np.ndarray:
    """Rows (p11, p12, p21, p22) mapped to rows (x1, x2)."""
    states = np.atleast_2d(states)
    k = (2.0 * params.kappa) ** 0.25
    r = params.r_eps
    x1 = (states[:, 0] - states[:, 2]) / (r * k)
    x2 = (states[:, 1] - states[:, 3]) * k / r
    return np.column_stack([x1, x2])


def to_scaled(P: FilamentPair, params: PhysicalParams) -> ScaledState:
    x1, x2 = scaled_coordinates(_as_pair(P).as_array(), params)[0]
    return ScaledState(x1=x1, x2=x2)


def to_physical(s: ScaledState, params: PhysicalParams, center_z: float = 0.0) -> FilamentPair:
    """Pair about (kappa, center_z) with scaled separation s."""
    P1, P2 = scaled_pair_points(params.kappa, params.eps, s.x1, s.x2, center_z)
    return FilamentPair.from_array([*P1, *P2])


def level_set_residual(state, lam: float, kappa: float):
    """|x1^2 + x2^2 - lambda^2 exp(-(x1^2 - lambda^2) / (8 kappa))| on rows of (x1, x2)."""
    x = np.atleast_2d(state.as_array() if isinstance(state, ScaledState) else state)
    x1, x2 = x[:, 0], x[:, 1]
    res = np.abs(x1**2 + x2**2 - lam**2 * np.exp(-(x1**2 - lam**2) / (8.0 * kappa)))
    return float(res[0]) if res.size == 1 else res


def apex_x2(lam: float, kappa: float) -> float:
    """Height of the limiting orbit on the axis x1 = 0."""
    return lam * math.exp(lam**2 / (16.0 * kappa))


def midpoint(traj: Trajectory) -> np.ndarray:
    """Rows C = (P1 + P2) / 2 along a pair trajectory."""
    if traj.kind != "pair":
        raise DomainError("midpoint needs a pair trajectory")
    return 0.5 * (traj.states[:, :2] + traj.states[:, 2:])


# Integration


def integrate(
    state0,
    params: PhysicalParams,
    model: Model,
    t_end: float,
    tol: float | None = None,
    method: str | None = None,
) -> Trajectory:
    """Integrate the pair (model="physical") or the scaled system from t = 0 to t_end.

    Args:
        state0: FilamentPair for the physical model, ScaledState otherwise
        params: Physical parameters
        model: "physical", "limiting" or "perturbed"
        t_end: Final time, negative for backward integration
        tol: Relative local error tolerance
        method: solve_ivp method name (default from config)

    Returns:
        Trajectory with times increasing and dense output attached
    """
    tol = config.RTOL if tol is None else tol
    if tol <= 0:
        raise DomainError("tolerance must be positive")
    method = method or config.ODE_METHOD

    if model == "physical":
        y0 = _as_pair(state0).as_array()
        fun = lambda t, y: _pair_field(y, params)  # noqa: E731
        kind = "pair"
    else:
        y0 = state0.as_array() if isinstance(state0, ScaledState) else np.asarray(state0, float)
        if model == "limiting":
            fun = lambda t, y: limiting_field(y, params.kappa)  # noqa: E731
        else:
            fun = lambda t, y: _perturbed_field(y, params)  # noqa: E731
        kind = "scaled"

    try:
        sol = solve_ivp(
            fun, (0.0, t_end), y0, method=method, rtol=tol, atol=tol * config.ATOL / config.RTOL, dense_output=True
        )
    except SingularityError as e:
        raise IntegrationError(f"integration hit a singular state: {e}") from e
    if sol.status != 0:
        raise IntegrationError(
            f"integrator stopped at t={sol.t[-1]:g}: {sol.message}",
            last_time=float(sol.t[-1]),
            last_state=sol.y[:, -1].copy(),
        )

    times, states = sol.t, sol.y.T
    if t_end < 0:
        times, states = times[::-1], states[::-1]
    traj = Trajectory(times=times, states=states, kind=kind, model=model, params=params, sol=sol.sol)
    if kind == "pair":
        traj.logs["H"] = np.array([hamiltonian_H(row, params) for row in states])
        traj.logs["sum_rho"] = states[:, 0] + states[:, 2]
    else:
        traj.logs["levelset_residual"] = np.atleast_1d(
            level_set_residual(states, params.lam, params.kappa)
        )
    logger.debug("integrated %s model over %g with %d steps", model, t_end, len(times))
    return traj


# Period


def period_T0(lam: float, kappa: float) -> float:
    """Period of the limiting orbit through (lambda, 0).

    With s = sin^2(u) the integrand 2 lambda^2 e^(a(1-s)) / sqrt(e^(a(1-s)) - s) / sqrt(s)
    becomes 4 lambda^2 e^(a c^2) / sqrt(a exprel(a c^2) + 1), c = cos(u), which
    is smooth on [0, pi/2].
    """
    if lam <= 0 or kappa <= 0:
        raise DomainError("lambda and kappa must be positive")
    alpha = lam**2 / (8.0 * kappa)

    def integrand(u: np.ndarray) -> np.ndarray:
        x = alpha * np.cos(u) ** 2
        return np.exp(x) / np.sqrt(alpha * exprel(x) + 1.0)

    return 4.0 * lam**2 * integrate_doubling(integrand, 0.0, 0.5 * math.pi, 1e-14)


@lru_cache(maxsize=16)
def _limiting_orbit(lam: float, kappa: float) -> tuple[float, Trajectory]:
    T0 = period_T0(lam, kappa)
    # eps does not enter the limiting field
    params = PhysicalParams(eps=0.01, kappa=kappa, lam=lam)
    return T0, integrate(np.array([lam, 0.0]), params, "limiting", T0)


def limiting_orbit(lam: float, kappa: float, phi) -> np.ndarray:
    """Rows y(phi) = x(T0 phi / (2 pi)) of the limiting orbit through (lambda, 0)."""
    T0, traj = _limiting_orbit(lam, kappa)
    phase = np.mod(np.asarray(phi, dtype=float), 2.0 * math.pi)
    return traj(T0 * phase / (2.0 * math.pi))


def period_bounds(lam: float, kappa: float) -> tuple[float, float]:
    """Bounds 2 pi lambda^2 / sqrt(1 + alpha) <= T0 <= 2 pi lambda^2 e^(alpha/2)."""
    alpha = lam**2 / (8.0 * kappa)
    base = 2.0 * math.pi * lam**2
    return base / math.sqrt(1.0 + alpha), base * math.exp(0.5 * alpha)


def measure_period(
    params: PhysicalParams,
    model: Literal["limiting", "perturbed"] = "limiting",
    tol: float | None = None,
) -> float:
    """First return time of the orbit through (lambda, 0) to {x2 = 0, x1 > 0}."""
    _, upper = period_bounds(params.lam, params.kappa)
    horizon = 10.0 * upper
    chunk = 1.5 * upper
    state = np.array([params.lam, 0.0])
    t0 = 0.0
    while t0 < horizon:
        traj = integrate(state, params, model, chunk, tol)
        x1, x2 = traj.states[:, 0], traj.states[:, 1]
        crossings = np.nonzero((x2[:-1] > 0) & (x2[1:] <= 0) & (x1[1:] > 0))[0]
        if crossings.size:
            i = int(crossings[0])
            root = brentq(
                lambda t: float(traj(t)[1]), traj.times[i], traj.times[i + 1], xtol=1e-13
            )
            logger.debug("section return at %.15g", t0 + root)
            return t0 + root
        t0 += chunk
        state = traj.states[-1]
    raise NonPeriodicError(
        f"no return to the section within {horizon:g}", last_time=t0, last_state=state
    )


def check_symmetries(traj: Trajectory, T: float, n_samples: int = 200) -> SymmetryReport:
    """Deviations from the half-period exchange and the time-reversal symmetry.

    The exchange compares p11(t + T/2) with p21(t) and (p12 - p22)(t + T/2)
    with -(p12 - p22)(t); for scaled trajectories the equivalent statements
    x(t + T/2) = -x(t) are checked. The reflection compares x1(-t) with
    x1(t) and x2(-t) with -x2(t), integrating backward from the initial state.
    """
    if traj.times[0] != 0 or traj.times[-1] < T * (1 - 1e-12):
        raise DomainError("trajectory must start at 0 and span one period")
    tau = np.linspace(0.0, 0.5 * T, n_samples)
    now, later = traj(tau), traj(tau + 0.5 * T)
    if traj.kind == "pair":
        exchange_rho = np.max(np.abs(later[:, 0] - now[:, 2]))
        dz_now = now[:, 1] - now[:, 3]
        dz_later = later[:, 1] - later[:, 3]
        exchange_z = np.max(np.abs(dz_later + dz_now))
        x_now = scaled_coordinates(now, traj.params)
    else:
        exchange_rho = np.max(np.abs(later[:, 0] + now[:, 0]))
        exchange_z = np.max(np.abs(later[:, 1] + now[:, 1]))
        x_now = now

    backward = integrate(traj.states[0], traj.params, traj.model, -0.5 * T)
    past = backward(-tau)
    x_past = scaled_coordinates(past, traj.params) if traj.kind == "pair" else past
    return SymmetryReport(
        exchange_rho=float(exchange_rho),
        exchange_z=float(exchange_z),
        reflection_x1=float(np.max(np.abs(x_past[:, 0] - x_now[:, 0]))),
        reflection_x2=float(np.max(np.abs(x_past[:, 1] + x_now[:, 1]))),
    )


# Period averages


def _period_samples(params: PhysicalParams, T: float, traj: Trajectory | None, n: int) -> np.ndarray:
    if traj is None:
        traj = integrate(initial_pair(params), params, "physical", T)
    if traj.kind != "pair" or traj.span < T * (1 - 1e-12):
        raise DomainError("need a pair trajectory spanning one period")
    return traj(traj.times[0] + T * np.arange(n) / n)


def drift_speed(
    params: PhysicalParams, T: float, traj: Trajectory | None = None, n_samples: int = 512
) -> float:
    """Period average of the axial velocity of the midpoint (P1 + P2) / 2."""
    states = _period_samples(params, T, traj, n_samples)
    L = params.log_eps
    total = 0.0
    for p11, p12, p21, p22 in states:
        _, grad1, grad2 = green_and_gradients((p11, p12), (p21, p22))
        total += (grad1[0] + grad2[0]) / math.sqrt(2.0)
        total += _self_term_derivative(p11, L) + _self_term_derivative(p21, L)
    return total / n_samples / (2.0 * L)


def drift_speed_expansion(params: PhysicalParams, traj: Trajectory, T: float, n_samples: int = 512) -> float:
    """Two-term expansion of the drift speed including its orbit average."""
    L = params.log_eps
    k = math.sqrt(2.0 * params.kappa)
    x = scaled_coordinates(_period_samples(params, T, traj, n_samples), params)
    rho2 = x[:, 0] ** 2 + x[:, 1] ** 2
    average = float(np.mean(x[:, 0] ** 2 / rho2 - 0.5 * np.log(rho2)))
    leading = (
        1.0
        + 0.5 / L * abs(math.log(k / L))
        + (2.5 * LN8 + 1.5 * math.log(params.kappa) - 1.25) / L
    ) / (4.0 * k)
    return leading + average / (4.0 * L * k)


def omega_from_samples(p11: np.ndarray, T: float) -> float:
    """2 pi over the period integral of sqrt(2 p11), from uniform samples without endpoint."""
    return 2.0 * math.pi / (T * float(np.mean(np.sqrt(2.0 * np.asarray(p11)))))


def frequency_omega(
    params: PhysicalParams, T: float | None = None, traj: Trajectory | None = None, n_samples: int = 512
) -> float:
    """Renormalized angular frequency of the perturbed orbit, over the measured period unless T is given."""
    if T is None:
        T = measure_period(params, "perturbed")
    states = _period_samples(params, T, traj, n_samples)
    return omega_from_samples(states[:, 0], T)


def omega_limit(lam: float, kappa: float) -> float:
    """eps -> 0 limit 2 pi / (sqrt(2 kappa) T0) of the frequency."""
    return 2.0 * math.pi / (math.sqrt(2.0 * kappa) * period_T0(lam, kappa))


@dataclass(frozen=True)
class PhaseMap:
    """phi(t) = omega * integral_0^t sqrt(2 p11) and its inverse on one period."""

    omega: float
    phi_of_tau: CubicSpline
    tau_of_phi: CubicSpline

    def phi(self, tau):
        return self.phi_of_tau(tau)

    def tau(self, phi):
        return self.tau_of_phi(phi)


def phase_map(traj: Trajectory, omega: float, T: float, n_samples: int = 4097) -> PhaseMap:
    """Phase along a pair trajectory, from a spline antiderivative of sqrt(2 p11)."""
    tau = np.linspace(0.0, T, n_samples)
    speed = np.sqrt(2.0 * traj(tau)[:, 0])
    phi = omega * CubicSpline(tau, speed).antiderivative()(tau)
    return PhaseMap(
        omega=omega,
        phi_of_tau=CubicSpline(tau, phi),
        tau_of_phi=CubicSpline(phi, tau),
    )


def trajectory_frame(traj: Trajectory, U: float | None = None) -> pd.DataFrame:
    """Tabulate a trajectory, optionally in the frame translating with speed U."""
    if traj.kind == "pair":
        states = traj.states.copy()
        if U is not None:
            states[:, 1] -= U * traj.times
            states[:, 3] -= U * traj.times
        df = pd.DataFrame(states, columns=["p11", "p12", "p21", "p22"])
        df.insert(0, "t", traj.times)
        df["H"] = traj.logs["H"]
        df["sum_rho"] = traj.logs["sum_rho"]
        return df
    df = pd.DataFrame(traj.states, columns=["x1", "x2"])
    df.insert(0, "t", traj.times)
    df["levelset_residual"] = traj.logs["levelset_residual"]
    return df
