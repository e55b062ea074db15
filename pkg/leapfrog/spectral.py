"""Fourier toolkit on the torus: projections, Hilbert transform, log multipliers,
the finite-rank operators of the mode-one analysis and the small-divisor inverter.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Callable, Iterable, Literal, Mapping

import numpy as np
import pandas as pd
from scipy.integrate import quad
from scipy.special import digamma, gammaln, gammasgn

from .errors import DomainError
from .models import AuxFunctions, DiophantineParams, IdentityCheck, TransportReport
from .quadrature import boundary_point_rule

logger = logging.getLogger(__name__)

Index = int | tuple[int, int]


@dataclass
class FourierSeries:
    """Sparse Fourier series in theta, or in (phi, theta) with index pairs (l, j).

    For real series the coefficient at -k is the conjugate of the one at k.
    """

    modes: dict[Index, complex] = field(default_factory=dict)
    real: bool = True

    def __post_init__(self):
        self.modes = {k: complex(v) for k, v in self.modes.items()}
        kinds = {isinstance(k, tuple) for k in self.modes}
        if len(kinds) > 1:
            raise DomainError("series mixes one- and two-dimensional indices")
        if self.real:
            scale = max((abs(v) for v in self.modes.values()), default=0.0)
            for k, v in self.modes.items():
                if abs(self.coefficient(_neg(k)) - v.conjugate()) > 1e-12 * max(scale, 1.0):
                    raise DomainError(f"series flagged real but mode {k} is not conjugate-symmetric")

    @property
    def two_dim(self) -> bool:
        return any(isinstance(k, tuple) for k in self.modes)

    def coefficient(self, k: Index) -> complex:
        return self.modes.get(k, 0j)

    # Construction

    @classmethod
    def from_cos_sin(
        cls, cos: Mapping[int, float] | None = None, sin: Mapping[int, float] | None = None
    ) -> "FourierSeries":
        """Real series sum a_k cos(k theta) + b_k sin(k theta)."""
        modes: dict[Index, complex] = {}
        for k, a in (cos or {}).items():
            if k == 0:
                modes[0] = modes.get(0, 0j) + a
                continue
            modes[k] = modes.get(k, 0j) + a / 2
            modes[-k] = modes.get(-k, 0j) + a / 2
        for k, b in (sin or {}).items():
            if k == 0:
                continue
            modes[k] = modes.get(k, 0j) + b / 2j
            modes[-k] = modes.get(-k, 0j) - b / 2j
        return cls(modes)

    @classmethod
    def from_samples(cls, values: np.ndarray, real: bool = True, drop: float = 0.0) -> "FourierSeries":
        """Series from samples on a uniform grid (theta along the last axis, phi along the first)."""
        values = np.asarray(values)
        coeffs = np.fft.fftn(values) / values.size
        modes: dict[Index, complex] = {}
        if values.ndim == 1:
            n = values.shape[0]
            for k, ck in zip(np.fft.fftfreq(n, 1.0 / n).astype(int), coeffs):
                if abs(ck) > drop and not (n % 2 == 0 and abs(k) == n // 2):
                    modes[int(k)] = ck
        elif values.ndim == 2:
            nphi, ntheta = values.shape
            ls = np.fft.fftfreq(nphi, 1.0 / nphi).astype(int)
            js = np.fft.fftfreq(ntheta, 1.0 / ntheta).astype(int)
            for a, l in enumerate(ls):
                if nphi % 2 == 0 and abs(l) == nphi // 2:
                    continue
                for b, j in enumerate(js):
                    if ntheta % 2 == 0 and abs(j) == ntheta // 2:
                        continue
                    if abs(coeffs[a, b]) > drop:
                        modes[(int(l), int(j))] = coeffs[a, b]
        else:
            raise DomainError("samples must be one- or two-dimensional")
        if real:
            modes = {k: _symmetrize(modes, k) for k in modes}
        return cls(modes, real=real)

    @classmethod
    def from_function(cls, func: Callable[[np.ndarray], np.ndarray], n: int = 64) -> "FourierSeries":
        theta = 2.0 * np.pi * np.arange(n) / n
        return cls.from_samples(func(theta), drop=1e-15)

    # Evaluation

    def sample(self, theta, phi=None) -> np.ndarray:
        """Evaluate at theta (and phi for two-dimensional series)."""
        theta = np.asarray(theta, dtype=float)
        total = np.zeros(np.broadcast(theta, phi if phi is not None else 0.0).shape, dtype=complex)
        for k, c in self.modes.items():
            if isinstance(k, tuple):
                if phi is None:
                    raise DomainError("two-dimensional series needs phi")
                total = total + c * np.exp(1j * (k[0] * np.asarray(phi) + k[1] * theta))
            else:
                total = total + c * np.exp(1j * k * theta)
        return total.real if self.real else total

    def at_phi(self, phi: float) -> "FourierSeries":
        """The theta series obtained by freezing phi; one-dimensional series are returned as is."""
        if not self.two_dim:
            return self
        out: dict[Index, complex] = {}
        for (l, j), c in self.modes.items():
            out[j] = out.get(j, 0j) + c * np.exp(1j * l * phi)
        return FourierSeries(out, real=False)._realified(self.real)

    def cos_coefficient(self, k: int) -> float:
        """(1/pi) integral of h cos(k theta), one-dimensional series."""
        return float((self.coefficient(k) + self.coefficient(-k)).real)

    def sin_coefficient(self, k: int) -> float:
        return float((1j * (self.coefficient(k) - self.coefficient(-k))).real)

    # Algebra

    def __add__(self, other: "FourierSeries") -> "FourierSeries":
        modes = dict(self.modes)
        for k, v in other.modes.items():
            modes[k] = modes.get(k, 0j) + v
        return FourierSeries(modes, real=self.real and other.real)

    def __neg__(self) -> "FourierSeries":
        return FourierSeries({k: -v for k, v in self.modes.items()}, real=self.real)

    def __sub__(self, other: "FourierSeries") -> "FourierSeries":
        return self + (-other)

    def __mul__(self, scalar: complex) -> "FourierSeries":
        real = self.real and complex(scalar).imag == 0
        return FourierSeries({k: scalar * v for k, v in self.modes.items()}, real=real)

    __rmul__ = __mul__

    def map_theta(self, multiplier: Callable[[int], complex]) -> "FourierSeries":
        """Apply a Fourier multiplier acting on the theta index."""
        out = {}
        for k, v in self.modes.items():
            m = multiplier(_theta_index(k))
            if m != 0:
                out[k] = m * v
        return FourierSeries(out, real=False)._realified(self.real)

    def derivative(self, axis: Literal["theta", "phi"] = "theta") -> "FourierSeries":
        if axis == "theta":
            return self.map_theta(lambda j: 1j * j)
        if not self.two_dim:
            return FourierSeries({}, real=self.real)
        out = {k: 1j * k[0] * v for k, v in self.modes.items() if k[0] != 0}
        return FourierSeries(out, real=False)._realified(self.real)

    def times_cos(self) -> "FourierSeries":
        """Product with cos(theta)."""
        out: dict[Index, complex] = {}
        for k, v in self.modes.items():
            for shift in (-1, 1):
                kk = _shift_theta(k, shift)
                out[kk] = out.get(kk, 0j) + 0.5 * v
        return FourierSeries(out, real=self.real)

    def inner(self, other: "FourierSeries") -> complex:
        """Normalized L2 product: mean of u * conj(v)."""
        return sum(v * other.coefficient(k).conjugate() for k, v in self.modes.items())

    def norm(self) -> float:
        return math.sqrt(sum(abs(v) ** 2 for v in self.modes.values()))

    def theta_mean(self) -> "FourierSeries":
        return FourierSeries({k: v for k, v in self.modes.items() if _theta_index(k) == 0}, self.real)

    def truncated(self, n: int) -> "FourierSeries":
        """Keep modes with every index component at most n in modulus."""
        keep = {
            k: v
            for k, v in self.modes.items()
            if all(abs(i) <= n for i in (k if isinstance(k, tuple) else (k,)))
        }
        return FourierSeries(keep, real=self.real)

    def _realified(self, real: bool) -> "FourierSeries":
        if not real:
            return self
        try:
            return FourierSeries(self.modes, real=True)
        except DomainError:
            return self


def _neg(k: Index) -> Index:
    return (-k[0], -k[1]) if isinstance(k, tuple) else -k


def _theta_index(k: Index) -> int:
    return k[1] if isinstance(k, tuple) else k


def _shift_theta(k: Index, shift: int) -> Index:
    return (k[0], k[1] + shift) if isinstance(k, tuple) else k + shift


def _symmetrize(modes: dict, k: Index) -> complex:
    return 0.5 * (modes[k] + modes.get(_neg(k), 0j).conjugate())


# Projections and the Hilbert transform


def project(series: FourierSeries, k: int, part: Literal["cos", "sin"]) -> FourierSeries:
    """Single-mode projection onto cos(k theta) or sin(k theta), mode by mode in phi."""
    if k < 1:
        raise DomainError("projection mode must be >= 1")
    out: dict[Index, complex] = {}
    ls = {key[0] for key in series.modes} if series.two_dim else {None}
    for l in ls:
        plus = (l, k) if l is not None else k
        minus = (l, -k) if l is not None else -k
        cp, cm = series.coefficient(plus), series.coefficient(minus)
        if part == "cos":
            out[plus] = out[minus] = 0.5 * (cp + cm)
        else:
            out[plus], out[minus] = 0.5 * (cp - cm), -0.5 * (cp - cm)
    return FourierSeries({key: v for key, v in out.items() if v != 0}, real=series.real)


def hilbert(series: FourierSeries) -> FourierSeries:
    """Periodic Hilbert transform, multiplier i sign(j). The theta mean is annihilated."""
    if series.theta_mean().norm() > 1e-14 * max(series.norm(), 1.0):
        logger.warning("hilbert applied to a series with non-zero mean; the mean is dropped")
    return series.map_theta(lambda j: 1j * np.sign(j))


def hilbert_pv(h: Callable[[np.ndarray], np.ndarray], theta: float, n: int = 256) -> float:
    """Principal-value quadrature of the mean of h(eta) cot((eta - theta) / 2).

    The subtracted integrand (h(eta) - h(theta)) cot(...) is smooth and
    periodic, so a shifted trapezoid rule converges spectrally.
    """
    eta = theta + 2.0 * np.pi * (np.arange(n) + 0.5) / n
    values = (h(eta) - h(np.array([theta]))[0]) / np.tan(0.5 * (eta - theta))
    return float(np.mean(values))


# Log multipliers


def lambda_multiplier(m: int, n: int) -> float:
    """Fourier multiplier of the convolution with -|sin(x/2)|^m ln|sin(x/2)|.

    Closed form from the derivative in a of the mean of |sin(x/2)|^a cos(n x),
    (-1)^n Gamma(a+1) / (2^a Gamma(a/2-n+1) Gamma(a/2+n+1)). For even m = 2k
    and |n| > k the Gamma pole gives (-1)^k (2k)! Gamma(n-k) / (2^(2k+1) Gamma(n+k+1)).
    """
    if m < 0:
        raise DomainError("m must be >= 0")
    n = abs(int(n))
    if m % 2 == 0 and n > m // 2:
        k = m // 2
        log_mag = gammaln(2 * k + 1) + gammaln(n - k) - (2 * k + 1) * math.log(2.0) - gammaln(n + k + 1)
        return (-1) ** k * math.exp(log_mag)
    a = 0.5 * m - n + 1.0
    b = 0.5 * m + n + 1.0
    log_mag = gammaln(m + 1) - m * math.log(2.0) - gammaln(a) - gammaln(b)
    F = (-1) ** n * gammasgn(a) * math.exp(log_mag)
    bracket = -math.log(2.0) + digamma(m + 1) - 0.5 * digamma(a) - 0.5 * digamma(b)
    return float(-F * bracket)


def coefficient_I(m: int, n: int) -> float:
    """(1/pi) integral over [0, pi] of sin^m(x/2) ln sin(x/2) cos(n x), closed form.

    Taken with a plus sign, so coefficient_I(m, n) = -lambda_multiplier(m, n)
    and coefficient_I(2, j) = 1 / (4 j (j^2 - 1)). The minus-sign form is
    the multiplier of the -|sin|^m ln|sin| kernel, see lambda_multiplier.
    """
    return -lambda_multiplier(m, n)


def coefficient_I_quadrature(m: int, n: int) -> float:
    """Direct quadrature of the coefficient_I integral, with an algebraic-log weight at 0."""

    def smooth(x: float) -> float:
        return math.sin(0.5 * x) ** m * math.cos(n * x)

    def remainder(x: float) -> float:
        if x == 0:
            return smooth(x) * math.log(0.5)
        return smooth(x) * math.log(math.sin(0.5 * x) / x)

    log_part, _ = quad(smooth, 0.0, math.pi, weight="alg-loga", wvar=(0.0, 0.0), limit=400)
    rest, _ = quad(remainder, 0.0, math.pi, epsabs=1e-14, epsrel=1e-13, limit=400)
    return (log_part + rest) / math.pi


def asymptotic_constant(m: int) -> float:
    """Large-n limit of lambda_multiplier(m, n) n^(m+1), divided by ln n when m is odd."""
    k = m // 2
    if m % 2 == 0:
        return (-1) ** k * math.factorial(m) / 2 ** (m + 1)
    return -((-1) ** k) * math.factorial(m) / (math.pi * 2**m)


def lambda_m(series: FourierSeries, m: int) -> FourierSeries:
    """Apply the log convolution operator of order m."""
    return series.map_theta(lambda j: lambda_multiplier(m, j))


def diagonal_eigenvalue(j: int) -> float:
    """d_j with d/dtheta Lambda_2 e^(ij theta) = i d_j e^(ij theta)."""
    if abs(j) < 2:
        raise DomainError("d_j is defined for |j| >= 2")
    return -j / (4.0 * (j * j - 1) * abs(j))


# Finite-rank operators of the mode-one analysis


def op_S(series: FourierSeries, g3: float) -> FourierSeries:
    """S[h] = -g3 mean_eta (cos(theta + 2 eta) + cos(2 theta + eta)) h(eta)."""
    c = series.coefficient
    out = {
        1: -0.5 * g3 * c(-2),
        -1: -0.5 * g3 * c(2),
        2: -0.5 * g3 * c(-1),
        -2: -0.5 * g3 * c(1),
    }
    return FourierSeries({k: v for k, v in out.items() if v != 0}, real=series.real)


def op_Hu0(series: FourierSeries, g3: float) -> FourierSeries:
    """d/dtheta (u Lambda_0 h + Lambda_0 (u h)) with u = 4 g3 cos(theta)."""
    lam0 = lambda_m(series, 0)
    first = lam0.times_cos() * (4.0 * g3)
    second = lambda_m(series.times_cos() * (4.0 * g3), 0)
    return (first + second).derivative()


def op_Q(
    series: FourierSeries,
    series_star: FourierSeries,
    aux: AuxFunctions | Mapping[str, float],
    index: int = 0,
) -> FourierSeries:
    """First-mode interaction operator Q = -A cos(theta) + B sin(theta).

    A = (2 p11)^(-3/2) h_1c / 16 + q1 h*_1c + q2 h*_1s and
    B = -3 (2 p11)^(-3/2) h_1s / 16 + q3 h*_1c + q4 h*_1s, where h* is the
    companion of h on the other ring.
    """
    coeffs = aux.at(index) if isinstance(aux, AuxFunctions) else aux
    w = (2.0 * coeffs["p11"]) ** -1.5
    h1c, h1s = series.cos_coefficient(1), series.sin_coefficient(1)
    s1c, s1s = series_star.cos_coefficient(1), series_star.sin_coefficient(1)
    A = w * h1c / 16.0 + coeffs["q1"] * s1c + coeffs["q2"] * s1s
    B = -3.0 * w * h1s / 16.0 + coeffs["q3"] * s1c + coeffs["q4"] * s1s
    return FourierSeries.from_cos_sin(cos={1: -A}, sin={1: B})


# Disk integrals with a boundary singularity


def _disk_integral(func: Callable[[np.ndarray, np.ndarray], np.ndarray], eta0: float, resolution: int) -> float:
    rho, eta, w = boundary_point_rule(eta0, resolution)
    return float(np.dot(w, func(rho, eta) * rho))


def integral_identities(theta: float = 0.7, resolution: int = 24) -> list[IdentityCheck]:
    """Evaluate the disk integral identities used in the contour expansions."""

    def dist2(rho, eta, th=0.0):
        return 1.0 + rho**2 - 2.0 * rho * np.cos(eta - th)

    ct, st = math.cos(theta), math.sin(theta)
    cp = lambda r, e: ct + r * np.cos(e)  # noqa: E731
    cm = lambda r, e: ct - r * np.cos(e)  # noqa: E731
    sm = lambda r, e: st - r * np.sin(e)  # noqa: E731
    d2 = lambda r, e: dist2(r, e, theta)  # noqa: E731
    mean = 1.0 / (2.0 * math.pi)

    cases = [
        ("log", lambda r, e: 0.5 * np.log(dist2(r, e)), 0.0, 0.0, True),
        ("log_mode1", lambda r, e: np.log(dist2(r, e)) * np.cos(e) * r, 0.0, -0.5 * math.pi, True),
        ("log_mode2", lambda r, e: np.log(dist2(r, e)) * np.cos(2 * e) * r**2, 0.0, -math.pi / 6, True),
        ("poisson", lambda r, e: (1.0 - r * np.cos(e)) / dist2(r, e), 0.0, math.pi, True),
        ("cos_cos", lambda r, e: mean * cm(r, e) ** 2 / d2(r, e), theta,
         0.25 + math.cos(2 * theta) / 8, True),
        ("cos_sin", lambda r, e: mean * cp(r, e) * sm(r, e) / d2(r, e), theta,
         3.0 / 8.0 * math.sin(2 * theta), True),
        ("cos_cos3", lambda r, e: mean * cp(r, e) * cm(r, e) ** 3 / d2(r, e) ** 2, theta,
         3.0 / 16.0 + math.cos(2 * theta) / 4, False),
        ("cos_cos_sin2", lambda r, e: mean * cp(r, e) * cm(r, e) * sm(r, e) ** 2 / d2(r, e) ** 2,
         theta, 1.0 / 16.0 + math.cos(2 * theta) / 8, False),
        ("cos_cos2_sin", lambda r, e: mean * cp(r, e) * cm(r, e) ** 2 * sm(r, e) / d2(r, e) ** 2,
         theta, math.sin(2 * theta) / 16, False),
        ("cos_cos2", lambda r, e: mean * cp(r, e) * cm(r, e) ** 2 / d2(r, e), theta,
         0.25 * math.cos(theta) + math.cos(3 * theta) / 12, True),
    ]
    report = []
    for name, func, eta0, expected, required in cases:
        value = _disk_integral(func, eta0, resolution)
        report.append(
            IdentityCheck(
                name=name,
                quadrature=value,
                expected=expected,
                deviation=abs(value - expected),
                required=required,
            )
        )
    return report


# Small divisors


def chi_cutoff(x):
    """Smooth cut-off: 0 for |x| <= 1/3, 1 for |x| >= 1/2."""
    t = np.clip((np.abs(np.asarray(x, dtype=float)) - 1.0 / 3.0) * 6.0, 0.0, 1.0)

    def bump(u):
        with np.errstate(divide="ignore"):
            return np.where(u > 0, np.exp(-1.0 / np.where(u > 0, u, 1.0)), 0.0)

    a, b = bump(t), bump(1.0 - t)
    out = a / (a + b)
    return float(out) if np.ndim(x) == 0 else out


def _divisor_threshold(j, dio: DiophantineParams):
    return dio.nu * np.maximum(1.0, np.abs(j)) ** (-dio.tau)


def transport_invert(
    h: FourierSeries, eps1: float, omega: float, c: float, dio: DiophantineParams
) -> tuple[FourierSeries, TransportReport]:
    """Regularized inverse of eps1 omega d/dphi + c d/dtheta on (phi, theta) modes.

    Each retained mode (|l|, |j| <= ncut) is divided by i (eps1 omega l + j c)
    after multiplication by the cut-off chi(divisor / (nu <j>^-tau)).
    """
    out: dict[Index, complex] = {}
    cut: list[tuple[int, int]] = []
    cut_sq = 0.0
    resid_sq = 0.0
    for key, value in h.modes.items():
        l, j = key if isinstance(key, tuple) else (0, key)
        if abs(l) > dio.ncut or abs(j) > dio.ncut:
            continue
        d = eps1 * omega * l + j * c
        weight = chi_cutoff(d / _divisor_threshold(j, dio))
        if weight < 1.0:
            if value != 0:
                cut.append((l, j))
            cut_sq += abs((1.0 - weight) * value) ** 2
        if weight > 0:
            rho = -1j * weight * value / d
            out[key] = rho
            # substitution check: L rho = i d rho
            resid_sq += abs(1j * d * rho - weight * value) ** 2
    if cut:
        logger.warning("transport_invert cut %d resonant modes", len(cut))
    residual = math.sqrt(resid_sq + cut_sq)
    report = TransportReport(
        residual=residual, cut_modes=cut, cut_norm=math.sqrt(cut_sq), diophantine=not cut
    )
    return FourierSeries(out, real=False)._realified(h.real), report


def apply_transport(rho: FourierSeries, eps1: float, omega: float, c: float) -> FourierSeries:
    """(eps1 omega d/dphi + c d/dtheta) rho."""
    out = {}
    for key, value in rho.modes.items():
        l, j = key if isinstance(key, tuple) else (0, key)
        out[key] = 1j * (eps1 * omega * l + j * c) * value
    return FourierSeries(out, real=False)._realified(rho.real)


def transport_expansion(f: FourierSeries, eps1: float, omega: float, c: float, order: int) -> FourierSeries:
    """Truncated Neumann expansion c^-1 sum_k (-eps1 omega / c)^k d_phi^k d_theta^(-k-1) f."""
    out = {}
    for key, value in f.modes.items():
        l, j = key if isinstance(key, tuple) else (0, key)
        if j == 0:
            continue
        total = sum((-eps1 * omega / c) ** k * (1j * l) ** k / (1j * j) ** (k + 1) for k in range(order + 1))
        out[key] = value * total / c
    return FourierSeries(out, real=False)._realified(f.real)


def mu_j2(j: int, c1: float, c2: float, c3: float, eps: float) -> float:
    """Normal-form eigenvalue c1 j + c2 sign(j) + eps^2 c3 d_j."""
    d = diagonal_eigenvalue(j) if abs(j) >= 2 else 0.0
    return c1 * j + c2 * np.sign(j) + eps**2 * c3 * d


def divisor_scan(
    eps1: float,
    omega_fn: Callable[[float], float],
    c_fn: Callable[[float], float],
    lambda_grid: Iterable[float],
    dio: DiophantineParams,
    mu_fn: Callable[[float, np.ndarray], np.ndarray] | None = None,
) -> pd.DataFrame:
    """Check the Diophantine condition on every (l, j), j != 0, |l|, |j| <= ncut, per lambda.

    Returns:
        DataFrame with columns lambda, admissible, worst_divisor, worst_mode_l,
        worst_mode_j; attrs["admissible_fraction"] holds the admissible share.
    """
    n = dio.ncut
    ls, js = np.meshgrid(np.arange(-n, n + 1), np.arange(-n, n + 1), indexing="ij")
    # the bound nu |j|^-tau only constrains j != 0
    mask = js != 0
    ls, js = ls[mask], js[mask]
    weight = np.maximum(1.0, np.abs(js)) ** dio.tau
    rows = []
    for lam in lambda_grid:
        spectrum = mu_fn(lam, js) if mu_fn is not None else js * c_fn(lam)
        normalized = np.abs(eps1 * omega_fn(lam) * ls + spectrum) * weight
        worst = int(np.argmin(normalized))
        rows.append(
            {
                "lambda": float(lam),
                "admissible": int(normalized[worst] > dio.nu),
                "worst_divisor": float(normalized[worst]),
                "worst_mode_l": int(ls[worst]),
                "worst_mode_j": int(js[worst]),
            }
        )
    df = pd.DataFrame(rows)
    df.attrs["admissible_fraction"] = float(df["admissible"].mean()) if len(df) else 0.0
    return df
