"""Command-line scenarios: configuration parsing, runs, CSV tables and SVG figures."""

import argparse
import json
import logging
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from functools import cache
from pathlib import Path
from typing import Callable, Iterable

import numpy as np
import pandas as pd
from pydantic import ValidationError

from . import contour, filaments, kernel, modeone, plotting, specfun, spectral
from .config import config
from .errors import LeapfrogError, UsageError
from .models import CheckResult, DiophantineParams, PhysicalParams, RunConfig
from .validators import (
    validate_epsilon,
    validate_positive,
    validate_range,
    validate_threads,
    validate_tolerance,
)

logger = logging.getLogger(__name__)

COMMANDS = ("filaments", "period", "rings", "kernel-check", "spectral-check", "modeone", "divisors")

KEY_ALIASES = {"lambda": "lam", "dt_tol": "tol", "output": "output_dir"}
COMMAND_ALIASES = {"period-table": "period", "modeone-scan": "modeone", "divisor-scan": "divisors"}

DEFAULTS: dict[str, dict[str, object]] = {
    "filaments": {"epsilon": 0.05, "kappa": 0.4, "lam": 1.0},
    "period": {"lambda_min": 0.5, "lambda_max": 2.0, "kappa_min": 0.2, "kappa_max": 1.0, "n_lambda": 5, "n_kappa": 5},
    "rings": {"epsilon": 0.05, "kappa": 0.4, "lam": 1.0},
    "kernel-check": {},
    "spectral-check": {},
    "modeone": {"kappa": 0.4, "lambda_min": 0.05, "lambda_max": 1.0, "n_lambda": 16},
    "divisors": {"kappa": 0.4, "lambda_min": 0.5, "lambda_max": 2.0, "n_lambda": 200},
}

Outcome = tuple[list[Path], list[CheckResult]]

# Central-difference step of the harmonicity check (error O(h^2))
HARMONIC_STEP = 5e-4


# Configuration


def _normalize_key(key: str) -> str:
    key = key.strip().replace("-", "_")
    return KEY_ALIASES.get(key, key)


def _read_config_file(path: Path) -> dict[str, str]:
    if not Path(path).exists():
        raise UsageError(f"config file not found: {path}", key="config")
    entries: dict[str, str] = {}
    for number, raw in enumerate(Path(path).read_text().splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"line {number}: expected key=value", key=line)
        key, value = line.split("=", 1)
        key = _normalize_key(key)
        if key in entries:
            raise UsageError(f"duplicate key '{key}' on line {number}", key=key)
        entries[key] = value.strip()
    return entries


def parse_flags(tokens: Iterable[str]) -> dict[str, str]:
    """`--key value` and `--key=value` pairs into a dict."""
    tokens = list(tokens)
    flags: dict[str, str] = {}
    i = 0
    while i < len(tokens):
        token = tokens[i]
        if not token.startswith("--"):
            raise UsageError(f"unexpected argument '{token}'", key=token)
        if "=" in token:
            key, value = token[2:].split("=", 1)
            i += 1
        else:
            if i + 1 >= len(tokens):
                raise UsageError(f"flag '{token}' needs a value", key=token[2:])
            key, value = token[2:], tokens[i + 1]
            i += 2
        key = _normalize_key(key)
        if key in flags:
            raise UsageError(f"duplicate key '{key}'", key=key)
        flags[key] = value
    return flags


def _check(ok_message: tuple[bool, str], key: str) -> None:
    ok, message = ok_message
    if not ok:
        raise UsageError(f"{key}: {message}", key=key)


def parse_config(
    path: Path | None = None,
    overrides: dict[str, str] | None = None,
    scenario: str | None = None,
) -> RunConfig:
    """Merge a key=value file, flag overrides and scenario defaults into a RunConfig.

    Raises:
        UsageError: naming the unknown, duplicated or invalid key
    """
    values: dict[str, object] = dict(_read_config_file(path)) if path else {}
    values.update(overrides or {})
    if scenario is not None:
        values["scenario"] = scenario
    if "scenario" not in values:
        raise UsageError("missing key 'scenario'", key="scenario")
    values["scenario"] = COMMAND_ALIASES.get(str(values["scenario"]), values["scenario"])
    if values["scenario"] not in COMMANDS:
        raise UsageError(f"unknown scenario '{values['scenario']}'", key="scenario")

    unknown = sorted(set(values) - set(RunConfig.model_fields))
    if unknown:
        raise UsageError(f"unknown key '{unknown[0]}'", key=unknown[0])

    if "epsilon" in values:
        _check(validate_epsilon(values["epsilon"]), "epsilon")
    for key in ("kappa", "lam"):
        if key in values:
            _check(validate_positive(values[key], key), key)
    for name in ("lambda", "kappa"):
        lo, hi = f"{name}_min", f"{name}_max"
        if lo in values and hi in values:
            _check(validate_range(values[lo], values[hi], name), lo)
    if "tol" in values:
        _check(validate_tolerance(values["tol"]), "tol")

    merged = {"seed": config.RANDOM_SEED, "output_dir": config.OUTPUT_DIR, **DEFAULTS[str(values["scenario"])], **values}
    try:
        return RunConfig(**merged)
    except ValidationError as e:
        first = e.errors()[0]
        key = str(first["loc"][0]) if first["loc"] else "config"
        raise UsageError(f"{key}: {first['msg']}", key=key) from e


# Helpers


def _params(cfg: RunConfig) -> PhysicalParams:
    return PhysicalParams(eps=cfg.epsilon, kappa=cfg.kappa, lam=cfg.lam)


def _result(scenario: str, check: str, ok: bool, detail: str) -> CheckResult:
    return CheckResult(scenario=scenario, check=check, status="pass" if ok else "fail", detail=detail)


def _write_csv(df: pd.DataFrame, path: Path) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    df.to_csv(path, index=False)
    return path


def _write_checks(checks: list[CheckResult], path: Path) -> Path:
    return _write_csv(pd.DataFrame([c.model_dump() for c in checks]), path)


def _pool_map(func: Callable, cells: list) -> list:
    """Ordered map over independent cells, on a process pool when LEAPFROG_THREADS > 1."""
    _check(validate_threads(config.THREADS), "LEAPFROG_THREADS")
    workers = min(config.THREADS, len(cells))
    if workers <= 1:
        return [func(cell) for cell in cells]
    with ProcessPoolExecutor(max_workers=workers) as executor:
        return list(executor.map(func, cells))


def _ratio_window(errors: list[float], lo: float, hi: float) -> tuple[bool, str]:
    ratios = [a / b for a, b in zip(errors[:-1], errors[1:])]
    ok = all(lo <= r <= hi for r in ratios)
    return ok, "ratios " + ", ".join(f"{r:.3f}" for r in ratios) + f" in [{lo}, {hi}]"


# Scenarios


def run_filaments(cfg: RunConfig, out: Path) -> Outcome:
    """Filament pair over several periods, in the lab and the translating frame."""
    params = _params(cfg)
    T = filaments.measure_period(params, cfg.model, cfg.tol)
    print(f"Measured period T = {T:.12g}")
    traj = filaments.integrate(filaments.initial_pair(params), params, "physical", cfg.n_periods * T, cfg.tol)
    U = filaments.drift_speed(params, T, traj)
    omega = filaments.frequency_omega(params, T, traj)
    print(f"Drift speed U = {U:.12g}, omega = {omega:.12g}")

    lab = filaments.trajectory_frame(traj)
    moving = filaments.trajectory_frame(traj, U)
    files = [_write_csv(lab, out / "trajectory_lab.csv"), _write_csv(moving, out / "trajectory_moving.csv")]
    summary = pd.DataFrame(
        [
            {
                "epsilon": params.eps,
                "kappa": params.kappa,
                "lambda": params.lam,
                "T": T,
                "T0": filaments.period_T0(params.lam, params.kappa),
                "U": U,
                "U_expansion": filaments.drift_speed_expansion(params, traj, T),
                "U_limit": 1.0 / (4.0 * math.sqrt(2.0 * params.kappa)),
                "omega": omega,
                "omega_limit": filaments.omega_limit(params.lam, params.kappa),
            }
        ]
    )
    files.append(_write_csv(summary, out / "filaments_summary.csv"))
    if cfg.svg:
        files.append(plotting.filament_paths(lab, out / "filaments_lab.svg", "lab frame"))
        files.append(plotting.filament_paths(moving, out / "filaments_moving.svg", "translating frame"))
        files.append(plotting.rho_exchange(lab, out / "rho_exchange.svg"))

    H = traj.logs["H"]
    sum_rho = traj.logs["sum_rho"]
    rho_drift = float(np.max(np.abs(sum_rho - sum_rho[0])))
    h_drift = float(np.max(np.abs(H - H[0])) / abs(H[0]))
    shift = np.array([0.0, U * T, 0.0, U * T])
    closure = float(np.max(np.abs(traj(T) - shift - traj(0.0))))
    exchange = filaments.check_symmetries(traj, T)
    checks = [
        _result("filaments", "sum_rho_drift", rho_drift < 1e-10, f"{rho_drift:.3e} < 1e-10"),
        _result("filaments", "hamiltonian_drift", h_drift < 1e-8, f"{h_drift:.3e} < 1e-8"),
        _result("filaments", "translating_closure", closure < 1e-4, f"{closure:.3e} < 1e-4"),
        _result("filaments", "half_period_exchange", exchange.exchange_rho < 1e-6, f"{exchange.exchange_rho:.3e} < 1e-6"),
    ]
    return files, checks


def _period_cell(cell: tuple[float, float, float]) -> dict[str, float]:
    lam, kappa, tol = cell
    params = PhysicalParams(eps=0.01, kappa=kappa, lam=lam)
    T0 = filaments.period_T0(lam, kappa)
    measured = filaments.measure_period(params, "limiting", tol)
    lo, hi = filaments.period_bounds(lam, kappa)
    h = 1e-5 * lam
    slope = (filaments.period_T0(lam + h, kappa) - filaments.period_T0(lam - h, kappa)) / (2.0 * h)
    return {
        "lambda": lam,
        "kappa": kappa,
        "T0": T0,
        "T_measured": measured,
        "rel_error": abs(measured - T0) / T0,
        "lower_bound": lo,
        "upper_bound": hi,
        "dT0_dlambda": slope,
    }


def run_period(cfg: RunConfig, out: Path) -> Outcome:
    """Period formula against the integrated limiting system on a (lambda, kappa) grid."""
    lams = np.linspace(cfg.lambda_min, cfg.lambda_max, cfg.n_lambda)
    kappas = np.linspace(cfg.kappa_min, cfg.kappa_max, cfg.n_kappa)
    cells = [(float(l), float(k), cfg.tol) for l in lams for k in kappas]
    print(f"Sweeping {len(cells)} cells on up to {config.THREADS} workers...")
    table = pd.DataFrame(_pool_map(_period_cell, cells))
    files = [_write_csv(table, out / "period_table.csv")]

    fine = [
        (float(l), float(k))
        for l in np.linspace(cfg.lambda_min, cfg.lambda_max, 20)
        for k in np.linspace(cfg.kappa_min, cfg.kappa_max, 20)
    ]
    strict = all(lo < filaments.period_T0(l, k) < hi for l, k in fine for lo, hi in [filaments.period_bounds(l, k)])
    increasing = all(
        filaments.period_T0(l * (1 + 1e-5), k) > filaments.period_T0(l * (1 - 1e-5), k) for l, k in fine
    )
    if cfg.svg:
        files.append(
            plotting.line_plot(
                lams,
                {rf"$T_0,\ \kappa={k:.2f}$": part["T0"].to_numpy() for k, part in table.groupby("kappa")},
                out / "period_table.svg",
                xlabel=r"$\lambda$",
            )
        )
    worst = float(table["rel_error"].max())
    checks = [
        _result("period", "formula_vs_integration", worst < 1e-6, f"{worst:.3e} < 1e-6"),
        _result("period", "strict_bounds", strict, "20x20 grid"),
        _result("period", "increasing_in_lambda", increasing, "20x20 grid"),
    ]
    return files, checks


def _enclosed_area(x: np.ndarray, y: np.ndarray) -> float:
    """Area inside a closed curve sampled uniformly in its parameter, by spectral derivatives."""
    n = x.size
    k = np.fft.fftfreq(n, 1.0 / n)
    if n % 2 == 0:
        k[n // 2] = 0.0
    dx = np.fft.ifft(1j * k * np.fft.fft(x)).real
    dy = np.fft.ifft(1j * k * np.fft.fft(y)).real
    return math.pi * abs(float(np.mean(x * dy - y * dx)))


def run_rings(cfg: RunConfig, out: Path) -> Outcome:
    """Five boundary snapshots of both rings over one period, deformed by the h0 profile."""
    params = _params(cfg)
    orbit = contour.OrbitPhase.from_params(params, cfg.tol)
    shape = contour.RingShape(eps=params.eps, f=contour.approx_profile_series(params, orbit))
    shape.check()
    taus = orbit.T * np.arange(5) / 5
    snapshots = [contour.ring_snapshot(params, orbit, shape, float(t)) for t in taus]
    table = pd.concat(snapshots, ignore_index=True)
    files = [_write_csv(table, out / "rings.csv")]
    if cfg.svg:
        bounds = (table["y"].to_numpy(), table["x"].to_numpy())
        for i, snap in enumerate(snapshots):
            files.append(plotting.ring_frame(snap, out / f"rings_{i}.svg", bounds))

    target = math.pi * params.eps**2
    worst = max(
        abs(_enclosed_area(part["x"].to_numpy(), part["y"].to_numpy()) - target) / target
        for _, part in table.groupby(["tau", "ring_id"])
    )
    checks = [_result("rings", "core_area", worst < 1e-6, f"relative area error {worst:.3e} < 1e-6")]
    return files, checks


def run_kernel_check(cfg: RunConfig, out: Path) -> Outcome:
    """J function, Green kernel and near-diagonal expansion checks."""
    checks = []
    exact = specfun.eval_J_series(1.0, 0) == specfun.LN8 - 2.0
    checks.append(_result("kernel-check", "series_at_one", exact, "eval_J_series(1, 0) == ln 8 - 2"))

    ode = max(specfun.check_J_ode(s) for s in (0.1, 0.5, 1.0, 3.0, 10.0))
    checks.append(_result("kernel-check", "J_ode", ode < 1e-5, f"{ode:.3e} < 1e-5"))

    legendre = max(
        abs(specfun.eval_J(s) - specfun.legendre_Q_half(0.5 * s + 1.0)) / specfun.eval_J(s) for s in (0.01, 0.5, 2.0, 20.0)
    )
    checks.append(_result("kernel-check", "J_vs_legendre_Q", legendre < 1e-10, f"{legendre:.3e} < 1e-10"))

    harmonic = max(
        kernel.check_harmonic(p, q, HARMONIC_STEP)
        for p, q in (((1.0, 0.5), (0.6, -0.5)), ((0.8, 0.0), (1.6, 0.4)), ((1.2, -0.3), (0.5, 0.6)))
    )
    checks.append(_result("kernel-check", "harmonic", harmonic < 1e-5, f"{harmonic:.3e} < 1e-5"))

    Z, X, Y = (1.0, 0.2), (0.3, -0.4), (-0.5, 0.7)
    epsilons = (1e-2, 5e-3, 2.5e-3)
    for variant in ("plain", "anisotropic"):
        errors = [
            abs(kernel.expand_G(Z, X, Y, e, variant) - kernel.eval_G(*kernel.expansion_points(Z, X, Y, e, variant)))
            for e in epsilons
        ]
        ok, detail = _ratio_window(errors, 6.0, 10.0)
        checks.append(_result("kernel-check", f"expansion_{variant}", ok, detail))
    errors = [
        float(
            np.linalg.norm(
                kernel.expand_grad_G(Z, X, Y, e) - kernel.grad_G(*kernel.expansion_points(Z, X, Y, e, "anisotropic"))
            )
        )
        for e in epsilons
    ]
    ok, detail = _ratio_window(errors, 3.4, 5.0)
    checks.append(_result("kernel-check", "expansion_gradient", ok, detail))
    return [_write_checks(checks, out / "kernel_check.csv")], checks


def run_spectral_check(cfg: RunConfig, out: Path) -> Outcome:
    """Multiplier coefficients, Hilbert transform, disk identities and the transport inverter."""
    rng = np.random.default_rng(cfg.seed)
    checks = []

    eig = max(abs(spectral.coefficient_I(2, j) - 1.0 / (4.0 * j * (j * j - 1))) for j in range(2, 11))
    checks.append(_result("spectral-check", "lambda2_eigenvalues", eig < 1e-10, f"{eig:.3e} < 1e-10"))

    coeff = max(
        abs(spectral.coefficient_I(m, n) - spectral.coefficient_I_quadrature(m, n)) for m in range(5) for n in range(13)
    )
    checks.append(_result("spectral-check", "coefficients_vs_quadrature", coeff < 1e-8, f"{coeff:.3e} < 1e-8"))

    a, b = rng.standard_normal(8), rng.standard_normal(8)
    series = spectral.FourierSeries.from_cos_sin(
        cos={k + 1: a[k] for k in range(8)}, sin={k + 1: b[k] for k in range(8)}
    )
    transformed = spectral.hilbert(series)
    pv = max(
        abs(spectral.hilbert_pv(series.sample, th) - float(transformed.sample(th)))
        for th in np.linspace(0.1, 6.0, 7)
    )
    checks.append(_result("spectral-check", "hilbert_pv", pv < 1e-8, f"{pv:.3e} < 1e-8"))

    for identity in spectral.integral_identities():
        if identity.required:
            ok = identity.deviation < 1e-6
            checks.append(_result("spectral-check", f"identity_{identity.name}", ok, f"{identity.deviation:.3e} < 1e-6"))

    modes = {}
    for l in range(-8, 9):
        for j in range(1, 9):
            value = complex(rng.standard_normal(), rng.standard_normal())
            modes[(l, j)] = value
            modes[(-l, -j)] = value.conjugate()
    h = spectral.FourierSeries(modes)
    dio = DiophantineParams(nu=cfg.diophantine_nu, tau=cfg.diophantine_tau, ncut=8)
    rho, report = spectral.transport_invert(h, 1e-3, 1.0, -0.5, dio)
    back = spectral.apply_transport(rho, 1e-3, 1.0, -0.5)
    residual = (back - h).norm()
    ok = report.diophantine and residual < 1e-12
    checks.append(_result("spectral-check", "transport_residual", ok, f"{residual:.3e} < 1e-12"))
    return [_write_checks(checks, out / "spectral_check.csv")], checks


def run_modeone(cfg: RunConfig, out: Path) -> Outcome:
    """Non-resonance function over a lambda range, with its sign changes."""
    kappa = cfg.kappa

    @cache
    def p_func(lam: float) -> float:
        return modeone.nonresonance_P(lam, kappa)

    grid = np.linspace(cfg.lambda_min, cfg.lambda_max, cfg.n_lambda)
    zeros = modeone.scan_zeros(kappa, (cfg.lambda_min, cfg.lambda_max), cfg.n_lambda, p_func)
    table = pd.DataFrame(
        {
            "lambda": grid,
            "P": [p_func(float(l)) for l in grid],
            "P_minus_1_bound": [modeone.bounds(float(l), kappa)["P_minus_1"] for l in grid],
        }
    )
    files = [
        _write_csv(table, out / "modeone.csv"),
        _write_csv(pd.DataFrame([z.model_dump() for z in zeros], columns=["lo", "hi", "root"]), out / "modeone_zeros.csv"),
    ]
    if cfg.svg:
        files.append(plotting.line_plot(grid, {"P": table["P"].to_numpy()}, out / "modeone.svg", xlabel=r"$\lambda$"))
    print(f"Found {len(zeros)} sign changes of P")

    coeffs = modeone.build_coefficients(float(grid[0]), kappa)
    _, residual = modeone.invert_IminusT(coeffs.rho1, coeffs)
    neumann = abs(modeone.nonresonance_from_coefficients(coeffs, K=20) - p_func(float(grid[0])))
    small = table.loc[table["lambda"] <= 0.2, "P"]
    within = bool(((small - 1.0).abs() < 1.0).all())
    checks = [
        _result("modeone", "inversion_residual", residual < 1e-10, f"{residual:.3e} < 1e-10"),
        _result("modeone", "neumann_agreement", neumann < 1e-8, f"{neumann:.3e} < 1e-8"),
        _result("modeone", "star_invariance", coeffs.star_defect() < 1e-8, f"{coeffs.star_defect():.3e} < 1e-8"),
        _result("modeone", "small_lambda_bound", within, "|P - 1| < 1 for lambda <= 0.2"),
    ]
    return files, checks


def run_divisors(cfg: RunConfig, out: Path) -> Outcome:
    """Share of lambda excluded by the Diophantine condition as eps decreases.

    The rotation c(lambda) = (1 - lambda^2 / (8 kappa)) / 2 stands in for the
    normal-form coefficient, which has no closed form.
    """
    kappa = cfg.kappa
    epsilons = [cfg.epsilon / 10**k for k in range(3)] if cfg.epsilon else [1e-2, 1e-3, 1e-4]
    grid = np.linspace(cfg.lambda_min, cfg.lambda_max, cfg.n_lambda)
    omega = cache(lambda lam: filaments.omega_limit(lam, kappa))
    rotation = lambda lam: 0.5 * (1.0 - lam**2 / (8.0 * kappa))  # noqa: E731

    tables, excluded = [], []
    for eps in epsilons:
        L = -math.log(eps)
        nu = min(1.0, cfg.diophantine_nu * eps**2 * L**0.75)
        dio = DiophantineParams(nu=nu, tau=cfg.diophantine_tau, ncut=64)
        df = spectral.divisor_scan(eps**2 * L, omega, rotation, grid, dio)
        excluded.append(1.0 - df.attrs["admissible_fraction"])
        df.insert(0, "epsilon", eps)
        tables.append(df)
        print(f"eps={eps:g}: excluded fraction {excluded[-1]:.4f}")
    files = [_write_csv(pd.concat(tables, ignore_index=True), out / "divisors.csv")]
    if cfg.svg:
        files.append(
            plotting.line_plot(
                np.log10(epsilons), {"excluded": np.array(excluded)}, out / "divisors.svg", xlabel=r"$\log_{10}\varepsilon$"
            )
        )
    shrinking = all(a >= b for a, b in zip(excluded[:-1], excluded[1:]))
    detail = "excluded " + ", ".join(f"{x:.4f}" for x in excluded)
    return files, [_result("divisors", "excluded_fraction_shrinks", shrinking, detail)]


RUNNERS: dict[str, Callable[[RunConfig, Path], Outcome]] = {
    "filaments": run_filaments,
    "period": run_period,
    "rings": run_rings,
    "kernel-check": run_kernel_check,
    "spectral-check": run_spectral_check,
    "modeone": run_modeone,
    "divisors": run_divisors,
}


# Entry points


def _report(record: dict) -> None:
    print(json.dumps(record), file=sys.stderr)


def run(cfg: RunConfig) -> int:
    """Dispatch a scenario; list emitted files and return the exit status.

    Returns:
        0 when every check passed, 1 on a failed check, 3 on a numerical failure
    """
    out = Path(cfg.output_dir)
    if out == config.OUTPUT_DIR:
        config.ensure_dirs()
    out.mkdir(parents=True, exist_ok=True)
    try:
        files, checks = RUNNERS[cfg.scenario](cfg, out)
    except LeapfrogError as e:
        logger.warning("scenario %s failed: %s", cfg.scenario, e)
        _report({"scenario": cfg.scenario, "check": "run", "status": "error", "detail": f"{type(e).__name__}: {e}"})
        return 3
    for path in files:
        print(path)
    failed = [c for c in checks if not c.passed]
    for c in failed:
        _report(c.model_dump())
    return 1 if failed else 0


def main(argv: list[str] | None = None) -> int:
    """CLI entry point for the leapfrog scenarios."""
    parser = argparse.ArgumentParser(
        prog="leapfrog",
        description="Leapfrogging vortex-ring numerics",
        epilog="Extra --key value flags override entries of the config file.",
    )
    parser.add_argument("command", help="One of: " + ", ".join(COMMANDS))
    parser.add_argument("--config", type=Path, default=None, help="key=value configuration file")
    args, extra = parser.parse_known_args(argv)

    logging.basicConfig(
        level=getattr(logging, config.LOG_LEVEL.upper(), logging.WARNING),
        format="%(asctime)s %(name)s %(levelname)s %(message)s",
    )

    try:
        cfg = parse_config(args.config, parse_flags(extra), scenario=args.command)
    except UsageError as e:
        print(f"\n✗ Error in configuration: {e}")
        _report({"scenario": args.command, "check": "config", "status": "error", "detail": f"{e.key}: {e}"})
        return 2

    print(f"Running {cfg.scenario} into {cfg.output_dir}")
    status = run(cfg)
    if status == 0:
        print(f"\n✓ Successfully ran {cfg.scenario}")
    else:
        print(f"\n✗ Error running {cfg.scenario}: exit status {status}")
    return status


if __name__ == "__main__":
    sys.exit(main())
