"""Command-line interface: one executable, six subcommands, bit-stable outputs.

Subcommands: simulate, signatures, generate, analyze, verify-algebra,
figure-data.  A flat key=value config file ('#' comments) may supply defaults
via --config or the NCRING_CONFIG environment variable; explicit flags win.
All data goes to files or stdout, all diagnostics to stderr.  Exit codes:
0 success, 2 validation error, 3 pipeline or insufficient-data error.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import math
import os
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .analysis import DetectionThresholds, KnownRing, detect
from .errors import (
    ConstraintUnsatisfiableError,
    FluxDomainError,
    InvalidGridError,
    InvalidParameterError,
    MeasurementFormatError,
    NCRingError,
)
from .experiment import (
    NoiseModel,
    SPACINGS,
    flux_grid,
    generate_dataset,
    read_csv,
    series_to_text,
)
from .phasespace import CODATA2018, NCParameters, theta_from_constraint, verify_algebra
from .ring import RingConfig, ground_energy_closed, persistent_current
from .signatures import signature_sweep

_VALIDATION_ERRORS = (
    InvalidParameterError,
    InvalidGridError,
    MeasurementFormatError,
    ConstraintUnsatisfiableError,
    FluxDomainError,
)

# Every key a config file may carry, with its parser.
CONFIG_KEYS = {
    "radius_m": float,
    "n_electrons": int,
    "alpha": float,
    "theta": float,
    "theta_tilde": float,
    "constraint_variant": str,
    "f_min": float,
    "f_max": float,
    "n_points": int,
    "spacing": str,
    "relative_sigma": float,
    "absolute_sigma": float,
    "seed": int,
    "output": str,
    "smoothing": str,
    "penalty": float,
    "f_floor": float,
    "exponent_tol": float,
    "amplitude_floor_rel": float,
    "amp_match_rtol": float,
    "r2_min_clean": float,
    "r2_min_noisy": float,
    "figure": int,
}

DEFAULTS = {
    "radius_m": 1e-6,
    "n_electrons": None,
    "alpha": 1.0,
    "theta": None,
    "theta_tilde": 0.0,
    "constraint_variant": "paper",
    "f_min": 0.01,
    "f_max": 0.5,
    "n_points": 64,
    "spacing": "log",
    "relative_sigma": 0.0,
    "absolute_sigma": 0.0,
    "seed": 0,
    "output": "-",
    "smoothing": "auto",
    "penalty": None,
    "figure": 1,
}

FIGURE_DEFAULT_N = {1: (10001, 50001, 100001), 2: (10000, 50000, 100000)}


def _parse_kv_file(path: str | Path, allowed: set[str]) -> dict:
    values: dict = {}
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InvalidParameterError(f"cannot read config file {path}: {exc}") from exc
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise InvalidParameterError(f"{path}:{line_no}: expected key=value, got {line!r}")
        key, _, value = line.partition("=")
        key = key.strip()
        if key not in allowed:
            raise InvalidParameterError(f"{path}:{line_no}: unknown key {key!r}")
        try:
            values[key] = CONFIG_KEYS[key](value.strip()) if key in CONFIG_KEYS else value.strip()
        except ValueError as exc:
            raise InvalidParameterError(f"{path}:{line_no}: bad value for {key}: {value!r}") from exc
    return values


def load_config(path: str | Path) -> dict:
    return _parse_kv_file(path, set(CONFIG_KEYS))


THRESHOLD_KEYS = {
    "f_floor", "exponent_tol", "amplitude_floor_rel", "amp_match_rtol",
    "r2_min_clean", "r2_min_noisy",
}


def load_thresholds(path: str | Path) -> DetectionThresholds:
    values = _parse_kv_file(path, THRESHOLD_KEYS)
    return DetectionThresholds(**values)


_UNSET = object()


class _Settings:
    """Flag > config file > built-in default, tracking the effective values."""

    def __init__(self, args: argparse.Namespace, config: dict):
        self.args = vars(args)
        self.config = config
        self.effective: dict = {}

    def get(self, key: str, fallback=_UNSET):
        value = self.args.get(key)
        if value is None:
            value = self.config.get(key)
        if value is None:
            value = DEFAULTS.get(key) if fallback is _UNSET else fallback
        self.effective[key] = value
        return value


def _fmt(value) -> str:
    if isinstance(value, float):
        return format(value, ".17g")
    return str(value)


def _config_lines(effective: dict) -> list[str]:
    return [f"# {key}={_fmt(value)}" for key, value in effective.items() if value is not None]


def _write_output(path: str, text: str) -> None:
    if path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_bytes(text.encode("ascii"))


def _log10_abs(value: float) -> float:
    if value == 0.0:
        return -math.inf
    return math.log10(abs(value))


def _ring_config(settings: _Settings) -> RingConfig:
    alpha = settings.get("alpha")
    theta_tilde = settings.get("theta_tilde")
    theta = settings.get("theta")
    variant = settings.get("constraint_variant")
    if theta is None:
        theta = theta_from_constraint(alpha, theta_tilde, CODATA2018, variant=variant)
        settings.effective["theta"] = theta
    n_electrons = settings.get("n_electrons")
    if n_electrons is None:
        raise InvalidParameterError("n_electrons is required")
    return RingConfig(
        radius=settings.get("radius_m"),
        mass=CODATA2018.m_e,
        n_electrons=n_electrons,
        nc=NCParameters(theta=theta, theta_tilde=theta_tilde, alpha=alpha),
        constants=CODATA2018,
    )


def _grid(settings: _Settings) -> np.ndarray:
    return flux_grid(
        settings.get("f_min"), settings.get("f_max"),
        settings.get("n_points"), settings.get("spacing"),
    )


def cmd_verify_algebra(settings: _Settings) -> int:
    alpha = settings.get("alpha")
    theta_tilde = settings.get("theta_tilde")
    theta = settings.get("theta")
    variant = settings.get("constraint_variant")
    if theta is None:
        theta = theta_from_constraint(alpha, theta_tilde, CODATA2018, variant=variant)
        settings.effective["theta"] = theta
    report = verify_algebra(NCParameters(theta=theta, theta_tilde=theta_tilde, alpha=alpha))
    payload = dataclasses.asdict(report)
    payload["config"] = {k: v for k, v in settings.effective.items() if k != "output"}
    _write_output(settings.get("output"), json.dumps(payload, indent=2) + "\n")
    return 0


def cmd_simulate(settings: _Settings) -> int:
    config = _ring_config(settings)
    grid = _grid(settings)
    lines = _config_lines({k: v for k, v in settings.effective.items() if k != "output"})
    lines.append("f,E_g_joule,J_ampere")
    for f in grid:
        f = float(f)
        lines.append(
            f"{_fmt(f)},{_fmt(ground_energy_closed(config, f))},{_fmt(persistent_current(config, f))}"
        )
    _write_output(settings.get("output"), "\n".join(lines) + "\n")
    return 0


_SIGNATURE_HEADER = "f,lambda,sigma,log10f,log10_abs_lambda,log10_abs_sigma"


def _signature_rows(config: RingConfig, grid: np.ndarray) -> list[str]:
    rows = []
    for point in signature_sweep(config, grid):
        rows.append(
            ",".join(
                _fmt(v)
                for v in (
                    point.f, point.lam, point.sigma,
                    math.log10(point.f), _log10_abs(point.lam), _log10_abs(point.sigma),
                )
            )
        )
    return rows


def cmd_signatures(settings: _Settings) -> int:
    config = _ring_config(settings)
    grid = _grid(settings)
    lines = _config_lines({k: v for k, v in settings.effective.items() if k != "output"})
    lines.append(_SIGNATURE_HEADER)
    lines.extend(_signature_rows(config, grid))
    _write_output(settings.get("output"), "\n".join(lines) + "\n")
    return 0


def cmd_figure_data(settings: _Settings) -> int:
    figure = settings.get("figure")
    if figure not in FIGURE_DEFAULT_N:
        raise InvalidParameterError("figure must be 1 (odd rings) or 2 (even rings)")
    requested = settings.args.get("n") or FIGURE_DEFAULT_N[figure]
    want_odd = figure == 1
    for n in requested:
        if (n % 2 == 1) != want_odd:
            raise InvalidParameterError(
                f"figure {figure} plots {'odd' if want_odd else 'even'} rings; n={n} has the wrong parity"
            )
    settings.effective["n_list"] = ",".join(str(n) for n in requested)
    # Figure curves default to the headline deformation bound.
    theta_tilde = settings.get("theta_tilde", fallback=1.76e-61)
    grid = _grid(settings)
    radius = settings.get("radius_m")
    alpha = settings.get("alpha")
    lines = _config_lines(
        {k: v for k, v in settings.effective.items() if k not in ("output", "n_electrons")}
    )
    lines.append("n_electrons," + _SIGNATURE_HEADER)
    for n in requested:
        config = RingConfig(
            radius=radius,
            mass=CODATA2018.m_e,
            n_electrons=n,
            nc=NCParameters(theta=0.0, theta_tilde=theta_tilde, alpha=alpha),
        )
        lines.extend(f"{n},{row}" for row in _signature_rows(config, grid))
    _write_output(settings.get("output"), "\n".join(lines) + "\n")
    return 0


def cmd_generate(settings: _Settings) -> int:
    config = _ring_config(settings)
    noise = NoiseModel(
        relative_sigma=settings.get("relative_sigma"),
        absolute_sigma=settings.get("absolute_sigma"),
        seed=settings.get("seed"),
    )
    series = generate_dataset(
        config,
        f_min=settings.get("f_min"),
        f_max=settings.get("f_max"),
        n_points=settings.get("n_points"),
        spacing=settings.get("spacing"),
        noise=noise,
    )
    if settings.args.get("omit_n_electrons"):
        series = dataclasses.replace(series, n_electrons=None)
    extra_keys = ("alpha", "theta", "theta_tilde", "f_min", "f_max", "n_points", "spacing")
    header_extra = {k: _fmt(settings.effective[k]) for k in extra_keys}
    _write_output(settings.get("output"), series_to_text(series, header_extra=header_extra))
    return 0


def cmd_analyze(settings: _Settings) -> int:
    series = read_csv(settings.args["input"])
    thresholds = DetectionThresholds()
    if settings.args.get("thresholds"):
        thresholds = load_thresholds(settings.args["thresholds"])
    known = KnownRing(
        radius_m=settings.args.get("radius_m"),
        n_electrons=settings.args.get("n_electrons"),
        alpha=settings.get("alpha"),
    )
    smoothing = settings.get("smoothing")
    if smoothing == "auto":
        smoothing = None
    elif smoothing not in ("none", "spline"):
        raise InvalidParameterError("smoothing must be auto, none, or spline")
    report = detect(
        series,
        known=known,
        thresholds=thresholds,
        smoothing=smoothing,
        penalty=settings.get("penalty"),
    )
    payload = report.to_dict()
    payload["config"] = {
        "input": str(settings.args["input"]),
        **{k: v for k, v in settings.effective.items() if k not in ("output",)},
        **{f"thresholds.{k}": getattr(thresholds, k) for k in sorted(THRESHOLD_KEYS)},
    }
    _write_output(settings.get("output"), json.dumps(payload, indent=2) + "\n")
    sig_out = settings.args.get("signatures_out")
    if sig_out:
        lines = ["f,lambda_hat,sigma_hat"]
        lines.extend(
            f"{_fmt(p.f)},{_fmt(p.lam)},{_fmt(p.sigma)}" for p in report.signature_points
        )
        _write_output(sig_out, "\n".join(lines) + "\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ncring",
        description="Mesoscopic-ring persistent currents in noncommutative phase space",
    )
    parser.add_argument("--version", action="version", version=f"ncring {__version__}")
    parser.add_argument("--config", help="key=value config file (default: $NCRING_CONFIG)")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_ring(p, with_n=True):
        if with_n:
            p.add_argument("--n-electrons", dest="n_electrons", type=int)
        p.add_argument("--radius-m", dest="radius_m", type=float)
        p.add_argument("--alpha", type=float)
        p.add_argument("--theta", type=float)
        p.add_argument("--theta-tilde", dest="theta_tilde", type=float)
        p.add_argument("--constraint-variant", dest="constraint_variant",
                       choices=["paper", "heisenberg-closing"])

    def add_grid(p):
        p.add_argument("--f-min", dest="f_min", type=float)
        p.add_argument("--f-max", dest="f_max", type=float)
        p.add_argument("--n-points", dest="n_points", type=int)
        p.add_argument("--spacing", choices=list(SPACINGS))

    def add_output(p):
        p.add_argument("--output", "-o", help="output path, '-' for stdout (default)")

    p = sub.add_parser("verify-algebra", help="print the deformed-commutator report as JSON")
    add_ring(p, with_n=False)
    add_output(p)

    p = sub.add_parser("simulate", help="emit f, ground energy, current as CSV")
    add_ring(p)
    add_grid(p)
    add_output(p)

    p = sub.add_parser("signatures", help="emit the analytic divergence signatures as CSV")
    add_ring(p)
    add_grid(p)
    add_output(p)

    p = sub.add_parser("figure-data", help="emit signature curves for a family of rings")
    p.add_argument("--figure", type=int, choices=[1, 2])
    p.add_argument("--n", type=int, action="append",
                   help="ring electron count; repeatable; default is a small family")
    add_ring(p, with_n=False)
    add_grid(p)
    add_output(p)

    p = sub.add_parser("generate", help="generate a noisy synthetic measurement file")
    add_ring(p)
    add_grid(p)
    p.add_argument("--relative-sigma", dest="relative_sigma", type=float)
    p.add_argument("--absolute-sigma", dest="absolute_sigma", type=float)
    p.add_argument("--seed", type=int)
    p.add_argument("--omit-n-electrons", dest="omit_n_electrons", action="store_true",
                   help="leave the electron count out of the file metadata")
    add_output(p)

    p = sub.add_parser("analyze", help="run the detection pipeline on a measurement file")
    p.add_argument("input", help="measurement CSV path")
    p.add_argument("--n-electrons", dest="n_electrons", type=int)
    p.add_argument("--radius-m", dest="radius_m", type=float)
    p.add_argument("--alpha", type=float)
    p.add_argument("--thresholds", help="key=value thresholds file")
    p.add_argument("--smoothing", choices=["auto", "none", "spline"])
    p.add_argument("--penalty", type=float)
    p.add_argument("--signatures-out", dest="signatures_out",
                   help="also write the estimated (f, lambda_hat, sigma_hat) CSV here")
    add_output(p)

    return parser


_COMMANDS = {
    "verify-algebra": cmd_verify_algebra,
    "simulate": cmd_simulate,
    "signatures": cmd_signatures,
    "figure-data": cmd_figure_data,
    "generate": cmd_generate,
    "analyze": cmd_analyze,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config_path = args.config or os.environ.get("NCRING_CONFIG")
        config = load_config(config_path) if config_path else {}
        settings = _Settings(args, config)
        return _COMMANDS[args.command](settings)
    except _VALIDATION_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except NCRingError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
