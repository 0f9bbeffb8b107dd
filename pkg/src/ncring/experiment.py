"""Synthetic current-versus-flux measurements with deterministic seeded noise.

Datasets stand in for the measurement step of the detection scheme: currents
from the ring forward model plus zero-mean Gaussian noise with per-point
standard deviation sqrt((relative_sigma*|J_i|)^2 + absolute_sigma^2).

Noise draws come from the Philox4x64-10 counter-based generator (as exposed
by numpy.random.Philox) keyed with the dataset seed, mapped to standard
normals by numpy's ziggurat standard_normal, one draw per grid point in grid
order.  Identical inputs therefore produce bit-identical datasets.

File format (schema ncring-measurement-v1): '#'-prefixed key=value metadata
lines, a `f,current_A` header, then comma-separated rows with flux in phi0
units and current in amperes, both printed with 17 significant digits so
float64 values round-trip exactly.  LF line terminators, '.' radix.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import InvalidGridError, InvalidParameterError, MeasurementFormatError
from .ring import RingConfig, f_nc, persistent_current

SCHEMA = "ncring-measurement-v1"
GENERATOR = "ncring-0.1.0"
MIN_POINTS = 8
SPACINGS = ("linear", "log")


@dataclass(frozen=True)
class NoiseModel:
    """Gaussian measurement noise: combined relative and absolute floor, plus the seed."""

    relative_sigma: float = 0.0
    absolute_sigma: float = 0.0
    seed: int = 0

    def __post_init__(self):
        if self.relative_sigma < 0.0 or self.absolute_sigma < 0.0:
            raise InvalidParameterError("noise sigmas must be >= 0")
        if not 0 <= int(self.seed) < 2**64:
            raise InvalidParameterError("seed must fit in an unsigned 64-bit integer")


@dataclass(frozen=True)
class MeasurementSeries:
    """Ordered (flux, current) samples plus the metadata needed to analyze them.

    f is strictly increasing and positive with at least 8 points (the analysis
    spline and fits need that many).  n_electrons is None when the electron
    count is not part of the record and must be estimated downstream.
    """

    f: np.ndarray
    current_a: np.ndarray
    radius_m: float | None = None
    n_electrons: int | None = None
    relative_sigma: float = 0.0
    absolute_sigma: float = 0.0
    seed: int | None = None
    generator: str = GENERATOR
    extra_meta: dict = field(default_factory=dict)

    def __post_init__(self):
        f = np.asarray(self.f, dtype=float)
        j = np.asarray(self.current_a, dtype=float)
        object.__setattr__(self, "f", f)
        object.__setattr__(self, "current_a", j)
        if f.ndim != 1 or f.shape != j.shape:
            raise InvalidParameterError("f and current_a must be 1-d arrays of equal length")
        if f.size < MIN_POINTS:
            raise InvalidParameterError(f"need at least {MIN_POINTS} points, got {f.size}")
        if np.any(f <= 0.0):
            raise InvalidParameterError("all flux values must be positive")
        if np.any(np.diff(f) <= 0.0):
            raise InvalidParameterError("flux values must be strictly increasing")
        if not (np.all(np.isfinite(f)) and np.all(np.isfinite(j))):
            raise InvalidParameterError("flux and current values must be finite")


def flux_grid(f_min: float, f_max: float, n_points: int, spacing: str = "log") -> np.ndarray:
    """Strictly increasing flux grid, linear or logarithmic."""
    if spacing not in SPACINGS:
        raise InvalidGridError(f"spacing must be one of {SPACINGS}, got {spacing!r}")
    if not (0.0 < f_min < f_max):
        raise InvalidGridError("need 0 < f_min < f_max")
    if n_points < MIN_POINTS:
        raise InvalidGridError(f"need at least {MIN_POINTS} grid points")
    if spacing == "linear":
        return np.linspace(f_min, f_max, n_points)
    return np.geomspace(f_min, f_max, n_points)


def generate_dataset(
    config: RingConfig,
    f_min: float,
    f_max: float,
    n_points: int,
    spacing: str = "log",
    noise: NoiseModel = NoiseModel(),
) -> MeasurementSeries:
    """Sample the ring current on a flux grid and add seeded Gaussian noise.

    The grid must stay within one fold of the spectrum:
    0 < f_min < f_max <= 1/2 + f_nc.
    """
    fn = f_nc(config)
    grid = flux_grid(f_min, f_max, n_points, spacing)
    if f_max > 0.5 + fn:
        raise InvalidGridError(
            f"f_max = {f_max} exceeds the single-fold bound 1/2 + f_nc = {0.5 + fn}"
        )
    exact = np.array([persistent_current(config, float(f)) for f in grid])
    sigma = np.hypot(noise.relative_sigma * np.abs(exact), noise.absolute_sigma)
    rng = np.random.Generator(np.random.Philox(key=int(noise.seed)))
    measured = exact + sigma * rng.standard_normal(grid.size)
    return MeasurementSeries(
        f=grid,
        current_a=measured,
        radius_m=config.radius,
        n_electrons=config.n_electrons,
        relative_sigma=noise.relative_sigma,
        absolute_sigma=noise.absolute_sigma,
        seed=int(noise.seed),
    )


def _format(value: float) -> str:
    return format(value, ".17g")


def series_to_text(series: MeasurementSeries, header_extra: dict | None = None) -> str:
    """Render a series in the v1 file format; metadata first, then the data table."""
    lines = [f"# schema={SCHEMA}", f"# generator={series.generator}"]
    if series.radius_m is not None:
        lines.append(f"# radius_m={_format(series.radius_m)}")
    if series.n_electrons is not None:
        lines.append(f"# n_electrons={series.n_electrons}")
    lines.append(f"# relative_sigma={_format(series.relative_sigma)}")
    lines.append(f"# absolute_sigma={_format(series.absolute_sigma)}")
    if series.seed is not None:
        lines.append(f"# seed={series.seed}")
    for key, value in (header_extra or {}).items():
        lines.append(f"# {key}={value}")
    lines.append("f,current_A")
    for f, j in zip(series.f, series.current_a):
        lines.append(f"{_format(f)},{_format(j)}")
    return "\n".join(lines) + "\n"


def write_csv(series: MeasurementSeries, destination: str | Path) -> None:
    """Write a series to `destination` in the v1 format (LF newlines)."""
    Path(destination).write_bytes(series_to_text(series).encode("ascii"))


def _parse_meta_value(key: str, raw: str, line_no: int):
    try:
        if key == "n_electrons":
            return int(raw)
        if key == "seed":
            return int(raw)
        if key in ("radius_m", "relative_sigma", "absolute_sigma"):
            return float(raw)
    except ValueError as exc:
        raise MeasurementFormatError(f"bad value for {key}: {raw!r}", line_no) from exc
    return raw


def read_csv(source: str | Path) -> MeasurementSeries:
    """Parse a v1 measurement file; raises MeasurementFormatError with the line number."""
    text = Path(source).read_text(encoding="ascii")
    meta: dict = {}
    f_vals: list[float] = []
    j_vals: list[float] = []
    saw_header = False
    for line_no, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped:
            continue
        if stripped.startswith("#"):
            body = stripped[1:].strip()
            if "=" in body:
                key, _, raw = body.partition("=")
                key = key.strip()
                meta[key] = _parse_meta_value(key, raw.strip(), line_no)
            continue
        if not saw_header:
            if stripped != "f,current_A":
                raise MeasurementFormatError(
                    f"expected header 'f,current_A', got {stripped!r}", line_no
                )
            saw_header = True
            continue
        parts = stripped.split(",")
        if len(parts) != 2:
            raise MeasurementFormatError(f"expected 2 comma-separated fields, got {len(parts)}", line_no)
        try:
            f = float(parts[0])
            j = float(parts[1])
        except ValueError as exc:
            raise MeasurementFormatError(f"non-numeric row {stripped!r}", line_no) from exc
        if f_vals and f <= f_vals[-1]:
            raise MeasurementFormatError(
                f"flux values must be strictly increasing; {f} after {f_vals[-1]}", line_no
            )
        if f <= 0.0:
            raise MeasurementFormatError(f"flux values must be positive, got {f}", line_no)
        f_vals.append(f)
        j_vals.append(j)
    if not saw_header:
        raise MeasurementFormatError("missing 'f,current_A' header", None)
    if len(f_vals) < MIN_POINTS:
        raise MeasurementFormatError(
            f"need at least {MIN_POINTS} data rows, got {len(f_vals)}", None
        )
    known = {"radius_m", "n_electrons", "relative_sigma", "absolute_sigma", "seed",
             "schema", "generator"}
    return MeasurementSeries(
        f=np.array(f_vals),
        current_a=np.array(j_vals),
        radius_m=meta.get("radius_m"),
        n_electrons=meta.get("n_electrons"),
        relative_sigma=meta.get("relative_sigma", 0.0),
        absolute_sigma=meta.get("absolute_sigma", 0.0),
        seed=meta.get("seed"),
        generator=meta.get("generator", GENERATOR),
        extra_meta={k: v for k, v in meta.items() if k not in known},
    )
