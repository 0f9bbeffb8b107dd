"""Signed power-law fitting on log-log axes.

Fits |v| ~ A * f^p by ordinary least squares of log10|v| on log10 f and
attaches the majority sign of the admitted values to the amplitude.  Points
below 1e-3 of the median magnitude are treated as numerical zeros and
excluded; if the admitted values mix signs beyond a small fraction the fit
cannot represent a single signed power law, so r^2 is forced to zero and a
note records why.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InsufficientDataError


@dataclass(frozen=True)
class FitResult:
    """Power-law fit: value(f) ~ amplitude * f^exponent.

    amplitude carries the majority sign of the fitted values; r_squared is the
    coefficient of determination of the log-log regression; note is a
    diagnostic set when the data could not be treated as single-signed.
    """

    amplitude: float
    exponent: float
    r_squared: float
    n_points_used: int
    note: str | None = None


def fit_power_law(
    f: np.ndarray,
    values: np.ndarray,
    rel_floor: float = 1e-3,
    mixed_sign_fraction: float = 0.05,
) -> FitResult:
    """Fit a signed power law to (f, values); needs >= 4 admissible points."""
    f = np.asarray(f, dtype=float)
    v = np.asarray(values, dtype=float)
    if f.shape != v.shape or f.ndim != 1:
        raise InsufficientDataError("f and values must be 1-d arrays of equal length")
    if np.any(f <= 0.0):
        raise InsufficientDataError("power-law fit requires strictly positive f")

    magnitude = np.abs(v)
    median = float(np.median(magnitude))
    admitted = (magnitude > 0.0) & (magnitude >= rel_floor * median)
    n_used = int(np.count_nonzero(admitted))
    if n_used < 4:
        raise InsufficientDataError(
            f"only {n_used} points above the numerical floor; need at least 4"
        )

    lx = np.log10(f[admitted])
    ly = np.log10(magnitude[admitted])
    design = np.column_stack([np.ones_like(lx), lx])
    coef, *_ = np.linalg.lstsq(design, ly, rcond=None)
    residual = ly - design @ coef
    ss_res = float(residual @ residual)
    centered = ly - ly.mean()
    ss_tot = float(centered @ centered)
    if ss_tot > 0.0:
        r_squared = max(0.0, 1.0 - ss_res / ss_tot)
    else:
        r_squared = 1.0 if ss_res <= 1e-20 else 0.0

    neg_fraction = float(np.mean(v[admitted] < 0.0))
    sign = -1.0 if neg_fraction > 0.5 else 1.0
    note = None
    if mixed_sign_fraction < neg_fraction < 1.0 - mixed_sign_fraction:
        r_squared = 0.0
        note = (
            f"mixed signs among admitted values ({neg_fraction:.0%} negative); "
            "not a single signed power law"
        )
    return FitResult(
        amplitude=sign * 10.0 ** float(coef[0]),
        exponent=float(coef[1]),
        r_squared=r_squared,
        n_points_used=n_used,
        note=note,
    )
