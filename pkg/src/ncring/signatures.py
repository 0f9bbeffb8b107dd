"""Divergence signatures of the deformation-induced flux, and the detection criterion.

For a ring with current J(f) the two probe quantities are flux derivatives of
rescaled currents (flux in phi0 units, so both carry A/phi0^2):

    lambda(f) = d/df [ J/f ]            sigma(f) = d/df [ (J - N*J0)/f ]

On the forward model these are exact power laws:

    N odd :  lambda = -2*N*J0*f_nc / f^2        sigma = +N*J0*(1 - 2*f_nc) / f^2
    N even:  lambda = -N*J0*(1 + 2*f_nc) / f^2  sigma = -2*N*J0*f_nc / f^2

A nonzero f_nc therefore shows up as a 1/f^2 divergence with a parity-specific
sign pattern: odd rings give lambda < 0 < sigma, even rings lambda < sigma < 0.
`classify_analytic` turns fitted power laws into the two-branch verdict:
branch criterion-1 (odd ring, deformation present), criterion-2 (even ring,
deformation present), null-odd / null-even (clean 1/f^2 behavior with the
amplitude pinned at +-N*J0, i.e. no deformation), or inconclusive.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import FluxDomainError, InvalidGridError
from .phasespace import PhysicalConstants
from .powerlaw import FitResult, fit_power_law
from .ring import RingConfig, f_nc, j0
from .errors import InsufficientDataError

PARITY_ODD = "odd"
PARITY_EVEN = "even"
PARITY_UNKNOWN = "unknown"

BRANCH_CRITERION_1 = "criterion-1"
BRANCH_CRITERION_2 = "criterion-2"
BRANCH_NULL_ODD = "null-odd"
BRANCH_NULL_EVEN = "null-even"
BRANCH_INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class SignaturePoint:
    """Sampled signatures at one flux value; lam and sigma in A/phi0^2."""

    f: float
    lam: float
    sigma: float


@dataclass(frozen=True)
class ClassifierThresholds:
    """Decision thresholds for the divergence-pattern verdict.

    amplitude_floor_rel : amplitudes below this multiple of N*J0 count as zero
    exponent_tol        : admissible |exponent - (-2)|
    r2_min              : minimum r^2 for a branch to count as divergent
    amp_match_rtol      : relative tolerance for the +-N*J0 null amplitudes
    """

    amplitude_floor_rel: float = 1e-6
    exponent_tol: float = 0.2
    r2_min: float = 0.99
    amp_match_rtol: float = 0.05


@dataclass(frozen=True)
class CriterionVerdict:
    """Outcome of the two-branch criterion; nc_detected only on criterion branches."""

    nc_detected: bool
    parity: str
    branch: str


def lambda_closed(config: RingConfig, f: float) -> float:
    """Closed-form lambda(f) in A/phi0^2; defined only for f > 0."""
    if f <= 0.0:
        raise FluxDomainError("lambda diverges at f = 0 and is undefined for f <= 0")
    n = config.n_electrons
    cur0 = j0(config)
    fn = f_nc(config)
    if n % 2 == 1:
        return -2.0 * n * cur0 * fn / f**2
    return -n * cur0 * (1.0 + 2.0 * fn) / f**2


def sigma_closed(config: RingConfig, f: float) -> float:
    """Closed-form sigma(f) in A/phi0^2; defined only for f > 0."""
    if f <= 0.0:
        raise FluxDomainError("sigma diverges at f = 0 and is undefined for f <= 0")
    n = config.n_electrons
    cur0 = j0(config)
    fn = f_nc(config)
    if n % 2 == 1:
        return n * cur0 * (1.0 - 2.0 * fn) / f**2
    return -2.0 * n * cur0 * fn / f**2


def signature_sweep(config: RingConfig, f_grid: Sequence[float]) -> list[SignaturePoint]:
    """Evaluate both signatures on a strictly increasing positive flux grid."""
    grid = np.asarray(f_grid, dtype=float)
    if grid.ndim != 1 or grid.size == 0:
        raise InvalidGridError("flux grid must be a non-empty 1-d sequence")
    if np.any(grid <= 0.0):
        raise InvalidGridError("flux grid values must be positive")
    if np.any(np.diff(grid) <= 0.0):
        raise InvalidGridError("flux grid must be strictly increasing")
    return [
        SignaturePoint(f=float(f), lam=lambda_closed(config, float(f)),
                       sigma=sigma_closed(config, float(f)))
        for f in grid
    ]


def signature_to_si(value_per_phi0_sq: float, constants: PhysicalConstants) -> float:
    """Convert a signature from A/phi0^2 to SI A/Wb^2 (pure unit multiply)."""
    return value_per_phi0_sq / constants.phi0**2


def _try_fit(f: np.ndarray, values: np.ndarray) -> FitResult | None:
    try:
        return fit_power_law(f, values)
    except InsufficientDataError:
        return None


def classify_analytic(
    lambda_series: tuple[np.ndarray, np.ndarray],
    sigma_series: tuple[np.ndarray, np.ndarray],
    n_electrons: int,
    j0_value: float,
    thresholds: ClassifierThresholds = ClassifierThresholds(),
    lambda_fit: FitResult | None = None,
    sigma_fit: FitResult | None = None,
) -> CriterionVerdict:
    """Apply the two-branch criterion to (f, lambda) and (f, sigma) series.

    The series must share one positive grid.  Precomputed fits may be passed
    to avoid refitting; otherwise each series is fit here, and a series whose
    values are all numerically zero counts as an amplitude below any floor.
    """
    f_lam, v_lam = (np.asarray(a, dtype=float) for a in lambda_series)
    f_sig, v_sig = (np.asarray(a, dtype=float) for a in sigma_series)
    if f_lam.shape != f_sig.shape or not np.array_equal(f_lam, f_sig):
        raise InvalidGridError("lambda and sigma series must share the same flux grid")
    if np.any(f_lam <= 0.0):
        raise InvalidGridError("signature grid must be strictly positive")

    if lambda_fit is None:
        lambda_fit = _try_fit(f_lam, v_lam)
    if sigma_fit is None:
        sigma_fit = _try_fit(f_sig, v_sig)

    floor = thresholds.amplitude_floor_rel * n_electrons * j0_value
    scale = n_electrons * j0_value

    def divergent(fit: FitResult | None, sign: float) -> bool:
        return (
            fit is not None
            and sign * fit.amplitude >= floor
            and abs(fit.exponent + 2.0) <= thresholds.exponent_tol
            and fit.r_squared >= thresholds.r2_min
        )

    def below_floor(fit: FitResult | None) -> bool:
        return fit is None or abs(fit.amplitude) < floor

    def matches_scale(fit: FitResult | None, sign: float) -> bool:
        return (
            divergent(fit, sign)
            and abs(abs(fit.amplitude) - scale) <= thresholds.amp_match_rtol * scale
        )

    if divergent(lambda_fit, -1.0) and divergent(sigma_fit, +1.0):
        return CriterionVerdict(True, PARITY_ODD, BRANCH_CRITERION_1)
    if (
        divergent(lambda_fit, -1.0)
        and divergent(sigma_fit, -1.0)
        and bool(np.all(v_lam < v_sig))
    ):
        return CriterionVerdict(True, PARITY_EVEN, BRANCH_CRITERION_2)
    if below_floor(lambda_fit) and matches_scale(sigma_fit, +1.0):
        return CriterionVerdict(False, PARITY_ODD, BRANCH_NULL_ODD)
    if below_floor(sigma_fit) and matches_scale(lambda_fit, -1.0):
        return CriterionVerdict(False, PARITY_EVEN, BRANCH_NULL_EVEN)
    return CriterionVerdict(False, PARITY_UNKNOWN, BRANCH_INCONCLUSIVE)
