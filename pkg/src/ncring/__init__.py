"""Mesoscopic quantum ring in noncommutative phase space.

Forward model (deformed algebra, spectrum, persistent current), analytic
divergence signatures, synthetic noisy measurements, and the detection
pipeline that classifies current-versus-flux data and inverts the momentum
noncommutativity scale.
"""

__version__ = "0.1.0"

from .analysis import (
    DetectionReport,
    DetectionThresholds,
    KnownRing,
    detect,
    estimate_n,
    estimate_signatures,
    smooth_current,
)
from .errors import (
    ConstraintUnsatisfiableError,
    EstimationFailedError,
    FluxDomainError,
    InsufficientDataError,
    InvalidGridError,
    InvalidParameterError,
    MeasurementFormatError,
    NCRingError,
    PipelineOrderError,
)
from .experiment import (
    MeasurementSeries,
    NoiseModel,
    flux_grid,
    generate_dataset,
    read_csv,
    write_csv,
)
from .phasespace import (
    CODATA2018,
    AlgebraReport,
    GaugeField,
    LinearPhaseForm,
    NCParameters,
    PhysicalConstants,
    commutator,
    effective_gauge,
    sw_map,
    theta_from_constraint,
    verify_algebra,
)
from .powerlaw import FitResult, fit_power_law
from .ring import (
    FluxPoint,
    LevelEnergy,
    RingConfig,
    epsilon0,
    f_nc,
    ground_energy_bruteforce,
    ground_energy_closed,
    j0,
    level_energy,
    occupied_levels,
    persistent_current,
    persistent_current_numeric,
)
from .signatures import (
    ClassifierThresholds,
    CriterionVerdict,
    SignaturePoint,
    classify_analytic,
    lambda_closed,
    sigma_closed,
    signature_sweep,
    signature_to_si,
)
from .smoothing import SmoothedCurve, fit_natural_smoothing_spline

__all__ = [
    "AlgebraReport",
    "CODATA2018",
    "ClassifierThresholds",
    "ConstraintUnsatisfiableError",
    "CriterionVerdict",
    "DetectionReport",
    "DetectionThresholds",
    "EstimationFailedError",
    "FitResult",
    "FluxDomainError",
    "FluxPoint",
    "GaugeField",
    "InsufficientDataError",
    "InvalidGridError",
    "InvalidParameterError",
    "KnownRing",
    "LevelEnergy",
    "LinearPhaseForm",
    "MeasurementFormatError",
    "MeasurementSeries",
    "NCParameters",
    "NCRingError",
    "NoiseModel",
    "PhysicalConstants",
    "PipelineOrderError",
    "RingConfig",
    "SignaturePoint",
    "SmoothedCurve",
    "classify_analytic",
    "commutator",
    "detect",
    "effective_gauge",
    "epsilon0",
    "estimate_n",
    "estimate_signatures",
    "f_nc",
    "fit_natural_smoothing_spline",
    "fit_power_law",
    "flux_grid",
    "generate_dataset",
    "ground_energy_bruteforce",
    "ground_energy_closed",
    "j0",
    "lambda_closed",
    "level_energy",
    "occupied_levels",
    "persistent_current",
    "persistent_current_numeric",
    "read_csv",
    "sigma_closed",
    "signature_sweep",
    "signature_to_si",
    "smooth_current",
    "sw_map",
    "theta_from_constraint",
    "verify_algebra",
    "write_csv",
]
