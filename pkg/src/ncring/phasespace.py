"""Two-dimensional noncommutative phase space via the Seiberg-Witten map.

The deformed algebra

    [x_i, x_j] = i*theta_ij,   [p_i, p_j] = i*theta_tilde_ij,   [x_i, p_j] = i*hbar*delta_ij

is realized on canonical operators (x, y, p_x, p_y) by the linear map

    x_hat  = alpha*x - (theta/(2*alpha*hbar))*p_y
    y_hat  = alpha*y + (theta/(2*alpha*hbar))*p_x
    px_hat = (theta_tilde/(2*alpha*hbar))*y + alpha*p_x
    py_hat = -(theta_tilde/(2*alpha*hbar))*x + alpha*p_y

together with the constraint theta*theta_tilde = 2*hbar^2*alpha^2*(1 - alpha^2).
Every operator here is a real linear form in (x, y, p_x, p_y), so commutators
reduce to the canonical symplectic bilinear form and can be evaluated exactly.

Two constraint variants are provided.  The `paper` variant above leaves
[x_hat, px_hat] = i*hbar*(1 + alpha^2)/2, i.e. the Heisenberg relation is only
restored at alpha = 1; the `heisenberg-closing` variant uses a factor 4 instead
of 2 and closes the algebra exactly for every alpha.  `verify_algebra` reports
the residual so either convention can be checked against the map.

Noncommuting momenta act on a charged particle like a uniform magnetic field:

    A = (a*y, -a*x),  a = theta_tilde/(2*e*alpha^2*hbar),  B_z = theta_tilde/(e*alpha^2*hbar)

with effective mass m* = m/alpha.  Note the curl of the A above is -2*a*z_hat,
so the printed B_z is the magnitude; only |B_z| enters the ring model.  Direct
expansion of p_hat^2/(2m) actually yields m/alpha^2; the m/alpha convention is
kept because all shipped pipelines run at alpha = 1 where the two agree.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ConstraintUnsatisfiableError, InvalidParameterError

CONSTRAINT_VARIANTS = ("paper", "heisenberg-closing")


@dataclass(frozen=True)
class PhysicalConstants:
    """SI constants; defaults are the CODATA-2018 fixed values.

    hbar : reduced Planck constant (J s)
    e    : elementary charge (C)
    h    : Planck constant (J s)
    m_e  : electron mass (kg)
    phi0 : magnetic flux quantum h/e (Wb)
    """

    hbar: float
    e: float
    h: float
    m_e: float
    phi0: float

    def __post_init__(self):
        if abs(self.h - 2.0 * math.pi * self.hbar) > 1e-12 * self.h:
            raise InvalidParameterError("h must equal 2*pi*hbar")
        if self.phi0 != self.h / self.e:
            raise InvalidParameterError("phi0 must equal h/e exactly")


_H = 6.62607015e-34
_E = 1.602176634e-19

CODATA2018 = PhysicalConstants(
    hbar=_H / (2.0 * math.pi),
    e=_E,
    h=_H,
    m_e=9.1093837015e-31,
    phi0=_H / _E,
)


@dataclass(frozen=True)
class NCParameters:
    """Deformation triple: theta (m^2), theta_tilde (kg^2 m^2 s^-2), alpha in (0, 1].

    theta_tilde >= 0 by convention.  At alpha = 1 the constraint forces
    theta*theta_tilde = 0 (pure position or pure momentum noncommutativity,
    or the canonical limit).
    """

    theta: float
    theta_tilde: float
    alpha: float = 1.0

    def __post_init__(self):
        if not (0.0 < self.alpha <= 1.0):
            raise InvalidParameterError(f"alpha must lie in (0, 1], got {self.alpha}")
        if not (math.isfinite(self.theta) and math.isfinite(self.theta_tilde)):
            raise InvalidParameterError("theta and theta_tilde must be finite")
        if self.theta_tilde < 0.0:
            raise InvalidParameterError("theta_tilde must be >= 0 by sign convention")
        if self.alpha == 1.0 and self.theta * self.theta_tilde != 0.0:
            raise InvalidParameterError("alpha = 1 requires theta*theta_tilde = 0")


@dataclass(frozen=True)
class LinearPhaseForm:
    """Real linear form c_x*x + c_y*y + c_px*p_x + c_py*p_y.

    Coefficients carry whatever units make the whole form homogeneous.
    Addition and scalar multiplication are exact and componentwise.
    """

    c_x: float = 0.0
    c_y: float = 0.0
    c_px: float = 0.0
    c_py: float = 0.0

    def __add__(self, other: "LinearPhaseForm") -> "LinearPhaseForm":
        return LinearPhaseForm(
            self.c_x + other.c_x,
            self.c_y + other.c_y,
            self.c_px + other.c_px,
            self.c_py + other.c_py,
        )

    def __sub__(self, other: "LinearPhaseForm") -> "LinearPhaseForm":
        return self + (-1.0) * other

    def __mul__(self, s: float) -> "LinearPhaseForm":
        return LinearPhaseForm(s * self.c_x, s * self.c_y, s * self.c_px, s * self.c_py)

    __rmul__ = __mul__

    def __neg__(self) -> "LinearPhaseForm":
        return (-1.0) * self


X = LinearPhaseForm(c_x=1.0)
Y = LinearPhaseForm(c_y=1.0)
PX = LinearPhaseForm(c_px=1.0)
PY = LinearPhaseForm(c_py=1.0)


@dataclass(frozen=True)
class GaugeField:
    """Effective gauge data induced by noncommuting momenta.

    a_coeff : slope of the linear vector potential A = (a*y, -a*x), in tesla
    b_z     : effective magnetic field magnitude theta_tilde/(e*alpha^2*hbar), tesla
    m_star  : effective mass m/alpha, kg
    """

    a_coeff: float
    b_z: float
    m_star: float


@dataclass(frozen=True)
class AlgebraReport:
    """Coefficients of i in the deformed commutators, plus the Heisenberg residual.

    comm_xy = [x_hat, y_hat]/i and comm_pxpy = [px_hat, py_hat]/i hold exactly
    for the map, regardless of any constraint.  comm_xpx = [x_hat, px_hat]/i
    equals hbar*alpha^2 + theta*theta_tilde/(4*alpha^2*hbar); under the `paper`
    constraint that is hbar*(1 + alpha^2)/2, under `heisenberg-closing` it is
    hbar.  heisenberg_residual = |comm_xpx - hbar|/hbar.
    """

    comm_xy: float
    comm_pxpy: float
    comm_xpx: float
    comm_xpy: float
    heisenberg_residual: float


def sw_map(
    params: NCParameters, constants: PhysicalConstants = CODATA2018
) -> tuple[LinearPhaseForm, LinearPhaseForm, LinearPhaseForm, LinearPhaseForm]:
    """Return (x_hat, y_hat, px_hat, py_hat) as linear forms in (x, y, p_x, p_y)."""
    a = params.alpha
    if a <= 0.0:
        raise InvalidParameterError("alpha must be positive")
    # Shared subexpressions keep the exact antisymmetry of the matrix.
    k_theta = params.theta / (2.0 * a * constants.hbar)
    k_tilde = params.theta_tilde / (2.0 * a * constants.hbar)
    x_hat = LinearPhaseForm(c_x=a, c_py=-k_theta)
    y_hat = LinearPhaseForm(c_y=a, c_px=k_theta)
    px_hat = LinearPhaseForm(c_y=k_tilde, c_px=a)
    py_hat = LinearPhaseForm(c_x=-k_tilde, c_py=a)
    return x_hat, y_hat, px_hat, py_hat


def commutator(
    u: LinearPhaseForm, v: LinearPhaseForm, constants: PhysicalConstants = CODATA2018
) -> float:
    """Coefficient of i in [U, V] for linear forms U, V.

    Equals hbar * (c_x(u)c_px(v) - c_px(u)c_x(v) + c_y(u)c_py(v) - c_py(u)c_y(v)),
    the canonical symplectic bilinear form; antisymmetric and bilinear.  The
    grouping below makes the float result exactly antisymmetric in (u, v).
    """
    return constants.hbar * (
        (u.c_x * v.c_px - u.c_px * v.c_x) + (u.c_y * v.c_py - u.c_py * v.c_y)
    )


def verify_algebra(
    params: NCParameters, constants: PhysicalConstants = CODATA2018
) -> AlgebraReport:
    """Evaluate the deformed commutators of the mapped operators."""
    x_hat, y_hat, px_hat, py_hat = sw_map(params, constants)
    comm_xpx = commutator(x_hat, px_hat, constants)
    return AlgebraReport(
        comm_xy=commutator(x_hat, y_hat, constants),
        comm_pxpy=commutator(px_hat, py_hat, constants),
        comm_xpx=comm_xpx,
        comm_xpy=commutator(x_hat, py_hat, constants),
        heisenberg_residual=abs(comm_xpx - constants.hbar) / constants.hbar,
    )


def theta_from_constraint(
    alpha: float,
    theta_tilde: float,
    constants: PhysicalConstants = CODATA2018,
    variant: str = "paper",
) -> float:
    """Solve the deformation constraint for theta.

    `paper`:              theta = 2*hbar^2*alpha^2*(1 - alpha^2)/theta_tilde
    `heisenberg-closing`: theta = 4*hbar^2*alpha^2*(1 - alpha^2)/theta_tilde

    alpha = 1 returns 0 for either variant.
    """
    if variant not in CONSTRAINT_VARIANTS:
        raise InvalidParameterError(f"unknown constraint variant {variant!r}")
    if not (0.0 < alpha <= 1.0):
        raise InvalidParameterError(f"alpha must lie in (0, 1], got {alpha}")
    if alpha == 1.0:
        return 0.0
    if theta_tilde <= 0.0:
        raise ConstraintUnsatisfiableError(
            "alpha != 1 requires theta_tilde > 0 to solve for theta"
        )
    factor = 2.0 if variant == "paper" else 4.0
    return factor * constants.hbar**2 * alpha**2 * (1.0 - alpha**2) / theta_tilde


def effective_gauge(
    params: NCParameters, constants: PhysicalConstants = CODATA2018, mass: float | None = None
) -> GaugeField:
    """Effective vector-potential slope, field magnitude, and mass for the deformation."""
    if params.alpha <= 0.0:
        raise InvalidParameterError("alpha must be positive")
    if mass is None:
        mass = constants.m_e
    if mass <= 0.0:
        raise InvalidParameterError("mass must be positive")
    a_coeff = params.theta_tilde / (2.0 * constants.e * params.alpha**2 * constants.hbar)
    return GaugeField(a_coeff=a_coeff, b_z=2.0 * a_coeff, m_star=mass / params.alpha)
