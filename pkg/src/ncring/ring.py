"""One-dimensional quantum ring threaded by magnetic flux, with a deformation-induced offset.

A spinless electron on a ring of radius R sees the external flux only through
the dimensionless combination f = phi/phi0, and the noncommutative-momentum
deformation adds an effective flux f_nc = R^2*theta_tilde/(hbar^2*alpha^2), so
the single-particle levels are

    E_n = eps0 * (n + f - f_nc)^2 - (3/4) * eps0 * f_nc^2,   n = 0, +-1, +-2, ...

with eps0 = hbar^2/(2*m_star*R^2) and m_star = m/alpha.  The spectrum is
invariant under f - f_nc -> f - f_nc + 1 and symmetric about f - f_nc = 0, so
all closed forms below are evaluated on the folded offset |f - f_nc| mod 1 in
[0, 1/2]; the level-filling brute force is valid everywhere and serves as the
independent oracle for the closed forms.

Filling the N lowest levels at zero temperature gives

    E_g / eps0 = (N^3 - N)/12 + N*(d^2 - (3/4) f_nc^2)             N odd
    E_g / eps0 = (N^3 + 2N)/12 - N*d + N*(d^2 - (3/4) f_nc^2)      N even,  d in [0, 1/2]

and the ground-state persistent current J = -dE_g/dphi:

    J = -2*N*J0*d            N odd
    J = N*J0 - 2*N*J0*d      N even,          J0 = (e/h)*eps0

extended to d < 0 by oddness of J in the offset.  Flux is dimensionless
(units of phi0) on every public interface; energies are joules, currents
amperes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import FluxDomainError, InvalidParameterError
from .phasespace import CODATA2018, NCParameters, PhysicalConstants, effective_gauge


@dataclass(frozen=True)
class RingConfig:
    """Ring geometry plus deformation parameters; drives every forward-model quantity.

    radius in meters, mass is the bare electron mass in kg, n_electrons the
    spinless electron count.  The derived effective flux must satisfy
    f_nc < 1/2: the detection formulas assume a small offset.
    """

    radius: float
    mass: float
    n_electrons: int
    nc: NCParameters
    constants: PhysicalConstants = CODATA2018

    def __post_init__(self):
        if self.radius <= 0.0:
            raise InvalidParameterError("radius must be positive")
        if self.mass <= 0.0:
            raise InvalidParameterError("mass must be positive")
        if self.n_electrons < 1:
            raise InvalidParameterError("n_electrons must be >= 1")
        if not 0.0 <= f_nc(self) < 0.5:
            raise InvalidParameterError(
                "effective flux f_nc must lie in [0, 1/2) for this ring model"
            )


@dataclass(frozen=True)
class FluxPoint:
    """External flux as both a dimensionless fill f = phi/phi0 and phi in weber."""

    f: float
    phi: float

    @classmethod
    def from_f(cls, f: float, constants: PhysicalConstants = CODATA2018) -> "FluxPoint":
        return cls(f=f, phi=f * constants.phi0)


@dataclass(frozen=True)
class LevelEnergy:
    """Single-particle level: angular index n and its energy in joules."""

    n: int
    energy: float


def f_nc(config: RingConfig) -> float:
    """Effective flux from the deformation, in units of phi0: R^2*theta_tilde/(hbar^2*alpha^2)."""
    c = config.constants
    return config.radius**2 * config.nc.theta_tilde / (c.hbar**2 * config.nc.alpha**2)


def epsilon0(config: RingConfig) -> float:
    """Ring energy scale hbar^2/(2*m_star*R^2) in joules."""
    m_star = effective_gauge(config.nc, config.constants, config.mass).m_star
    return config.constants.hbar**2 / (2.0 * m_star * config.radius**2)


def j0(config: RingConfig) -> float:
    """Current scale J0 = (e/h)*eps0 in amperes."""
    c = config.constants
    return c.e * epsilon0(config) / c.h


def level_energy(config: RingConfig, n: int, f: float) -> float:
    """Energy of level n at external flux f (phi0 units); no folding applied."""
    eps = epsilon0(config)
    fn = f_nc(config)
    return eps * (n + f - fn) ** 2 - 0.75 * eps * fn**2


def _fold_offset(delta: float) -> tuple[float, float]:
    """Fold the flux offset into [0, 1/2]; returns (|d|, sign) with d = delta mod 1 in [-1/2, 1/2]."""
    d = delta - round(delta)
    return (abs(d), 1.0 if d >= 0.0 else -1.0)


def ground_energy_closed(config: RingConfig, f: float) -> float:
    """Closed-form ground-state energy at external flux f (phi0 units)."""
    n = config.n_electrons
    eps = epsilon0(config)
    fn = f_nc(config)
    d, _ = _fold_offset(f - fn)
    shared = n * (d * d - 0.75 * fn * fn)
    if n % 2 == 1:
        return eps * ((n**3 - n) / 12.0 + shared)
    return eps * ((n**3 + 2 * n) / 12.0 - n * d + shared)


def occupied_levels(
    config: RingConfig, f: float, window_margin: int = 8
) -> list[LevelEnergy]:
    """The N occupied levels at flux f, lowest energy first.

    Candidate indices span [-(ceil(N/2) + margin), +(ceil(N/2) + margin)]; for
    offsets within the margin of zero this window provably contains the N
    lowest levels.  Degeneracies are broken by smaller |n|, then negative n,
    which leaves the total energy unchanged.
    """
    if window_margin < 2:
        raise InvalidParameterError("window_margin must be >= 2")
    n_el = config.n_electrons
    half = -(-n_el // 2)  # ceil(N/2)
    window = range(-(half + window_margin), half + window_margin + 1)
    levels = [LevelEnergy(n, level_energy(config, n, f)) for n in window]
    levels.sort(key=lambda lv: (lv.energy, abs(lv.n), lv.n))
    return levels[:n_el]


def ground_energy_bruteforce(
    config: RingConfig, f: float, window_margin: int = 8
) -> float:
    """Ground-state energy by explicit level filling; oracle for the closed form."""
    return math.fsum(lv.energy for lv in occupied_levels(config, f, window_margin))


def persistent_current(config: RingConfig, f: float) -> float:
    """Ground-state persistent current J = -dE_g/dphi at flux f, in amperes.

    Evaluated on the folded offset and extended to negative offsets by
    oddness; at an exact fold boundary the non-negative-offset branch is used.
    """
    n = config.n_electrons
    cur0 = j0(config)
    d, sign = _fold_offset(f - f_nc(config))
    if n % 2 == 1:
        half = -2.0 * n * cur0 * d
    else:
        half = n * cur0 - 2.0 * n * cur0 * d
    return sign * half


def persistent_current_numeric(
    config: RingConfig, f: float, step: float = 1e-6, window_margin: int = 8
) -> float:
    """Central-difference current from the brute-force energy; finite-step oracle.

    The energy is piecewise quadratic in f, so away from level crossings the
    central difference is exact up to rounding.  Crossings sit at half-integer
    offsets for odd N and integer offsets for even N; a stencil that straddles
    one is rejected.
    """
    if not (0.0 < step <= 1e-4):
        raise InvalidParameterError("step must lie in (0, 1e-4]")
    delta = f - f_nc(config)
    if config.n_electrons % 2 == 1:
        dist = abs(delta - (math.floor(delta) + 0.5))
    else:
        dist = abs(delta - round(delta))
    if dist < step:
        raise FluxDomainError(
            "central difference would straddle a level crossing; move f or shrink step"
        )
    e_plus = ground_energy_bruteforce(config, f + step, window_margin)
    e_minus = ground_energy_bruteforce(config, f - step, window_margin)
    return -(e_plus - e_minus) / (2.0 * step * config.constants.phi0)
