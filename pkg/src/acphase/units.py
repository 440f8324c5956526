"""SI <-> natural-unit conversion for the quantities the package uses.

Pure functions over the immutable table in :mod:`acphase.constants`;
safe for unrestricted concurrent use.  Not a general-purpose units
library: only the dimensions listed in :class:`Dimension` are supported.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from . import constants as K
from .errors import ConfigurationError, DomainError


class Dimension(enum.Enum):
    LENGTH = "length"              # SI: m        -> eV^-1
    TIME = "time"                  # SI: s        -> eV^-1
    FREQUENCY = "frequency"        # SI: rad/s    -> eV
    ENERGY = "energy"              # SI: J        -> eV
    MASS = "mass"                  # SI: kg       -> eV
    ENERGY_FLUX = "energy-flux"    # SI: W/m^2    -> eV^4
    ELECTRIC_FIELD = "electric-field"  # SI: V/m  -> eV^2
    MAGNETIC_FIELD = "magnetic-field"  # SI: T    -> eV^2
    DIMENSIONLESS = "dimensionless"


#: natural = SI * factor, one entry per dimension.
_FACTOR = {
    Dimension.LENGTH: K.EV_INV_PER_M,
    Dimension.TIME: K.EV_INV_PER_S,
    Dimension.FREQUENCY: K.HBAR_EV_S,
    Dimension.ENERGY: K.EV_PER_J,
    Dimension.MASS: K.EV_PER_KG,
    Dimension.ENERGY_FLUX: K.EV4_PER_W_M2,
    Dimension.ELECTRIC_FIELD: K.EV2_PER_V_M,
    Dimension.MAGNETIC_FIELD: K.EV2_PER_T,
    Dimension.DIMENSIONLESS: 1.0,
}


@dataclass(frozen=True)
class PhysicalQuantity:
    """A value tagged with one of the supported dimensions (SI units)."""

    value: float
    dimension: Dimension


def to_natural(q: PhysicalQuantity) -> float:
    """Convert an SI quantity to eV-based natural units."""
    if not isinstance(q.dimension, Dimension):
        raise ConfigurationError(f"unknown dimension: {q.dimension!r}")
    if not math.isfinite(q.value):
        raise ConfigurationError(f"non-finite value: {q.value!r}")
    return q.value * _FACTOR[q.dimension]


def from_natural(value: float, dimension: Dimension) -> PhysicalQuantity:
    """Inverse of :func:`to_natural`."""
    if not isinstance(dimension, Dimension):
        raise ConfigurationError(f"unknown dimension: {dimension!r}")
    return PhysicalQuantity(value / _FACTOR[dimension], dimension)


# convenience wrappers used by the config layer -------------------------

def length_m(x: float) -> float:
    return to_natural(PhysicalQuantity(x, Dimension.LENGTH))


def time_s(x: float) -> float:
    return to_natural(PhysicalQuantity(x, Dimension.TIME))


def flux_W_cm2(x: float) -> float:
    return to_natural(PhysicalQuantity(x * 1e4, Dimension.ENERGY_FLUX))


def omega_from_wavelength(lam_natural: float) -> float:
    """Angular frequency of light of (free-space) wavelength lam, c = 1."""
    if lam_natural <= 0:
        raise DomainError("wavelength must be positive")
    return 2.0 * math.pi / lam_natural


def field_amplitude_from_flux(flux_natural: float, *, guide: bool = False,
                              a: float | None = None,
                              lam: float | None = None) -> float:
    """Field amplitude (natural units) carrying the given energy flux.

    Plane wave: rho = E0^2/2, so E0 = sqrt(2 rho).  Rectangular guide:
    rho = (a B0)^2 / lambda^2, so B0 = (lambda/a) sqrt(rho).  With c = 1
    the energy flux and the energy density coincide, so ``flux_natural``
    (eV^4) is used for rho directly.
    """
    if flux_natural < 0:
        raise DomainError("flux must be non-negative")
    if not guide:
        return math.sqrt(2.0 * flux_natural)
    if a is None or lam is None or a <= 0 or lam <= 0:
        raise ConfigurationError("guide amplitude needs positive a and lambda")
    return (lam / a) * math.sqrt(flux_natural)
