"""
Unit-safe scalar types and conversions shared by every model.

Canonical units: watts, dB/km, micrometers, degrees, kilometers for link
lengths and nanoseconds for rise times.
"""

import math
from dataclasses import dataclass
from typing import NamedTuple

from .errors import DomainError

PLANCK = 6.62607015e-34        # J s
LIGHT_SPEED = 2.99792458e8     # m/s
DEG_PER_RAD = 57.295           # printed coefficient of the range and coupling equations
DB_PER_NEPER = 10.0 / math.log(10.0)


def power_dbm_from_watts(p):
    """Convert a power from watts to dBm.

    Parameters
    ----------
    p : float
        power in watts, must be positive.

    Returns
    -------
    float
        power in dBm, i.e. 10*log10(p / 1 mW).

    Raises
    ------
    DomainError
        if `p` is not positive.
    """
    if not p > 0:
        raise DomainError(f'power must be > 0 W to be expressed in dBm (got {p!r} W)')
    return 10.0 * math.log10(p / 1e-3)


def power_watts_from_dbm(dbm):
    """Convert a power from dBm to watts."""
    return 1e-3 * 10.0 ** (dbm / 10.0)


def attenuation_db_per_km(sigma):
    """Convert an extinction coefficient from km^-1 (natural log) to dB/km.

    Parameters
    ----------
    sigma : float
        extinction coefficient in km^-1, must be >= 0.

    Returns
    -------
    float
        the same coefficient in dB/km.
    """
    if not sigma >= 0:
        raise DomainError(f'attenuation coefficient must be >= 0 km^-1 (got {sigma!r})')
    return sigma * DB_PER_NEPER


@dataclass(frozen=True)
class PowerLevel:
    """Optical power stored in watts."""

    watts: float

    def __post_init__(self):
        if not self.watts >= 0:
            raise DomainError(f'power must be >= 0 W (got {self.watts!r} W)')

    @classmethod
    def from_dbm(cls, dbm):
        return cls(power_watts_from_dbm(dbm))

    @classmethod
    def from_mw(cls, mw):
        return cls(mw * 1e-3)

    @classmethod
    def from_uw(cls, uw):
        return cls(uw * 1e-6)

    @property
    def dbm(self):
        return power_dbm_from_watts(self.watts)

    @property
    def mw(self):
        return self.watts * 1e3


@dataclass(frozen=True)
class AttenuationCoeff:
    """Attenuation coefficient stored in dB/km."""

    db_per_km: float

    def __post_init__(self):
        if not self.db_per_km >= 0:
            raise DomainError(f'attenuation must be >= 0 dB/km (got {self.db_per_km!r})')

    @classmethod
    def from_per_km(cls, sigma):
        return cls(attenuation_db_per_km(sigma))

    @property
    def per_km(self):
        """Natural-log extinction coefficient in km^-1."""
        return self.db_per_km / DB_PER_NEPER


@dataclass(frozen=True)
class Wavelength:
    """Optical wavelength stored in micrometers."""

    um: float

    def __post_init__(self):
        if not self.um > 0:
            raise DomainError(f'wavelength must be > 0 um (got {self.um!r})')

    @property
    def nm(self):
        return self.um * 1e3

    @property
    def m(self):
        return self.um * 1e-6


@dataclass(frozen=True)
class AngleDeg:
    """Plane angle stored in degrees.

    General conversion to radians uses full precision; formulas that print
    57.295 as a coefficient use `DEG_PER_RAD` directly.
    """

    deg: float

    @property
    def rad(self):
        return math.radians(self.deg)


def photon_energy(wavelength):
    """Energy of one photon, h*c/lambda.

    Parameters
    ----------
    wavelength : Wavelength
        photon wavelength.

    Returns
    -------
    float
        photon energy in joules.
    """
    return PLANCK * LIGHT_SPEED / wavelength.m


class LengthLimit(NamedTuple):
    """A solved maximum link length.

    km is the length in kilometers; closes is False when no positive length
    meets the requirement (km is then 0); capped is True when the requirement
    is still met at the upper end of the search bracket (km is then the cap).
    """

    km: float
    closes: bool = True
    capped: bool = False
