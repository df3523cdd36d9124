"""
Atmospheric loss models of the free-space optical channel: fog (Kruse), rain,
snow and scintillation, composed into a path loss.
"""

import logging
import math
from dataclasses import dataclass

from ..errors import DomainError
from ..units import attenuation_db_per_km

logger = logging.getLogger(__name__)

KRUSE_VISIBILITY_CONTRAST = 3.912   # -ln(0.02), the 2 % contrast threshold
KRUSE_HIGH_VISIBILITY_Q = 1.3
KRUSE_LOW_VISIBILITY_SCALE = 0.585
KRUSE_Q_SWITCH_KM = 6.0

RAIN_COEFF = 1.076
RAIN_EXPONENT = 2.0 / 3.0

SNOW_A_SLOPE = 5.42e-5      # per nm
SNOW_A_OFFSET = 5.9458
SNOW_EXPONENT = 1.38

RYTOV_COEFF = 23.17


@dataclass(frozen=True)
class WeatherCondition:
    """One atmospheric state.

    Parameters
    ----------
    visibility_km : float
        meteorological visibility V in km, > 0.
    rain_rate_mm_per_hr : float
        rainfall rate R in mm/h, >= 0.
    snow_rate_mm_per_hr : float
        snowfall rate S in mm/h, >= 0.
    cn2 : float
        refractive-index structure parameter in m^(-2/3), >= 0.
    """

    visibility_km: float = 10.0
    rain_rate_mm_per_hr: float = 0.0
    snow_rate_mm_per_hr: float = 0.0
    cn2: float = 1e-15

    def __post_init__(self):
        if not self.visibility_km > 0:
            raise DomainError(f'visibility_km must be > 0 (got {self.visibility_km!r})')
        for name in ('rain_rate_mm_per_hr', 'snow_rate_mm_per_hr', 'cn2'):
            if not getattr(self, name) >= 0:
                raise DomainError(f'{name} must be >= 0 (got {getattr(self, name)!r})')

    @classmethod
    def clear_air(cls):
        return cls(visibility_km=50.0, rain_rate_mm_per_hr=0.0, snow_rate_mm_per_hr=0.0, cn2=0.0)


@dataclass(frozen=True)
class LossBreakdown:
    """Per-mechanism path losses in dB; `total_db` is their plain sum."""

    fog_db: float
    rain_db: float
    snow_db: float
    scintillation_db: float

    @property
    def total_db(self):
        return self.fog_db + self.rain_db + self.snow_db + self.scintillation_db


def size_distribution_exponent(v):
    """Kruse size-distribution exponent q for a visibility.

    q is 1.3 for V >= 6 km (kept for V >= 50 km as well) and 0.585*V^(1/3)
    below 6 km. The two branches do not meet at 6 km.

    Parameters
    ----------
    v : float
        visibility in km.

    Returns
    -------
    float
        the exponent q.
    """
    if not v > 0:
        raise DomainError(f'visibility must be > 0 km (got {v!r})')
    if v >= KRUSE_Q_SWITCH_KM:
        return KRUSE_HIGH_VISIBILITY_Q
    return KRUSE_LOW_VISIBILITY_SCALE * v ** (1.0 / 3.0)


def fog_attenuation(v, wavelength, reference_wavelength):
    """Fog extinction coefficient from the Kruse model.

    Parameters
    ----------
    v : float
        visibility in km.
    wavelength : Wavelength
        beam wavelength.
    reference_wavelength : Wavelength
        wavelength at which the visibility is defined (usually 0.55 um).

    Returns
    -------
    float
        extinction coefficient in km^-1.
    """
    q = size_distribution_exponent(v)
    return (KRUSE_VISIBILITY_CONTRAST / v) * (wavelength.um / reference_wavelength.um) ** (-q)


def rain_attenuation(rate):
    """Rain attenuation 1.076*R^(2/3) in dB/km for a rainfall rate in mm/h."""
    if not rate >= 0:
        raise DomainError(f'rain rate must be >= 0 mm/h (got {rate!r})')
    return RAIN_COEFF * rate ** RAIN_EXPONENT


def snow_attenuation(rate, wavelength):
    """Snow attenuation A*S^b in dB/km.

    A = 5.42e-5*lambda + 5.9458 with lambda in nm, b = 1.38.

    Parameters
    ----------
    rate : float
        snowfall rate in mm/h.
    wavelength : Wavelength
        beam wavelength.

    Returns
    -------
    float
        attenuation in dB/km.
    """
    if not rate >= 0:
        raise DomainError(f'snow rate must be >= 0 mm/h (got {rate!r})')
    a = SNOW_A_SLOPE * wavelength.nm + SNOW_A_OFFSET
    return a * rate ** SNOW_EXPONENT


def scintillation_variance(wavelength, cn2, length_m):
    """Rytov-form scintillation variance.

    4 * 23.17 * k^(7/6) * Cn2 * L^(11/6), with k = 2*pi/lambda_nm * 1e9 the
    optical wavenumber in m^-1 and L in meters.

    Parameters
    ----------
    wavelength : Wavelength
        beam wavelength.
    cn2 : float
        structure parameter in m^(-2/3).
    length_m : float
        path length in meters.

    Returns
    -------
    float
        dimensionless variance.
    """
    if not cn2 >= 0:
        raise DomainError(f'cn2 must be >= 0 m^(-2/3) (got {cn2!r})')
    if not length_m >= 0:
        raise DomainError(f'path length must be >= 0 m (got {length_m!r})')
    wavenumber = 2.0 * math.pi / wavelength.nm * 1e9
    return 4.0 * (RYTOV_COEFF * wavenumber ** (7.0 / 6.0)) * cn2 * length_m ** (11.0 / 6.0)


def scintillation_margin_db(variance):
    """Two-sigma fade margin 2*sqrt(variance), in dB."""
    if not variance >= 0:
        raise DomainError(f'scintillation variance must be >= 0 (got {variance!r})')
    return 2.0 * math.sqrt(variance)


def total_path_loss(weather, wavelength, reference_wavelength, length_km):
    """Compose fog, rain, snow and scintillation losses over a path.

    Fog, rain and snow scale with the length; the scintillation term is a fade
    margin for the whole path and is not multiplied by the length again.

    Parameters
    ----------
    weather : WeatherCondition
        atmospheric state.
    wavelength : Wavelength
        beam wavelength.
    reference_wavelength : Wavelength
        Kruse reference wavelength.
    length_km : float
        path length in km.

    Returns
    -------
    LossBreakdown
        losses in dB over the full path.
    """
    if not length_km >= 0:
        raise DomainError(f'path length must be >= 0 km (got {length_km!r})')

    fog_db = attenuation_db_per_km(
        fog_attenuation(weather.visibility_km, wavelength, reference_wavelength)) * length_km
    rain_db = rain_attenuation(weather.rain_rate_mm_per_hr) * length_km
    snow_db = snow_attenuation(weather.snow_rate_mm_per_hr, wavelength) * length_km
    variance = scintillation_variance(wavelength, weather.cn2, 1000.0 * length_km)

    return LossBreakdown(fog_db=fog_db,
                         rain_db=rain_db,
                         snow_db=snow_db,
                         scintillation_db=scintillation_margin_db(variance))
