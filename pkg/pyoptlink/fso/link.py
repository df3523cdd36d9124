"""
Wireless optical link computations: range equation, beam and lens losses,
fitted OSNR and RF-transmission polynomials, Shannon capacity and the
maximum link distance.
"""

import logging
import math
from dataclasses import dataclass

import numpy as np

from ..errors import DomainError, FitDomainError
from ..units import (DEG_PER_RAD, AngleDeg, AttenuationCoeff, LengthLimit,
                     PowerLevel, Wavelength, power_dbm_from_watts)
from ..utilities import bisect
from .atmosphere import LossBreakdown, total_path_loss

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FsoLinkConfig:
    """Wireless optical link design parameters with representative defaults.

    Parameters
    ----------
    tx_power : PowerLevel
        transmitted optical power, by default 100 mW.
    wavelength : Wavelength
        operating wavelength, by default 1.55 um (0.85 um to 1.55 um range).
    divergence : AngleDeg
        full beam divergence theta, by default 115 degrees as printed.
    rx_aperture_area_m2 : float
        receiver aperture area in m^2, by default a 0.1 m diameter aperture.
    tx_lens_diameter_mm, rx_lens_diameter_mm : float
        lens diameters D_T and D_R in mm, by default 100 mm.
    rx_lens_radius_mm : float
        receiver lens radius R for the ray loss, by default 50 mm.
    tx_beam_waist_mm : float
        beam radius at the transmitter w0, by default 10 mm.
    rx_sensitivity : PowerLevel
        receiver sensitivity S_R, by default 2 uW.
    optics_efficiency : float
        transmitter and receiver optics efficiency eta in (0, 1], by default 0.5.
    """

    tx_power: PowerLevel = PowerLevel(0.1)
    wavelength: Wavelength = Wavelength(1.55)
    divergence: AngleDeg = AngleDeg(115.0)
    rx_aperture_area_m2: float = math.pi * 0.05 ** 2
    tx_lens_diameter_mm: float = 100.0
    rx_lens_diameter_mm: float = 100.0
    rx_lens_radius_mm: float = 50.0
    tx_beam_waist_mm: float = 10.0
    rx_sensitivity: PowerLevel = PowerLevel(2e-6)
    optics_efficiency: float = 0.5

    def __post_init__(self):
        if not self.divergence.deg > 0:
            raise DomainError(f'divergence must be > 0 deg (got {self.divergence.deg!r})')
        for name in ('rx_aperture_area_m2', 'tx_lens_diameter_mm', 'rx_lens_diameter_mm',
                     'rx_lens_radius_mm', 'tx_beam_waist_mm'):
            if not getattr(self, name) > 0:
                raise DomainError(f'{name} must be > 0 (got {getattr(self, name)!r})')
        if not 0 < self.optics_efficiency <= 1:
            raise DomainError(
                f'optics_efficiency must be in (0, 1] (got {self.optics_efficiency!r})')


@dataclass(frozen=True)
class FitDomain:
    """Validated input interval [low, high] of a fitted polynomial."""

    low: float
    high: float

    def __post_init__(self):
        if not self.low < self.high:
            raise DomainError(f'fit domain needs low < high (got [{self.low}, {self.high}])')

    def __contains__(self, x):
        return self.low <= x <= self.high

    def check(self, x, quantity, unit):
        if x not in self:
            raise FitDomainError(
                f'{quantity} = {x:g} {unit} is outside the fit domain '
                f'[{self.low:g}, {self.high:g}] {unit}')


@dataclass(frozen=True)
class FittedPolynomial:
    """Cubic curve fit c0 + c1*x + c2*x^2 + c3*x^3, valid on `domain` only."""

    coeffs: tuple
    domain: FitDomain
    quantity: str
    unit: str

    def __call__(self, x):
        self.domain.check(x, self.quantity, self.unit)
        return float(np.polynomial.polynomial.polyval(x, self.coeffs))


OSNR_DISTANCE_FIT = FittedPolynomial((17.35, -12.27, 7.05, -5.87),
                                     FitDomain(0.0, 1.4), 'link length', 'km')
OSNR_WAVELENGTH_FIT = FittedPolynomial((3.85, -10.73, 2.13, 9.75),
                                       FitDomain(0.85, 1.55), 'wavelength', 'um')
RF_UNAMPLIFIED_FIT = FittedPolynomial((10.82, -2.05, 7.42, -4.23),
                                      FitDomain(0.0, 2.0), 'radio frequency', 'GHz')
RF_AMPLIFIED_FIT = FittedPolynomial((3.09, 13.65, -2.56, 1.85),
                                    FitDomain(0.0, 2.0), 'radio frequency', 'GHz')

OSNR_ANCHOR_WAVELENGTH = Wavelength(1.55)


# range equation and geometry
def geometric_factor(cfg, length_km):
    """Geometric part of the range equation, 57.295*A_r/(theta*L)^2, capped at 1.

    theta is taken in degrees and L in meters, as printed.
    """
    if not length_km > 0:
        raise DomainError(f'link length must be > 0 km for the range equation (got {length_km!r})')
    raw = DEG_PER_RAD * cfg.rx_aperture_area_m2 / (cfg.divergence.deg * 1000.0 * length_km) ** 2
    return min(raw, 1.0)


def received_power(cfg, alpha_db_per_km, length_km):
    """Received power from the general link budget (range) equation.

    Parameters
    ----------
    cfg : FsoLinkConfig
        link configuration.
    alpha_db_per_km : AttenuationCoeff
        total atmospheric attenuation.
    length_km : float
        link length in km, > 0.

    Returns
    -------
    PowerLevel
        P_t * eta * geometric factor * exp(-sigma*L).
    """
    geometric = geometric_factor(cfg, length_km)
    extinction = math.exp(-alpha_db_per_km.per_km * length_km)
    return PowerLevel(cfg.tx_power.watts * cfg.optics_efficiency * geometric * extinction)


def beam_radius(cfg, length_km):
    """Beam radius w(L) in mm for linear far-field growth w0 + L*tan(theta/2)."""
    if not length_km >= 0:
        raise DomainError(f'link length must be >= 0 km (got {length_km!r})')
    return cfg.tx_beam_waist_mm + 1e6 * length_km * math.tan(cfg.divergence.rad / 2.0)


def ray_loss_db(lens_radius_mm, beam_radius_mm):
    """Ray loss of a Gaussian beam on a finite receiver lens.

    Parameters
    ----------
    lens_radius_mm : float
        receiver lens radius R in mm.
    beam_radius_mm : float
        beam radius w at the receiver in mm.

    Returns
    -------
    float
        10*log10(1 - exp(-2R^2/w^2)) in dB, always <= 0.
    """
    if not lens_radius_mm > 0:
        raise DomainError(f'lens radius must be > 0 mm (got {lens_radius_mm!r})')
    if not beam_radius_mm > 0:
        raise DomainError(f'beam radius must be > 0 mm (got {beam_radius_mm!r})')
    x = 2.0 * lens_radius_mm ** 2 / beam_radius_mm ** 2
    # log(1 - exp(-x)) evaluated without cancellation on either side of ln 2
    if x > math.log(2.0):
        log_fraction = math.log1p(-math.exp(-x))
    else:
        log_fraction = math.log(-math.expm1(-x))
    return 10.0 * log_fraction / math.log(10.0)


def geometric_coupling_ratio(cfg, distance_km, capped=False):
    """Receiver-to-transmitter effective area ratio (57.295*D_R/(D_T + 100*d*theta))^2.

    Parameters
    ----------
    cfg : FsoLinkConfig
        link configuration (lens diameters in mm, divergence in degrees).
    distance_km : float
        link distance d in km.
    capped : bool, optional
        return min(ratio, 1) for budget composition, by default False

    Returns
    -------
    float
        the area ratio as printed, or its capped form.
    """
    if not distance_km >= 0:
        raise DomainError(f'distance must be >= 0 km (got {distance_km!r})')
    denominator = cfg.tx_lens_diameter_mm + 100.0 * distance_km * cfg.divergence.deg
    if denominator == 0:
        raise DomainError('coupling ratio denominator D_T + 100*d*theta is zero')
    ratio = (DEG_PER_RAD * cfg.rx_lens_diameter_mm / denominator) ** 2
    return min(ratio, 1.0) if capped else ratio


# fitted responses
def osnr_from_distance(length_km):
    """OSNR in dB from the link-length fit, valid on [0, 1.4] km."""
    return OSNR_DISTANCE_FIT(length_km)


def osnr_from_wavelength(wavelength):
    """OSNR in dB from the wavelength fit, valid on [0.85, 1.55] um."""
    return OSNR_WAVELENGTH_FIT(wavelength.um)


def osnr_from_distance_wavelength(length_km, wavelength):
    """OSNR in dB at a link length and wavelength.

    The length fit is anchored at 1.55 um and shifted by the wavelength fit's
    difference from its value at 1.55 um.
    """
    offset = osnr_from_wavelength(wavelength) - osnr_from_wavelength(OSNR_ANCHOR_WAVELENGTH)
    return osnr_from_distance(length_km) + offset


def rf_transmission_db(freq_ghz, amplified=False):
    """RF transmission response in dB, valid on [0, 2] GHz.

    Parameters
    ----------
    freq_ghz : float
        transmitted radio frequency in GHz.
    amplified : bool, optional
        use the fit with amplification, by default False

    Returns
    -------
    float
        transmission in dB.
    """
    fit = RF_AMPLIFIED_FIT if amplified else RF_UNAMPLIFIED_FIT
    return fit(freq_ghz)


def relative_transmission_db(p_out, p_in):
    """Relative loss or gain 10*log10(P_transmitter/P_incident) in dB."""
    if not (p_out.watts > 0 and p_in.watts > 0):
        raise DomainError('both powers must be > 0 W to form a transmission ratio')
    return 10.0 * math.log10(p_out.watts / p_in.watts)


def channel_capacity(bandwidth_hz, osnr_db):
    """Shannon capacity BW*log2(1 + OSNR) in bit/s, with the OSNR given in dB."""
    if not bandwidth_hz >= 0:
        raise DomainError(f'bandwidth must be >= 0 Hz (got {bandwidth_hz!r})')
    return bandwidth_hz * math.log2(1.0 + 10.0 ** (osnr_db / 10.0))


def osnr_at_rf(freq_ghz, length_km, amplified=False):
    """OSNR in dB seen by a radio carrier over a wireless optical link.

    The link-length fit, plus the gap between the amplified and unamplified
    RF transmission fits when amplified. The frequency is checked against the
    RF fit domain either way.
    """
    RF_UNAMPLIFIED_FIT.domain.check(freq_ghz, RF_UNAMPLIFIED_FIT.quantity, RF_UNAMPLIFIED_FIT.unit)
    osnr_db = osnr_from_distance(length_km)
    if amplified:
        osnr_db += rf_transmission_db(freq_ghz, True) - rf_transmission_db(freq_ghz, False)
    return osnr_db


def capacity_vs_rf(freq_ghz, length_km, amplified=False):
    """Data rate carried at a radio frequency over a wireless optical link.

    The bandwidth equals the radio frequency; amplification adds the gap
    between the amplified and unamplified RF transmission fits to the OSNR.

    Parameters
    ----------
    freq_ghz : float
        radio frequency in GHz, within [0, 2].
    length_km : float
        link length in km, within [0, 1.4].
    amplified : bool, optional
        apply the amplification gain, by default False

    Returns
    -------
    float
        capacity in bit/s.
    """
    return channel_capacity(freq_ghz * 1e9, osnr_at_rf(freq_ghz, length_km, amplified))


# link budget
@dataclass(frozen=True)
class LinkBudget:
    """Full wireless optical budget at one link length."""

    length_km: float
    losses: LossBreakdown
    geometric_factor: float
    beam_radius_mm: float
    ray_loss_db: float
    coupling_ratio: float
    received_power: PowerLevel
    received_power_dbm: float
    margin_db: float


def link_budget(cfg, weather, reference_wavelength, length_km):
    """Evaluate the wireless optical link budget at one length.

    The received power in dBm is formed in the dB domain, so it stays finite
    where the power in watts underflows.

    Parameters
    ----------
    cfg : FsoLinkConfig
        link configuration.
    weather : WeatherCondition
        atmospheric state.
    reference_wavelength : Wavelength
        Kruse reference wavelength.
    length_km : float
        link length in km, > 0.

    Returns
    -------
    LinkBudget
        the loss breakdown together with received power and margin.
    """
    losses = total_path_loss(weather, cfg.wavelength, reference_wavelength, length_km)
    geometric = geometric_factor(cfg, length_km)
    alpha = AttenuationCoeff(losses.total_db / length_km)
    rx_dbm = (cfg.tx_power.dbm + 10.0 * math.log10(cfg.optics_efficiency * geometric)
              - losses.total_db)
    w = beam_radius(cfg, length_km)

    return LinkBudget(length_km=length_km,
                      losses=losses,
                      geometric_factor=geometric,
                      beam_radius_mm=w,
                      ray_loss_db=ray_loss_db(cfg.rx_lens_radius_mm, w),
                      coupling_ratio=geometric_coupling_ratio(cfg, length_km, capped=True),
                      received_power=received_power(cfg, alpha, length_km),
                      received_power_dbm=rx_dbm,
                      margin_db=rx_dbm - power_dbm_from_watts(cfg.rx_sensitivity.watts))


def max_fso_distance(cfg, weather, reference_wavelength,
                     lower_km=1e-4, upper_km=100.0, xtol_km=1e-9):
    """Longest link length at which the received power still meets the sensitivity.

    Parameters
    ----------
    cfg : FsoLinkConfig
        link configuration.
    weather : WeatherCondition
        atmospheric state.
    reference_wavelength : Wavelength
        Kruse reference wavelength.
    lower_km : float, optional
        lower end of the search bracket, by default 1e-4
    upper_km : float, optional
        upper end of the search bracket (the cap), by default 100.0
    xtol_km : float, optional
        bisection tolerance, by default 1e-9

    Returns
    -------
    LengthLimit
        km = 0 with closes=False if the link fails even at `lower_km`;
        km = `upper_km` with capped=True if it still closes at the cap.
    """

    def margin(length_km):
        losses = total_path_loss(weather, cfg.wavelength, reference_wavelength, length_km)
        alpha = AttenuationCoeff(losses.total_db / length_km)
        return received_power(cfg, alpha, length_km).watts - cfg.rx_sensitivity.watts

    if margin(lower_km) < 0:
        logger.warning('wireless link does not close even at %g km', lower_km)
        return LengthLimit(0.0, closes=False)
    if margin(upper_km) >= 0:
        return LengthLimit(upper_km, capped=True)
    return LengthLimit(bisect(margin, lower_km, upper_km, xtol=xtol_km))
