"""
Power budget of a digital wire optical link: photon-budget receiver
sensitivity, attenuation-limited length, polarization mode dispersion and the
chromatic dispersion factor.
"""

import logging
import math
from dataclasses import dataclass, replace
from enum import Enum
from typing import Optional

from ..errors import DomainError
from ..units import LIGHT_SPEED, LengthLimit, PowerLevel, Wavelength, photon_energy

logger = logging.getLogger(__name__)


class TransceiverKind(str, Enum):
    LED_PIN = 'LED_PIN'
    LD_APD = 'LD_APD'


class FiberMode(str, Enum):
    SINGLE = 'single'
    MULTI = 'multi'


class LineCoding(str, Enum):
    """Line code; the value of `budget_fraction` is the share of the bit period
    the system rise time may take."""

    NRZ = 'NRZ'
    RZ = 'RZ'

    @property
    def budget_fraction(self):
        return 0.7 if self is LineCoding.NRZ else 0.35

    @property
    def bandwidth_factor(self):
        # an RZ pulse fills half the bit slot
        return 1.0 if self is LineCoding.NRZ else 2.0


@dataclass(frozen=True)
class TransceiverPair:
    """Source/detector pairing and the link parameters it implies.

    Photons per bit at BER 1e-9 are textbook magnitudes for a PIN and an APD
    receiver.
    """

    kind: TransceiverKind
    coupling_loss_db: float
    spectral_width_nm: float
    photons_per_bit: float

    @classmethod
    def of(cls, kind):
        return TRANSCEIVERS[TransceiverKind(kind)]


TRANSCEIVERS = {
    TransceiverKind.LED_PIN: TransceiverPair(TransceiverKind.LED_PIN, 1.5, 50.0, 1000.0),
    TransceiverKind.LD_APD: TransceiverPair(TransceiverKind.LD_APD, 8.0, 1.0, 250.0),
}


@dataclass(frozen=True)
class FiberLinkConfig:
    """Digital wire optical link design parameters, defaulting to an LED/PIN pair.

    Parameters
    ----------
    source_power : PowerLevel
        source power P_s, by default 100 mW.
    coupling_loss_db : float
        coupling loss P_c in dB, set by the transceiver pair.
    modulator_loss_db : float
        modulator loss P_m in dB, by default 0 (direct modulation).
    fiber_loss_db_per_km : float
        fiber attenuation alpha, by default 3.5 dB/km.
    wavelength : Wavelength
        operating wavelength, by default 1.55 um.
    photons_per_bit : float
        receiver sensitivity n0 in photons per bit, set by the transceiver pair.
    bit_rate : float
        bit rate B0 in bit/s, by default 1 Gb/s.
    tx_bandwidth_mhz, rx_bandwidth_mhz : float or None
        transmitter and receiver bandwidths; None matches them to the line rate.
    modal_bw_mhz_km : float
        modal bandwidth-length product, by default 900 MHz km.
    modal_q : float
        modal equilibrium factor q in [0.5, 1], by default 0.7.
    source_spectral_width_nm : float
        source spectral width sigma_lambda, set by the transceiver pair.
    dispersion_ns_per_nm_km : float
        material dispersion D, by default 0.07 ns/(nm km).
    pmd_coeff_ps_sqrtkm : float
        PMD coefficient, by default 0.1 ps/sqrt(km).
    coding : LineCoding
        NRZ or RZ, by default NRZ.
    mode : FiberMode
        single- or multi-mode fiber, by default multi-mode.
    transceiver : TransceiverKind
        transceiver pair the defaults were taken from, by default LED/PIN.
    rx_sensitivity : PowerLevel or None
        fixed receiver sensitivity; None uses the photon budget h*nu*n0*B0.
    """

    source_power: PowerLevel = PowerLevel(0.1)
    coupling_loss_db: float = 1.5
    modulator_loss_db: float = 0.0
    fiber_loss_db_per_km: float = 3.5
    wavelength: Wavelength = Wavelength(1.55)
    photons_per_bit: float = 1000.0
    bit_rate: float = 1e9
    tx_bandwidth_mhz: Optional[float] = None
    rx_bandwidth_mhz: Optional[float] = None
    modal_bw_mhz_km: float = 900.0
    modal_q: float = 0.7
    source_spectral_width_nm: float = 50.0
    dispersion_ns_per_nm_km: float = 0.07
    pmd_coeff_ps_sqrtkm: float = 0.1
    coding: LineCoding = LineCoding.NRZ
    mode: FiberMode = FiberMode.MULTI
    transceiver: TransceiverKind = TransceiverKind.LED_PIN
    rx_sensitivity: Optional[PowerLevel] = None

    def __post_init__(self):
        for name in ('coupling_loss_db', 'modulator_loss_db', 'fiber_loss_db_per_km',
                     'source_spectral_width_nm', 'pmd_coeff_ps_sqrtkm'):
            if not getattr(self, name) >= 0:
                raise DomainError(f'{name} must be >= 0 (got {getattr(self, name)!r})')
        for name in ('photons_per_bit', 'bit_rate', 'modal_bw_mhz_km'):
            if not getattr(self, name) > 0:
                raise DomainError(f'{name} must be > 0 (got {getattr(self, name)!r})')
        for name in ('tx_bandwidth_mhz', 'rx_bandwidth_mhz'):
            value = getattr(self, name)
            if value is not None and not value > 0:
                raise DomainError(f'{name} must be > 0 MHz (got {value!r})')
        if not 0.5 <= self.modal_q <= 1.0:
            raise DomainError(f'modal_q must lie in [0.5, 1] (got {self.modal_q!r})')
        if self.modal_q in (0.5, 1.0):
            logger.warning('modal equilibrium factor q = %g is on the edge of [0.5, 1]', self.modal_q)
        if not math.isfinite(self.dispersion_ns_per_nm_km):
            raise DomainError(f'dispersion_ns_per_nm_km must be finite (got {self.dispersion_ns_per_nm_km!r})')
        # accept plain strings for the enum fields
        object.__setattr__(self, 'coding', LineCoding(self.coding))
        object.__setattr__(self, 'mode', FiberMode(self.mode))
        object.__setattr__(self, 'transceiver', TransceiverKind(self.transceiver))

    @classmethod
    def from_transceiver(cls, kind, **overrides):
        return cls().with_transceiver(kind).replace(**overrides)

    def with_transceiver(self, kind):
        """Copy with the coupling loss, spectral width and n0 of a transceiver pair."""
        pair = TransceiverPair.of(kind)
        return replace(self, transceiver=pair.kind,
                       coupling_loss_db=pair.coupling_loss_db,
                       source_spectral_width_nm=pair.spectral_width_nm,
                       photons_per_bit=pair.photons_per_bit)

    def replace(self, **changes):
        return replace(self, **changes)

    @property
    def matched_bandwidth_mhz(self):
        return self.bit_rate / 1e6 * self.coding.bandwidth_factor

    @property
    def tx_bandwidth(self):
        """Effective transmitter bandwidth in MHz."""
        return self.matched_bandwidth_mhz if self.tx_bandwidth_mhz is None else self.tx_bandwidth_mhz

    @property
    def rx_bandwidth(self):
        """Effective receiver bandwidth in MHz."""
        return self.matched_bandwidth_mhz if self.rx_bandwidth_mhz is None else self.rx_bandwidth_mhz

    @property
    def bit_period_ns(self):
        return 1e9 / self.bit_rate


def receiver_sensitivity(n0, wavelength, bit_rate):
    """Minimum received power h*nu*n0*B0 for BER 1e-9.

    Parameters
    ----------
    n0 : float
        photons per bit, > 0.
    wavelength : Wavelength
        optical wavelength.
    bit_rate : float
        bit rate in bit/s, >= 0.

    Returns
    -------
    PowerLevel
        required received power.
    """
    if not n0 > 0:
        raise DomainError(f'photons per bit must be > 0 (got {n0!r})')
    if not bit_rate >= 0:
        raise DomainError(f'bit rate must be >= 0 bit/s (got {bit_rate!r})')
    return PowerLevel(photon_energy(wavelength) * n0 * bit_rate)


def required_power_dbm(cfg):
    """Receiver requirement in dBm: the fixed sensitivity if set, else the photon budget."""
    if cfg.rx_sensitivity is not None:
        return cfg.rx_sensitivity.dbm
    return receiver_sensitivity(cfg.photons_per_bit, cfg.wavelength, cfg.bit_rate).dbm


def received_power_dbm(cfg, length_km):
    """Saturated attenuation-limited budget P_s - P_c - P_m - alpha*L, in dBm."""
    if not length_km >= 0:
        raise DomainError(f'fiber length must be >= 0 km (got {length_km!r})')
    return (cfg.source_power.dbm - cfg.coupling_loss_db - cfg.modulator_loss_db
            - cfg.fiber_loss_db_per_km * length_km)


def attenuation_limited_length(cfg):
    """Maximum fiber length at which the power budget meets the receiver requirement.

    Parameters
    ----------
    cfg : FiberLinkConfig
        link configuration; alpha must be > 0.

    Returns
    -------
    LengthLimit
        (P_s - P_c - P_m - P_required) / alpha in km; a negative budget gives
        km = 0 with closes=False.
    """
    alpha = cfg.fiber_loss_db_per_km
    if not alpha > 0:
        raise DomainError(f'fiber loss must be > 0 dB/km for an attenuation limit (got {alpha!r})')

    length = (cfg.source_power.dbm - cfg.coupling_loss_db - cfg.modulator_loss_db
              - required_power_dbm(cfg)) / alpha
    if length < 0:
        logger.warning('receiver requirement exceeds the launched power, link never closes')
        return LengthLimit(0.0, closes=False)
    return LengthLimit(length)


def pmd_delay(length_km, coeff_ps_sqrtkm):
    """Mean differential group delay sqrt(L)*coeff in ps."""
    if not length_km >= 0:
        raise DomainError(f'fiber length must be >= 0 km (got {length_km!r})')
    if not coeff_ps_sqrtkm >= 0:
        raise DomainError(f'PMD coefficient must be >= 0 ps/sqrt(km) (got {coeff_ps_sqrtkm!r})')
    return math.sqrt(length_km) * coeff_ps_sqrtkm


def pmd_limited_length(bit_rate, coeff_ps_sqrtkm):
    """Longest fiber whose PMD delay stays within a tenth of the bit period.

    Parameters
    ----------
    bit_rate : float
        bit rate in bit/s, > 0.
    coeff_ps_sqrtkm : float
        PMD coefficient in ps/sqrt(km), > 0.

    Returns
    -------
    float
        1/(100*B0^2*coeff^2) in km, with B0 in 1/ps.
    """
    if not bit_rate > 0:
        raise DomainError(f'bit rate must be > 0 bit/s (got {bit_rate!r})')
    if not coeff_ps_sqrtkm > 0:
        raise DomainError(f'PMD coefficient must be > 0 ps/sqrt(km) (got {coeff_ps_sqrtkm!r})')
    rate_per_ps = bit_rate * 1e-12
    return 1.0 / (100.0 * rate_per_ps ** 2 * coeff_ps_sqrtkm ** 2)


def pmd_within_penalty(length_km, bit_rate, coeff_ps_sqrtkm):
    """True when the PMD delay stays within T/10 (a 1 dB power penalty)."""
    if not bit_rate > 0:
        raise DomainError(f'bit rate must be > 0 bit/s (got {bit_rate!r})')
    return pmd_delay(length_km, coeff_ps_sqrtkm) <= 1e12 / bit_rate / 10.0


def chromatic_dispersion_factor(wavelength, bit_rate, length_km, dispersion_ps_nm_km):
    """Chromatic dispersion factor (lambda/(pi*c))*B^2*L*D, in SI units.

    Reported as a diagnostic only; it is not turned into a length limit.

    Parameters
    ----------
    wavelength : Wavelength
        optical wavelength.
    bit_rate : float
        bit rate in bit/s.
    length_km : float
        fiber length in km.
    dispersion_ps_nm_km : float
        dispersion parameter in ps/(nm km).

    Returns
    -------
    float
        the factor with lambda in m, c in m/s, L in m and D in s/m^2.
    """
    for name, value in (('bit rate', bit_rate), ('fiber length', length_km),
                        ('dispersion', dispersion_ps_nm_km)):
        if not value >= 0:
            raise DomainError(f'{name} must be >= 0 (got {value!r})')
    dispersion_si = dispersion_ps_nm_km * 1e-12 / (1e-9 * 1e3)
    return wavelength.m / (math.pi * LIGHT_SPEED) * bit_rate ** 2 * (length_km * 1e3) * dispersion_si
