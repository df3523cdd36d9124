"""
Load and dump the JSON configuration of a link study.

The document has up to three sections, `fso`, `fiber` and `weather`; every key
carries its unit in its name. Missing keys keep the dataclass defaults.
"""

import json
import logging
import math
from dataclasses import dataclass, field, replace

from .errors import ConfigError, LinkModelError
from .fiber.budget import FiberLinkConfig, FiberMode, LineCoding, TransceiverKind
from .fso.atmosphere import WeatherCondition
from .fso.link import FsoLinkConfig
from .units import AngleDeg, PowerLevel, Wavelength

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LinkConfigs:
    """Wireless link, fiber link and weather settings of one study.

    Parameters
    ----------
    fso : FsoLinkConfig
        wireless optical link.
    fiber : FiberLinkConfig
        digital fiber link.
    weather : WeatherCondition
        atmospheric state for the wireless link.
    reference_wavelength : Wavelength
        Kruse reference wavelength, by default 0.55 um.
    """

    fso: FsoLinkConfig = field(default_factory=FsoLinkConfig)
    fiber: FiberLinkConfig = field(default_factory=FiberLinkConfig)
    weather: WeatherCondition = field(default_factory=WeatherCondition)
    reference_wavelength: Wavelength = Wavelength(0.55)


# key -> (dataclass field, JSON -> value, value -> JSON)
FSO_KEYS = {
    'tx_power_mw': ('tx_power', PowerLevel.from_mw, lambda p: p.mw),
    'wavelength_um': ('wavelength', Wavelength, lambda w: w.um),
    'divergence_deg': ('divergence', AngleDeg, lambda a: a.deg),
    'rx_aperture_area_m2': ('rx_aperture_area_m2', float, float),
    'tx_lens_diameter_mm': ('tx_lens_diameter_mm', float, float),
    'rx_lens_diameter_mm': ('rx_lens_diameter_mm', float, float),
    'rx_lens_radius_mm': ('rx_lens_radius_mm', float, float),
    'tx_beam_waist_mm': ('tx_beam_waist_mm', float, float),
    'rx_sensitivity_uw': ('rx_sensitivity', PowerLevel.from_uw, lambda p: p.watts * 1e6),
    'optics_efficiency': ('optics_efficiency', float, float),
}

FIBER_KEYS = {
    'mode': ('mode', FiberMode, lambda m: m.value),
    'coding': ('coding', LineCoding, lambda c: c.value),
    'source_power_mw': ('source_power', PowerLevel.from_mw, lambda p: p.mw),
    'coupling_loss_db': ('coupling_loss_db', float, float),
    'modulator_loss_db': ('modulator_loss_db', float, float),
    'fiber_loss_db_per_km': ('fiber_loss_db_per_km', float, float),
    'wavelength_um': ('wavelength', Wavelength, lambda w: w.um),
    'photons_per_bit': ('photons_per_bit', float, float),
    'bit_rate_gbps': ('bit_rate', lambda g: g * 1e9, lambda b: b / 1e9),
    'tx_bandwidth_mhz': ('tx_bandwidth_mhz', float, float),
    'rx_bandwidth_mhz': ('rx_bandwidth_mhz', float, float),
    'modal_bw_mhz_km': ('modal_bw_mhz_km', float, float),
    'modal_q': ('modal_q', float, float),
    'source_spectral_width_nm': ('source_spectral_width_nm', float, float),
    'dispersion_ns_per_nm_km': ('dispersion_ns_per_nm_km', float, float),
    'pmd_coeff_ps_per_sqrt_km': ('pmd_coeff_ps_sqrtkm', float, float),
    'rx_sensitivity_uw': ('rx_sensitivity', PowerLevel.from_uw, lambda p: p.watts * 1e6),
}
FIBER_NULLABLE = ('tx_bandwidth_mhz', 'rx_bandwidth_mhz', 'rx_sensitivity_uw')
FIBER_CHOICES = {'transceiver': TransceiverKind, 'mode': FiberMode, 'coding': LineCoding}

WEATHER_KEYS = {
    'visibility_km': ('visibility_km', float, float),
    'rain_rate_mm_per_hr': ('rain_rate_mm_per_hr', float, float),
    'snow_rate_mm_per_hr': ('snow_rate_mm_per_hr', float, float),
    'cn2_m_minus_2_3': ('cn2', float, float),
}

SECTIONS = ('fso', 'fiber', 'weather')


def load_config(path=None):
    """Read a JSON config document and merge it over the defaults.

    Parameters
    ----------
    path : str, optional
        path to the JSON document, by default None (defaults only)

    Returns
    -------
    LinkConfigs
        the merged configuration.

    Raises
    ------
    ConfigError
        unreadable file, invalid JSON, unknown section or key, wrong value
        type or a violated invariant; the message starts with the key path.
    """
    if path is None:
        return LinkConfigs()

    try:
        with open(path, 'r', encoding='utf-8') as f:
            document = json.load(f)
    except OSError as err:
        raise ConfigError(f'{path}: cannot read config ({err.strerror})') from err
    except json.JSONDecodeError as err:
        raise ConfigError(f'{path}: invalid JSON at line {err.lineno} column {err.colno}: {err.msg}') from err
    except UnicodeDecodeError as err:
        raise ConfigError(f'{path}: config is not valid UTF-8 (byte {err.start})') from err

    configs = configs_from_document(document)
    logger.info('loaded config %s', path)
    return configs


def configs_from_document(document):
    """Build `LinkConfigs` from an already parsed config document."""
    if not isinstance(document, dict):
        raise ConfigError('<root>: config document must be a JSON object')
    for section in document:
        if section not in SECTIONS:
            raise ConfigError(f'{section}: unknown section (expected one of {", ".join(SECTIONS)})')

    fso_doc = _section(document, 'fso')
    fiber_doc = _section(document, 'fiber')
    weather_doc = _section(document, 'weather')

    fso = _build('fso', FsoLinkConfig(), fso_doc, FSO_KEYS)

    fiber = FiberLinkConfig()
    fiber_doc = dict(fiber_doc)
    if 'transceiver' in fiber_doc:
        kind = _choice('fiber.transceiver', fiber_doc.pop('transceiver'), TransceiverKind)
        fiber = fiber.with_transceiver(kind)
    fiber = _build('fiber', fiber, fiber_doc, FIBER_KEYS, nullable=FIBER_NULLABLE)

    reference_um = weather_doc.get('reference_wavelength_um', 0.55)
    weather_doc = {k: v for k, v in weather_doc.items() if k != 'reference_wavelength_um'}
    weather = _build('weather', WeatherCondition(), weather_doc, WEATHER_KEYS)
    reference = _convert('weather.reference_wavelength_um', reference_um, Wavelength)

    return LinkConfigs(fso=fso, fiber=fiber, weather=weather, reference_wavelength=reference)


def config_document(configs):
    """Dump `LinkConfigs` as a config document; the inverse of `load_config`.

    Parameters
    ----------
    configs : LinkConfigs
        configuration to dump.

    Returns
    -------
    dict
        JSON-serialisable document with every key spelled out.
    """
    fso = _dump(configs.fso, FSO_KEYS)
    fiber = {'transceiver': configs.fiber.transceiver.value}
    fiber.update(_dump(configs.fiber, FIBER_KEYS))
    weather = _dump(configs.weather, WEATHER_KEYS)
    weather['reference_wavelength_um'] = configs.reference_wavelength.um
    return {'fso': fso, 'fiber': fiber, 'weather': weather}


def _section(document, name):
    section = document.get(name, {})
    if not isinstance(section, dict):
        raise ConfigError(f'{name}: section must be a JSON object')
    return section


def _build(section, base, values, keys, nullable=()):
    changes = {}
    for key, raw in values.items():
        path = f'{section}.{key}'
        if key not in keys:
            raise ConfigError(f'{path}: unknown key')
        attr, parse, _ = keys[key]
        if raw is None:
            if key not in nullable:
                raise ConfigError(f'{path}: null is not allowed')
            changes[attr] = None
        elif section == 'fiber' and key in FIBER_CHOICES:
            changes[attr] = _choice(path, raw, FIBER_CHOICES[key])
        else:
            changes[attr] = _convert(path, raw, parse)

    try:
        return replace(base, **changes)
    except LinkModelError as err:
        names = ', '.join(f'{section}.{k}' for k in values) or section
        raise ConfigError(f'{names}: {err}') from err


def _convert(path, raw, parse):
    # bool is an int subclass; reject it explicitly
    if isinstance(raw, bool) or not isinstance(raw, (int, float)):
        raise ConfigError(f'{path}: expected a number, got {type(raw).__name__} {raw!r}')
    try:
        value = float(raw)
    except OverflowError:
        value = math.inf
    if not math.isfinite(value):
        raise ConfigError(f'{path}: expected a finite number, got {value!r}')
    try:
        return parse(value)
    except LinkModelError as err:
        raise ConfigError(f'{path}: {err}') from err


def _choice(path, raw, enum):
    valid = [m.value for m in enum]
    if raw not in valid:
        raise ConfigError(f'{path}: expected one of {", ".join(valid)}, got {raw!r}')
    return enum(raw)


def _dump(obj, keys):
    document = {}
    for key, (attr, _, dump) in keys.items():
        value = getattr(obj, attr)
        document[key] = None if value is None else dump(value)
    return document
