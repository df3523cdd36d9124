import json

import pytest

from pyoptlink.config import LinkConfigs, config_document, configs_from_document, load_config
from pyoptlink.errors import ConfigError
from pyoptlink.fiber import FiberLinkConfig, FiberMode, LineCoding, TransceiverKind
from pyoptlink.fso import FsoLinkConfig, WeatherCondition


def write_config(tmp_path, document):
    path = tmp_path / 'study.json'
    path.write_text(json.dumps(document), encoding='utf-8')
    return str(path)


def test_absent_path_gives_defaults():
    configs = load_config(None)
    assert configs == LinkConfigs()
    assert configs.fso == FsoLinkConfig()
    assert configs.fiber == FiberLinkConfig()
    assert configs.weather == WeatherCondition()
    assert configs.reference_wavelength.um == 0.55


def test_partial_document_merges_over_defaults(tmp_path):
    path = write_config(tmp_path, {'fso': {'tx_power_mw': 50, 'divergence_deg': 0.2},
                                   'weather': {'visibility_km': 1.0,
                                               'reference_wavelength_um': 0.5}})
    configs = load_config(path)
    assert configs.fso.tx_power.watts == pytest.approx(0.05)
    assert configs.fso.divergence.deg == 0.2
    assert configs.fso.optics_efficiency == 0.5
    assert configs.weather.visibility_km == 1.0
    assert configs.reference_wavelength.um == 0.5
    assert configs.fiber == FiberLinkConfig()


def test_transceiver_applied_before_other_keys():
    configs = configs_from_document({'fiber': {'coupling_loss_db': 3.0, 'transceiver': 'LD_APD'}})
    assert configs.fiber.transceiver is TransceiverKind.LD_APD
    assert configs.fiber.source_spectral_width_nm == 1.0
    assert configs.fiber.photons_per_bit == 250.0
    assert configs.fiber.coupling_loss_db == 3.0

    ld = configs_from_document({'fiber': {'transceiver': 'LD_APD'}}).fiber
    assert ld.coupling_loss_db == 8.0


def test_fiber_choices_and_nullables():
    fiber = configs_from_document({'fiber': {'mode': 'single', 'coding': 'RZ', 'bit_rate_gbps': 2.5,
                                             'tx_bandwidth_mhz': None,
                                             'rx_sensitivity_uw': 2.0}}).fiber
    assert fiber.mode is FiberMode.SINGLE
    assert fiber.coding is LineCoding.RZ
    assert fiber.bit_rate == pytest.approx(2.5e9)
    assert fiber.tx_bandwidth_mhz is None
    assert fiber.rx_sensitivity.watts == pytest.approx(2e-6)


@pytest.mark.parametrize('document, key', [
    ({'fso': {'tx_power_mw': -1}}, 'fso.tx_power_mw'),
    ({'fso': {'tx_power_w': 1}}, 'fso.tx_power_w'),
    ({'fso': {'optics_efficiency': 'high'}}, 'fso.optics_efficiency'),
    ({'fso': {'optics_efficiency': True}}, 'fso.optics_efficiency'),
    ({'fso': {'optics_efficiency': 2.0}}, 'fso.optics_efficiency'),
    ({'fiber': {'transceiver': 'LASER'}}, 'fiber.transceiver'),
    ({'fiber': {'mode': 'few'}}, 'fiber.mode'),
    ({'fiber': {'modal_q': 1.5}}, 'fiber.modal_q'),
    ({'fiber': {'coupling_loss_db': None}}, 'fiber.coupling_loss_db'),
    ({'weather': {'visibility_km': 0}}, 'weather.visibility_km'),
    ({'weather': {'reference_wavelength_um': -0.55}}, 'weather.reference_wavelength_um'),
    ({'radio': {}}, 'radio'),
    ({'fso': []}, 'fso'),
    ({'fiber': {'dispersion_ns_per_nm_km': float('nan')}}, 'fiber.dispersion_ns_per_nm_km'),
    ({'weather': {'visibility_km': float('inf')}}, 'weather.visibility_km'),
    ({'fso': {'tx_power_mw': 10 ** 400}}, 'fso.tx_power_mw'),
])
def test_errors_name_the_key(document, key):
    with pytest.raises(ConfigError) as err:
        configs_from_document(document)
    assert str(err.value).startswith(key)


def test_unreadable_and_malformed_files(tmp_path):
    with pytest.raises(ConfigError, match='cannot read'):
        load_config(str(tmp_path / 'missing.json'))
    bad = tmp_path / 'bad.json'
    bad.write_text('{"fso": ', encoding='utf-8')
    with pytest.raises(ConfigError, match='invalid JSON'):
        load_config(str(bad))
    latin = tmp_path / 'latin.json'
    latin.write_bytes('{"fso": {"note": "caf\u00e9"}}'.encode('latin-1'))
    with pytest.raises(ConfigError, match='UTF-8'):
        load_config(str(latin))
    top = tmp_path / 'list.json'
    top.write_text('[1, 2]', encoding='utf-8')
    with pytest.raises(ConfigError, match='JSON object'):
        load_config(str(top))


def test_config_document_inverts_load(tmp_path):
    configs = configs_from_document({'fso': {'wavelength_um': 0.85, 'rx_sensitivity_uw': 5.0},
                                     'fiber': {'transceiver': 'LD_APD', 'mode': 'single',
                                               'rx_bandwidth_mhz': 750.0},
                                     'weather': {'cn2_m_minus_2_3': 1e-14}})
    document = config_document(configs)
    assert document['fiber']['transceiver'] == 'LD_APD'
    assert document['fiber']['tx_bandwidth_mhz'] is None
    reloaded = config_document(load_config(write_config(tmp_path, document)))
    for section, values in document.items():
        assert reloaded[section] == pytest.approx(values, rel=1e-12)


def test_default_document_lists_every_key():
    document = config_document(LinkConfigs())
    assert sorted(document) == ['fiber', 'fso', 'weather']
    assert document['fso']['tx_power_mw'] == pytest.approx(100.0)
    assert document['fiber']['transceiver'] == 'LED_PIN'
    assert document['fiber']['rx_sensitivity_uw'] is None
    assert document['weather']['reference_wavelength_um'] == 0.55
    json.dumps(document)
