import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from pyoptlink.errors import DomainError
from pyoptlink.fso.atmosphere import (LossBreakdown, WeatherCondition, fog_attenuation,
                                      rain_attenuation, scintillation_margin_db,
                                      scintillation_variance, size_distribution_exponent,
                                      snow_attenuation, total_path_loss)
from pyoptlink.units import Wavelength

VISIBLE = Wavelength(0.55)
C_BAND = Wavelength(1.55)


def test_size_distribution_exponent():
    assert size_distribution_exponent(10.0) == 1.3
    assert size_distribution_exponent(50.0) == 1.3
    assert size_distribution_exponent(6.0) == 1.3
    assert size_distribution_exponent(1.0) == 0.585
    assert size_distribution_exponent(2.0) == pytest.approx(0.585 * 2.0 ** (1.0 / 3.0))
    with pytest.raises(DomainError, match='visibility'):
        size_distribution_exponent(0.0)


@pytest.mark.parametrize('v', [1.0, 6.0, 10.0, 50.0])
def test_fog_at_reference_wavelength(v):
    assert fog_attenuation(v, VISIBLE, VISIBLE) == 3.912 / v


def test_fog_at_1550():
    sigma = fog_attenuation(1.0, C_BAND, VISIBLE)
    assert sigma == pytest.approx(3.912 * (1.55 / 0.55) ** -0.585, rel=1e-12)
    assert sigma == pytest.approx(2.1339, abs=1e-3)


def test_fog_falls_with_visibility_and_wavelength():
    vs = np.linspace(0.5, 50.0, 101)
    for um in (0.85, 1.3, 1.55):
        sigma = [fog_attenuation(v, Wavelength(um), VISIBLE) for v in vs]
        assert np.all(np.diff(sigma) < 0)
    at_1km = [fog_attenuation(1.0, Wavelength(um), VISIBLE) for um in (0.85, 1.3, 1.55)]
    assert np.all(np.diff(at_1km) < 0)


def test_rain_attenuation():
    assert rain_attenuation(0.0) == 0.0
    assert rain_attenuation(8.0) == pytest.approx(1.076 * 4.0)
    with pytest.raises(DomainError, match='rain'):
        rain_attenuation(-1.0)


def test_snow_attenuation():
    assert snow_attenuation(0.0, C_BAND) == 0.0
    assert snow_attenuation(1.0, C_BAND) == pytest.approx(6.02981, rel=1e-6)
    assert snow_attenuation(2.0, Wavelength(0.85)) == pytest.approx(
        (5.42e-5 * 850.0 + 5.9458) * 2.0 ** 1.38, rel=1e-12)
    assert snow_attenuation(2.0, Wavelength(0.85)) == pytest.approx(15.595, abs=1e-3)
    with pytest.raises(DomainError, match='snow'):
        snow_attenuation(-0.5, C_BAND)


def test_scintillation_variance():
    k = 2.0 * math.pi / 1550.0 * 1e9
    expected = 4.0 * 23.17 * k ** (7.0 / 6.0) * 1e-14 * 1000.0 ** (11.0 / 6.0)
    variance = scintillation_variance(C_BAND, 1e-14, 1000.0)
    assert variance == pytest.approx(expected, rel=1e-12)
    assert variance == pytest.approx(15.0, abs=0.1)
    assert scintillation_variance(C_BAND, 0.0, 1000.0) == 0.0
    with pytest.raises(DomainError):
        scintillation_variance(C_BAND, -1e-14, 1000.0)
    with pytest.raises(DomainError):
        scintillation_variance(C_BAND, 1e-14, -1.0)


def test_scintillation_margin():
    assert scintillation_margin_db(4.0) == 4.0
    assert scintillation_margin_db(0.0) == 0.0
    with pytest.raises(DomainError):
        scintillation_margin_db(-1.0)


def test_total_path_loss_sums_mechanisms():
    weather = WeatherCondition(visibility_km=1.0, rain_rate_mm_per_hr=8.0,
                               snow_rate_mm_per_hr=0.0, cn2=0.0)
    losses = total_path_loss(weather, C_BAND, VISIBLE, 1.0)
    assert isinstance(losses, LossBreakdown)
    assert losses.fog_db == pytest.approx(9.2676, abs=1e-3)
    assert losses.rain_db == pytest.approx(4.304)
    assert losses.snow_db == 0.0
    assert losses.scintillation_db == 0.0
    assert losses.total_db == pytest.approx(13.571, abs=1e-3)


def test_total_path_loss_scales_with_length():
    weather = WeatherCondition(visibility_km=2.0, rain_rate_mm_per_hr=5.0,
                               snow_rate_mm_per_hr=1.0, cn2=0.0)
    one = total_path_loss(weather, C_BAND, VISIBLE, 1.0)
    three = total_path_loss(weather, C_BAND, VISIBLE, 3.0)
    assert_allclose([three.fog_db, three.rain_db, three.snow_db],
                    [3 * one.fog_db, 3 * one.rain_db, 3 * one.snow_db], rtol=1e-12)

    zero = total_path_loss(weather, C_BAND, VISIBLE, 0.0)
    assert zero.total_db == 0.0
    with pytest.raises(DomainError):
        total_path_loss(weather, C_BAND, VISIBLE, -1.0)


def test_weather_condition_invariants():
    with pytest.raises(DomainError, match='visibility_km'):
        WeatherCondition(visibility_km=0.0)
    with pytest.raises(DomainError, match='rain_rate_mm_per_hr'):
        WeatherCondition(rain_rate_mm_per_hr=-1.0)
    clear = WeatherCondition.clear_air()
    assert clear.visibility_km == 50.0
    assert clear.cn2 == 0.0


def test_size_distribution_exponent_below_switch():
    just_below = size_distribution_exponent(6.0 - 1e-9)
    assert just_below == pytest.approx(0.585 * 6.0 ** (1.0 / 3.0), rel=1e-9)
    assert just_below == pytest.approx(1.0630, abs=1e-4)
    assert just_below < size_distribution_exponent(6.0)


def test_rain_concave_snow_convex():
    rates = np.linspace(0.5, 50.0, 101)
    rain = [rain_attenuation(r) for r in rates]
    snow = [snow_attenuation(r, C_BAND) for r in rates]
    assert np.all(np.diff(rain, n=2) < 0)
    assert np.all(np.diff(snow, n=2) > 0)


@pytest.mark.parametrize('cn2, length_m', [(1e-15, 500.0), (1e-14, 1000.0), (3e-13, 2500.0)])
def test_scintillation_scaling(cn2, length_m):
    base = scintillation_variance(C_BAND, cn2, length_m)
    assert scintillation_variance(C_BAND, 2.0 * cn2, length_m) / base == pytest.approx(2.0, rel=1e-9)
    assert scintillation_variance(C_BAND, 10.0 * cn2, length_m) / base == pytest.approx(10.0, rel=1e-9)
    assert scintillation_variance(C_BAND, cn2, 2.0 * length_m) / base == pytest.approx(
        2.0 ** (11.0 / 6.0), rel=1e-9)


def test_nan_inputs_raise():
    weather = WeatherCondition()
    with pytest.raises(DomainError):
        total_path_loss(weather, C_BAND, VISIBLE, math.nan)
    with pytest.raises(DomainError):
        rain_attenuation(math.nan)
    with pytest.raises(DomainError):
        scintillation_variance(C_BAND, 1e-14, math.nan)
