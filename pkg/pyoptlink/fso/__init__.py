"""
Tools for wireless (free-space) optical links.
"""

from .atmosphere import (WeatherCondition, LossBreakdown,
                         size_distribution_exponent, fog_attenuation,
                         rain_attenuation, snow_attenuation,
                         scintillation_variance, scintillation_margin_db,
                         total_path_loss)

from .link import (FsoLinkConfig, FitDomain, FittedPolynomial, LinkBudget,
                   received_power, geometric_factor, beam_radius, ray_loss_db,
                   geometric_coupling_ratio,
                   osnr_from_distance, osnr_from_wavelength,
                   osnr_from_distance_wavelength,
                   rf_transmission_db, relative_transmission_db,
                   channel_capacity, osnr_at_rf, capacity_vs_rf,
                   link_budget, max_fso_distance)

__all__ = ['WeatherCondition', 'LossBreakdown',
           'size_distribution_exponent', 'fog_attenuation',
           'rain_attenuation', 'snow_attenuation',
           'scintillation_variance', 'scintillation_margin_db',
           'total_path_loss',
           'FsoLinkConfig', 'FitDomain', 'FittedPolynomial', 'LinkBudget',
           'received_power', 'geometric_factor', 'beam_radius', 'ray_loss_db',
           'geometric_coupling_ratio',
           'osnr_from_distance', 'osnr_from_wavelength',
           'osnr_from_distance_wavelength',
           'rf_transmission_db', 'relative_transmission_db',
           'channel_capacity', 'osnr_at_rf', 'capacity_vs_rf',
           'link_budget', 'max_fso_distance']
