"""
Tools for digital wire (fiber) optical links.
"""

from .budget import (TransceiverKind, FiberMode, LineCoding, TransceiverPair,
                     TRANSCEIVERS, FiberLinkConfig,
                     receiver_sensitivity, required_power_dbm, received_power_dbm,
                     attenuation_limited_length,
                     pmd_delay, pmd_limited_length, pmd_within_penalty,
                     chromatic_dispersion_factor)

from .risetime import (RiseTimeComponents, RiseTimeBudget, LimitingFactor,
                       FiberLimitsReport, modal_bandwidth, rise_time_components,
                       rise_time_budget_ns, system_rise_time,
                       rise_time_limited_length, fiber_link_limits)

__all__ = ['TransceiverKind', 'FiberMode', 'LineCoding', 'TransceiverPair',
           'TRANSCEIVERS', 'FiberLinkConfig',
           'receiver_sensitivity', 'required_power_dbm', 'received_power_dbm',
           'attenuation_limited_length',
           'pmd_delay', 'pmd_limited_length', 'pmd_within_penalty',
           'chromatic_dispersion_factor',
           'RiseTimeComponents', 'RiseTimeBudget', 'LimitingFactor',
           'FiberLimitsReport', 'modal_bandwidth', 'rise_time_components',
           'rise_time_budget_ns', 'system_rise_time',
           'rise_time_limited_length', 'fiber_link_limits']
