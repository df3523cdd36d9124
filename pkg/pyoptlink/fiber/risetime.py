"""
Rise-time budget of a digital wire optical link and the combined length limits.
"""

import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple

from ..errors import DomainError, TransceiverLimitedError
from ..units import LengthLimit
from ..utilities import bisect
from .budget import (FiberMode, LineCoding, attenuation_limited_length,
                     pmd_limited_length)

logger = logging.getLogger(__name__)

EDGE_RISE_NS_MHZ = 350.0     # 10-90 % rise time of a first-order response, ns*MHz
MODAL_RISE_NS_MHZ = 440.0


class RiseTimeComponents(NamedTuple):
    t_tx_ns: float
    t_rx_ns: float
    t_mod_ns: float
    t_gvd_ns: float


@dataclass(frozen=True)
class RiseTimeBudget:
    """Root-sum-square system rise time against the line-code budget."""

    t_tx_ns: float
    t_rx_ns: float
    t_mod_ns: float
    t_gvd_ns: float
    t_sys_ns: float
    budget_ns: float
    passes: bool


class LimitingFactor(str, Enum):
    ATTENUATION = 'attenuation'
    PMD = 'pmd'
    RISE_TIME = 'rise-time'


@dataclass(frozen=True)
class FiberLimitsReport:
    """The three length limits of a fiber link and the one that binds."""

    attenuation_limited_km: float
    pmd_limited_km: float
    rise_time_limited_km: float
    overall_km: float
    limiting_factor: LimitingFactor
    closes: bool


def modal_bandwidth(modal_bw_mhz_km, length_km, q):
    """Modal bandwidth B0/L^q in MHz of a multi-mode fiber.

    Parameters
    ----------
    modal_bw_mhz_km : float
        bandwidth-length product in MHz km.
    length_km : float
        fiber length in km, > 0.
    q : float
        modal equilibrium factor; 0.5 < q < 1, the end points are accepted
        with a warning.

    Returns
    -------
    float
        bandwidth in MHz.
    """
    if not length_km > 0:
        raise DomainError(f'fiber length must be > 0 km for a modal bandwidth (got {length_km!r})')
    if not 0.5 <= q <= 1.0:
        raise DomainError(f'modal equilibrium factor q must lie in [0.5, 1] (got {q!r})')
    if q in (0.5, 1.0):
        logger.warning('modal equilibrium factor q = %g is on the edge of [0.5, 1]', q)
    return modal_bw_mhz_km / length_km ** q


def rise_time_components(cfg, length_km):
    """Transmitter, receiver, modal and chromatic rise times in ns.

    Parameters
    ----------
    cfg : FiberLinkConfig
        link configuration.
    length_km : float
        fiber length in km, >= 0.

    Returns
    -------
    RiseTimeComponents
        350/B_tx, 350/B_rx, 440*L^q/B0 (zero for single-mode) and |D|*L*sigma.
    """
    if not length_km >= 0:
        raise DomainError(f'fiber length must be >= 0 km (got {length_km!r})')

    t_tx = EDGE_RISE_NS_MHZ / cfg.tx_bandwidth
    t_rx = EDGE_RISE_NS_MHZ / cfg.rx_bandwidth
    if cfg.mode is FiberMode.MULTI:
        # equals 440 / modal_bandwidth(...), written out so that L = 0 is allowed
        t_mod = MODAL_RISE_NS_MHZ * length_km ** cfg.modal_q / cfg.modal_bw_mhz_km
    else:
        t_mod = 0.0
    t_gvd = abs(cfg.dispersion_ns_per_nm_km) * length_km * cfg.source_spectral_width_nm

    return RiseTimeComponents(t_tx, t_rx, t_mod, t_gvd)


def rise_time_budget_ns(bit_rate, coding):
    """Allowed system rise time: 70 % (NRZ) or 35 % (RZ) of the bit period, in ns."""
    return LineCoding(coding).budget_fraction / bit_rate * 1e9


def system_rise_time(components, bit_rate, coding=LineCoding.NRZ):
    """Total rise time and whether it fits the line-code budget.

    Parameters
    ----------
    components : RiseTimeComponents
        individual rise times in ns.
    bit_rate : float
        bit rate in bit/s.
    coding : LineCoding, optional
        line code, by default NRZ

    Returns
    -------
    RiseTimeBudget
        t_sys = sqrt(sum of squares) and the budget check.
    """
    if not all(t >= 0 for t in components):
        raise DomainError(f'rise times must be >= 0 ns (got {tuple(components)!r})')
    t_tx, t_rx, t_mod, t_gvd = components
    t_sys = math.sqrt(t_tx ** 2 + t_rx ** 2 + t_mod ** 2 + t_gvd ** 2)
    budget = rise_time_budget_ns(bit_rate, coding)

    return RiseTimeBudget(t_tx_ns=t_tx, t_rx_ns=t_rx, t_mod_ns=t_mod, t_gvd_ns=t_gvd,
                          t_sys_ns=t_sys, budget_ns=budget, passes=t_sys <= budget)


def rise_time_limited_length(cfg, upper_km=1e4, xtol_km=1e-12):
    """Longest fiber whose system rise time fits the line-code budget.

    Parameters
    ----------
    cfg : FiberLinkConfig
        link configuration.
    upper_km : float, optional
        upper end of the search bracket, by default 1e4
    xtol_km : float, optional
        bisection tolerance, by default 1e-12

    Returns
    -------
    LengthLimit
        the root of t_sys(L) = budget; `upper_km` with capped=True when no
        length-dependent term reaches the budget inside the bracket.

    Raises
    ------
    TransceiverLimitedError
        transmitter and receiver rise times alone reach the budget.
    """
    budget = rise_time_budget_ns(cfg.bit_rate, cfg.coding)
    fixed = rise_time_components(cfg, 0.0)
    fixed_ns = math.sqrt(fixed.t_tx_ns ** 2 + fixed.t_rx_ns ** 2)
    if fixed_ns >= budget:
        raise TransceiverLimitedError(
            f'transmitter and receiver rise times ({fixed_ns:.4g} ns) already reach the '
            f'{cfg.coding.value} budget of {budget:.4g} ns at {cfg.bit_rate:g} bit/s')

    def excess(length_km):
        return system_rise_time(rise_time_components(cfg, length_km),
                                cfg.bit_rate, cfg.coding).t_sys_ns - budget

    if excess(upper_km) <= 0:
        logger.warning('rise-time budget still met at %g km, reporting the bracket cap', upper_km)
        return LengthLimit(upper_km, capped=True)
    return LengthLimit(bisect(excess, 0.0, upper_km, xtol=xtol_km))


def fiber_link_limits(cfg):
    """Attenuation, PMD and rise-time length limits and the overall limit.

    Parameters
    ----------
    cfg : FiberLinkConfig
        link configuration.

    Returns
    -------
    FiberLimitsReport
        the overall limit is the smallest of the three; ties go to the
        attenuation limit first, then PMD.
    """
    attenuation = attenuation_limited_length(cfg)
    if cfg.pmd_coeff_ps_sqrtkm > 0:
        pmd = pmd_limited_length(cfg.bit_rate, cfg.pmd_coeff_ps_sqrtkm)
    else:
        pmd = math.inf
    rise = rise_time_limited_length(cfg)

    limits = {LimitingFactor.ATTENUATION: attenuation.km,
              LimitingFactor.PMD: pmd,
              LimitingFactor.RISE_TIME: rise.km}
    factor = min(limits, key=limits.get)

    return FiberLimitsReport(attenuation_limited_km=attenuation.km,
                             pmd_limited_km=pmd,
                             rise_time_limited_km=rise.km,
                             overall_km=limits[factor],
                             limiting_factor=factor,
                             closes=attenuation.closes)
