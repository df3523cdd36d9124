"""
Default tools.
"""

__version__ = '0.1.0'

from .errors import (LinkModelError, DomainError, FitDomainError,
                     TransceiverLimitedError, ConfigError, SweepError)

from .units import (PowerLevel, AttenuationCoeff, Wavelength, AngleDeg, LengthLimit,
                    power_dbm_from_watts, power_watts_from_dbm,
                    attenuation_db_per_km, photon_energy)

from .config import (LinkConfigs, load_config, config_document)

from .sweep import (SweepSpec, SweepTable, FamilyMember, TrendExpectation,
                    TrendReport, run_sweep, figure_preset, check_trends)

from .utilities import (bisect, digest, mkfile)

__all__ = ['LinkModelError', 'DomainError', 'FitDomainError',
           'TransceiverLimitedError', 'ConfigError', 'SweepError',
           'PowerLevel', 'AttenuationCoeff', 'Wavelength', 'AngleDeg', 'LengthLimit',
           'power_dbm_from_watts', 'power_watts_from_dbm',
           'attenuation_db_per_km', 'photon_energy',
           'LinkConfigs', 'load_config', 'config_document',
           'SweepSpec', 'SweepTable', 'FamilyMember', 'TrendExpectation',
           'TrendReport', 'run_sweep', 'figure_preset', 'check_trends',
           'bisect', 'digest', 'mkfile']
