"""
One-dimensional parameter sweeps over the link models, the figure presets and
the monotonic-trend checks that go with them.
"""

import csv
import io
import logging
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .config import LinkConfigs, config_document
from .errors import DomainError, SweepError
from .fiber.budget import FiberMode, LineCoding, TransceiverKind, attenuation_limited_length
from .fiber.risetime import fiber_link_limits, rise_time_limited_length
from .fso.atmosphere import fog_attenuation
from .fso.link import (capacity_vs_rf, osnr_from_distance, osnr_from_distance_wavelength,
                       ray_loss_db, rf_transmission_db)
from .units import Wavelength, attenuation_db_per_km
from .utilities import digest

logger = logging.getLogger(__name__)

NA = 'NA'
DEFAULT_STEPS = 101
DIRECTIONS = ('increasing', 'decreasing', 'above', 'below')
WINDOW_EPS = 1e-9


# targets: f(x, member value, configs) -> float
def _fog(visibility_km, wavelength_um, configs):
    sigma = fog_attenuation(visibility_km, Wavelength(wavelength_um), configs.reference_wavelength)
    return attenuation_db_per_km(sigma)


def _ray_loss(beam_diameter_mm, lens_diameter_mm, configs):
    return ray_loss_db(lens_diameter_mm / 2.0, beam_diameter_mm / 2.0)


def _osnr(length_km, wavelength_um, configs):
    return osnr_from_distance_wavelength(length_km, Wavelength(wavelength_um))


def _osnr_distance(length_km, _, configs):
    return osnr_from_distance(length_km)


def _rf(freq_ghz, amplified, configs):
    return rf_transmission_db(freq_ghz, amplified)


def _capacity(amplified):
    def target(freq_ghz, length_km, configs):
        return capacity_vs_rf(freq_ghz, length_km, amplified) / 1e9
    return target


def _at_bit_rate(target):
    def evaluate(bit_rate_gbps, fiber, configs):
        return target(fiber.replace(bit_rate=bit_rate_gbps * 1e9))
    return evaluate


TARGETS = {
    'fog_attenuation_db_per_km': _fog,
    'ray_loss_db': _ray_loss,
    'osnr_db': _osnr,
    'osnr_distance_db': _osnr_distance,
    'rf_transmission_db': _rf,
    'capacity_unamplified_gbps': _capacity(False),
    'capacity_amplified_gbps': _capacity(True),
    'fiber_overall_limit_km': _at_bit_rate(lambda cfg: fiber_link_limits(cfg).overall_km),
    'fiber_attenuation_limit_km': _at_bit_rate(lambda cfg: attenuation_limited_length(cfg).km),
    'fiber_rise_time_limit_km': _at_bit_rate(lambda cfg: rise_time_limited_length(cfg).km),
}


@dataclass(frozen=True)
class FamilyMember:
    """One curve of a sweep: a column label and the value handed to the target."""

    label: str
    value: object


@dataclass(frozen=True)
class TrendExpectation:
    """Expected shape of one sweep column.

    Parameters
    ----------
    column : str
        column under test.
    versus : str
        the x column for a trend along the grid (direction 'increasing' or
        'decreasing'), or another curve for a row-by-row ordering (direction
        'above' or 'below').
    direction : str
        one of 'increasing', 'decreasing', 'above', 'below'.
    fact : int
        number of the observed fact this check encodes.
    strict : bool, optional
        differences within `tol` count as violations, by default True
    tol : float, optional
        tie tolerance, by default 0.0
    x_min, x_max : float, optional
        restrict the check to this x window, by default the whole grid
    """

    column: str
    versus: str
    direction: str
    fact: int
    strict: bool = True
    tol: float = 0.0
    x_min: Optional[float] = None
    x_max: Optional[float] = None

    def __post_init__(self):
        if self.direction not in DIRECTIONS:
            raise SweepError(f'unknown trend direction {self.direction!r} '
                             f'(expected one of {", ".join(DIRECTIONS)})')
        if not self.tol >= 0:
            raise SweepError(f'trend tolerance must be >= 0 (got {self.tol!r})')

    def describe(self):
        relation = (f'{self.direction} in {self.versus}'
                    if self.direction in ('increasing', 'decreasing')
                    else f'{self.direction} {self.versus}')
        window = ''
        if self.x_min is not None or self.x_max is not None:
            low = '-inf' if self.x_min is None else f'{self.x_min:g}'
            high = 'inf' if self.x_max is None else f'{self.x_max:g}'
            window = f' on [{low}, {high}]'
        return f'fact {self.fact}: {self.column} {relation}{window}'


@dataclass(frozen=True)
class SweepSpec:
    """A one-dimensional sweep.

    Parameters
    ----------
    preset : str
        identifier recorded in the table metadata.
    parameter : str
        header of the x column.
    start, stop : float
        grid end points, start < stop.
    steps : int
        number of grid points, >= 2.
    family : tuple of FamilyMember
        the curves, one output column each.
    target : str
        key of the evaluated operation in `TARGETS`.
    column_template : str, optional
        header of a curve column, formatted with `label`, by default '{label}'
    configs : LinkConfigs, optional
        fixed link settings, by default the defaults
    expectations : tuple of TrendExpectation, optional
        trends the resulting table should satisfy, by default none
    """

    preset: str
    parameter: str
    start: float
    stop: float
    steps: int
    family: tuple
    target: str
    column_template: str = '{label}'
    configs: LinkConfigs = field(default_factory=LinkConfigs)
    expectations: tuple = ()

    def __post_init__(self):
        if self.target not in TARGETS:
            raise SweepError(f'unknown operation {self.target!r} '
                             f'(expected one of {", ".join(sorted(TARGETS))})')
        if not self.start < self.stop:
            raise SweepError(f'sweep range needs start < stop (got [{self.start}, {self.stop}])')
        if isinstance(self.steps, bool) or not isinstance(self.steps, int) or self.steps < 2:
            raise SweepError(f'sweep needs an integer number of steps >= 2 (got {self.steps!r})')
        if not self.family:
            raise SweepError('sweep family must not be empty')
        if len(set(self.columns)) != len(self.family):
            raise SweepError(f'sweep family labels must be distinct (got {self.columns})')
        object.__setattr__(self, 'family', tuple(self.family))
        object.__setattr__(self, 'expectations', tuple(self.expectations))

    @property
    def columns(self):
        return tuple(self.column_template.format(label=m.label) for m in self.family)

    @property
    def headers(self):
        return (self.parameter,) + self.columns

    def grid(self):
        return [float(x) for x in np.linspace(self.start, self.stop, self.steps)]

    def config_digest(self):
        return digest({'config': config_document(self.configs),
                       'target': self.target,
                       'parameter': self.parameter,
                       'range': [self.start, self.stop, self.steps],
                       'family': [m.label for m in self.family]})


@dataclass(frozen=True)
class SweepTable:
    """Sweep result: one row per grid point, None marks a domain-error cell."""

    headers: tuple
    rows: tuple
    metadata: dict

    def column(self, name):
        try:
            index = self.headers.index(name)
        except ValueError:
            raise SweepError(f'no column {name!r} in table (columns: {", ".join(self.headers)})') from None
        return [row[index] for row in self.rows]

    def to_csv(self):
        """CSV text: `#` metadata lines, the header row, then the rows; NA marks errors."""
        buffer = io.StringIO()
        for key, value in self.metadata.items():
            buffer.write(f'# {key}: {value}\n')
        writer = csv.writer(buffer, lineterminator='\n')
        writer.writerow(self.headers)
        for row in self.rows:
            writer.writerow([NA if cell is None else repr(float(cell)) for cell in row])
        return buffer.getvalue()

    def to_dict(self):
        return {'metadata': dict(self.metadata),
                'headers': list(self.headers),
                'rows': [list(row) for row in self.rows]}


@dataclass(frozen=True)
class TrendResult:
    expectation: TrendExpectation
    passed: bool
    first_violation: Optional[int] = None


@dataclass(frozen=True)
class TrendReport:
    """Outcome of a set of trend checks; passes when every check passes."""

    results: tuple

    @property
    def passed(self):
        return all(r.passed for r in self.results)

    def failures(self):
        return [r for r in self.results if not r.passed]

    def format(self):
        lines = []
        for r in self.results:
            if r.passed:
                lines.append(f'PASS {r.expectation.describe()}')
            else:
                lines.append(f'FAIL {r.expectation.describe()} (first violation at row {r.first_violation})')
        lines.append(f'trend check: {"PASS" if self.passed else "FAIL"} '
                     f'({len(self.results) - len(self.failures())}/{len(self.results)})')
        return '\n'.join(lines) + '\n'


def run_sweep(spec):
    """Evaluate the target at every grid point for every family member.

    Parameters
    ----------
    spec : SweepSpec
        the sweep.

    Returns
    -------
    SweepTable
        rows in grid order; a `DomainError` (or a non-finite value) leaves the
        cell as None and the sweep carries on.
    """
    target = TARGETS[spec.target]
    logger.info('sweep %s: %s over %s in [%g, %g], %d steps',
                spec.preset, spec.target, spec.parameter, spec.start, spec.stop, spec.steps)

    rows = []
    n_marked = 0
    for x in spec.grid():
        row = [x]
        for member in spec.family:
            try:
                y = float(target(x, member.value, spec.configs))
            except DomainError as err:
                logger.debug('%s = %g, %s: %s', spec.parameter, x, member.label, err)
                y = None
            if y is not None and not math.isfinite(y):
                logger.debug('%s = %g, %s: non-finite result %r', spec.parameter, x, member.label, y)
                y = None
            n_marked += y is None
            row.append(y)
        rows.append(tuple(row))

    logger.info('sweep %s finished, %d marked cells', spec.preset, n_marked)
    metadata = {'preset': spec.preset, 'target': spec.target, 'config_digest': spec.config_digest()}
    return SweepTable(headers=spec.headers, rows=tuple(rows), metadata=metadata)


def _in_window(x, expectation):
    if expectation.x_min is not None and x < expectation.x_min - WINDOW_EPS:
        return False
    if expectation.x_max is not None and x > expectation.x_max + WINDOW_EPS:
        return False
    return True


def _ordered(diff, expectation):
    if expectation.strict:
        return diff > expectation.tol
    return diff >= -expectation.tol


def _check_one(table, expectation):
    xs = table.column(table.headers[0])
    ys = table.column(expectation.column)
    ref = table.column(expectation.versus)
    rows = [i for i, x in enumerate(xs) if _in_window(x, expectation)]

    along_grid = expectation.versus == table.headers[0]
    if along_grid != (expectation.direction in ('increasing', 'decreasing')):
        raise SweepError(f'direction {expectation.direction!r} does not apply to '
                         f'{expectation.column} versus {expectation.versus}')
    sign = 1.0 if expectation.direction in ('increasing', 'above') else -1.0

    if along_grid:
        for prev, i in zip(rows, rows[1:]):
            if ys[prev] is None:
                return prev
            if ys[i] is None or not _ordered(sign * (ys[i] - ys[prev]), expectation):
                return i
        if len(rows) == 1 and ys[rows[0]] is None:
            return rows[0]
        return None

    for i in rows:
        if ys[i] is None or ref[i] is None or not _ordered(sign * (ys[i] - ref[i]), expectation):
            return i
    return None


def check_trends(table, expectations):
    """Check a sweep table against trend expectations.

    Parameters
    ----------
    table : SweepTable
        sweep result.
    expectations : iterable of TrendExpectation
        the expected trends; an empty list passes.

    Returns
    -------
    TrendReport
        per-expectation pass/fail with the first violating row index.

    Raises
    ------
    SweepError
        an expectation names a column the table does not have.
    """
    results = []
    for expectation in expectations:
        violation = _check_one(table, expectation)
        results.append(TrendResult(expectation, violation is None, violation))
    return TrendReport(tuple(results))


# figure presets
def _wavelength_family():
    return tuple(FamilyMember(f'{um:g}um', um) for um in (0.85, 1.3, 1.55))


def _decreasing(columns, x, fact, **window):
    return [TrendExpectation(c, x, 'decreasing', fact, **window) for c in columns]


def _increasing(columns, x, fact, **window):
    return [TrendExpectation(c, x, 'increasing', fact, **window) for c in columns]


def _ordering(columns, direction, fact):
    # each column against the one before it
    return [TrendExpectation(c, prev, direction, fact) for prev, c in zip(columns, columns[1:])]


def _preset(figure_id, parameter, start, stop, family, target, template, configs, build_expectations):
    columns = tuple(template.format(label=m.label) for m in family)
    return SweepSpec(preset=figure_id, parameter=parameter, start=start, stop=stop,
                     steps=DEFAULT_STEPS, family=family, target=target,
                     column_template=template, configs=configs,
                     expectations=tuple(build_expectations(parameter, columns)))


def _fig5(configs):
    return _preset('fig5', 'visibility_km', 0.5, 50.0, _wavelength_family(),
                   'fog_attenuation_db_per_km', 'fog_{label}_db_per_km', configs,
                   lambda x, cols: _decreasing(cols, x, 1) + _ordering(cols, 'below', 1))


def _fig6(configs):
    family = tuple(FamilyMember(f'{d:g}mm', d) for d in (100.0, 300.0, 500.0))
    return _preset('fig6', 'beam_diameter_mm', 200.0, 2000.0, family,
                   'ray_loss_db', 'ray_loss_lens_{label}_db', configs,
                   lambda x, cols: _decreasing(cols, x, 2) + _ordering(cols, 'above', 2))


def _fig7(configs):
    return _preset('fig7', 'length_km', 0.0, 1.4, _wavelength_family(),
                   'osnr_db', 'osnr_{label}_db', configs,
                   lambda x, cols: _decreasing(cols, x, 3) + _ordering(cols, 'above', 3))


def _fig8(configs):
    family = (FamilyMember('unamplified', False), FamilyMember('amplified', True))

    def expectations(x, cols):
        unamplified, amplified = cols
        return (_increasing([amplified], x, 4)
                + _increasing([unamplified], x, 4, x_min=0.2, x_max=1.0)
                + [TrendExpectation(amplified, unamplified, 'above', 4, x_min=0.7, x_max=2.0)])

    return _preset('fig8', 'rf_freq_ghz', 0.0, 2.0, family,
                   'rf_transmission_db', 'transmission_{label}_db', configs, expectations)


def _capacity_preset(figure_id, target, configs):
    family = tuple(FamilyMember(f'{km:g}km', km) for km in (0.2, 0.6, 1.0, 1.4))
    return _preset(figure_id, 'rf_freq_ghz', 0.1, 2.0, family, target,
                   'capacity_{label}_gbps', configs,
                   lambda x, cols: _increasing(cols, x, 5) + _ordering(cols, 'below', 5))


def _fig9(configs):
    return _capacity_preset('fig9', 'capacity_unamplified_gbps', configs)


def _fig10(configs):
    return _capacity_preset('fig10', 'capacity_amplified_gbps', configs)


def _fig11(configs):
    base = configs.fiber.with_transceiver(TransceiverKind.LD_APD).replace(
        mode=FiberMode.SINGLE, coding=LineCoding.NRZ)
    family = tuple(FamilyMember(m.label, base.replace(wavelength=Wavelength(m.value)))
                   for m in _wavelength_family())
    return _preset('fig11', 'bit_rate_gbps', 0.01, 0.3, family,
                   'fiber_overall_limit_km', 'L_{label}_km', configs,
                   lambda x, cols: _decreasing(cols, x, 6) + _ordering(cols, 'above', 6))


def _transceiver_preset(figure_id, mode, configs):
    family = tuple(FamilyMember(kind.value, configs.fiber.with_transceiver(kind).replace(mode=mode))
                   for kind in (TransceiverKind.LD_APD, TransceiverKind.LED_PIN))
    return _preset(figure_id, 'bit_rate_gbps', 0.1, 10.0, family,
                   'fiber_attenuation_limit_km', 'L_{label}_km', configs,
                   lambda x, cols: _decreasing(cols, x, 7) + _ordering(cols, 'above', 7))


def _fig12(configs):
    return _transceiver_preset('fig12', FiberMode.SINGLE, configs)


def _fig13(configs):
    return _transceiver_preset('fig13', FiberMode.MULTI, configs)


def _fig14(configs):
    base = configs.fiber.with_transceiver(TransceiverKind.LD_APD).replace(mode=FiberMode.SINGLE)
    family = tuple(FamilyMember(coding.value, base.replace(coding=coding))
                   for coding in (LineCoding.NRZ, LineCoding.RZ))
    return _preset('fig14', 'bit_rate_gbps', 0.1, 10.0, family,
                   'fiber_rise_time_limit_km', 'L_{label}_km', configs,
                   lambda x, cols: _decreasing(cols, x, 8) + _ordering(cols, 'below', 8))


PRESETS = {
    'fig5': _fig5, 'fig6': _fig6, 'fig7': _fig7, 'fig8': _fig8, 'fig9': _fig9,
    'fig10': _fig10, 'fig11': _fig11, 'fig12': _fig12, 'fig13': _fig13, 'fig14': _fig14,
}


def figure_preset(figure_id, configs=None):
    """Sweep definition of a figure preset, with its trend expectations.

    Parameters
    ----------
    figure_id : str
        one of 'fig5' to 'fig14'.
    configs : LinkConfigs, optional
        fixed link settings the preset starts from, by default the defaults

    Returns
    -------
    SweepSpec
        the preset sweep on a 101-point grid.
    """
    if figure_id not in PRESETS:
        raise SweepError(f'unknown figure preset {figure_id!r} (expected one of {", ".join(PRESETS)})')
    return PRESETS[figure_id](LinkConfigs() if configs is None else configs)
