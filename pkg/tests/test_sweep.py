import logging
import math
from pathlib import Path

import numpy as np
import pytest

from pyoptlink.config import LinkConfigs, configs_from_document
from pyoptlink.errors import SweepError
from pyoptlink.fso.atmosphere import fog_attenuation
from pyoptlink.sweep import (PRESETS, FamilyMember, SweepSpec, SweepTable, TrendExpectation,
                             check_trends, figure_preset, run_sweep)
from pyoptlink.units import Wavelength, attenuation_db_per_km

ALL_FIGURES = ['fig5', 'fig6', 'fig7', 'fig8', 'fig9', 'fig10', 'fig11', 'fig12', 'fig13', 'fig14']
DATA = Path(__file__).parent / 'data'


def osnr_spec(start=0.0, stop=2.8, steps=3):
    return SweepSpec(preset='osnr-check', parameter='length_km', start=start, stop=stop,
                     steps=steps, family=(FamilyMember('osnr', None),), target='osnr_distance_db',
                     column_template='{label}_db')


def table_of(*columns, headers=None):
    headers = headers or ('x',) + tuple(f'y{i}' for i in range(len(columns)))
    xs = [float(i) for i in range(len(columns[0]))]
    rows = tuple(tuple([x] + [c[i] for c in columns]) for i, x in enumerate(xs))
    return SweepTable(headers=headers, rows=rows, metadata={})


# run_sweep
def test_two_steps_give_two_rows():
    table = run_sweep(osnr_spec(0.0, 1.0, 2))
    assert len(table.rows) == 2
    assert table.headers == ('length_km', 'osnr_db')
    assert table.rows[0] == (0.0, 17.35)


def test_fit_domain_edge_marks_cells(caplog):
    with caplog.at_level(logging.DEBUG, logger='pyoptlink.sweep'):
        table = run_sweep(osnr_spec())
    values = table.column('osnr_db')
    assert values[0] == 17.35
    assert values[1] == pytest.approx(17.35 - 12.27 * 1.4 + 7.05 * 1.4 ** 2 - 5.87 * 1.4 ** 3)
    assert values[2] is None
    assert 'fit domain' in caplog.text
    assert table.to_csv().splitlines()[-1] == '2.8,NA'


@pytest.mark.parametrize('changes', [{'start': 1.0, 'stop': 1.0}, {'steps': 1},
                                     {'steps': 2.5}, {'target': 'no_such_target'},
                                     {'family': ()}])
def test_invalid_specs(changes):
    fields = dict(preset='p', parameter='x', start=0.0, stop=1.0, steps=5,
                  family=(FamilyMember('a', None),), target='osnr_distance_db')
    fields.update(changes)
    with pytest.raises(SweepError):
        SweepSpec(**fields)


def test_duplicate_labels_rejected():
    with pytest.raises(SweepError, match='distinct'):
        SweepSpec(preset='p', parameter='x', start=0.0, stop=1.0, steps=3,
                  family=(FamilyMember('a', 1), FamilyMember('a', 2)), target='rf_transmission_db')


def test_csv_layout():
    table = run_sweep(osnr_spec(0.0, 1.0, 2))
    lines = table.to_csv().split('\n')
    assert lines[0] == '# preset: osnr-check'
    assert lines[1] == '# target: osnr_distance_db'
    assert lines[2].startswith('# config_digest: ')
    assert lines[3] == 'length_km,osnr_db'
    assert lines[4] == '0.0,17.35'
    assert lines[5] == f'1.0,{float(np.polynomial.polynomial.polyval(1.0, (17.35, -12.27, 7.05, -5.87)))!r}'
    assert lines[6] == ''
    assert all(not line.endswith(',') for line in lines)


def test_to_dict_keeps_markers():
    document = run_sweep(osnr_spec()).to_dict()
    assert document['headers'] == ['length_km', 'osnr_db']
    assert document['rows'][2] == [2.8, None]
    assert document['metadata']['preset'] == 'osnr-check'


def test_sweep_is_deterministic():
    first = run_sweep(figure_preset('fig5')).to_csv()
    second = run_sweep(figure_preset('fig5')).to_csv()
    assert first == second


def test_digest_follows_config():
    default = run_sweep(figure_preset('fig12')).metadata['config_digest']
    changed = configs_from_document({'fiber': {'fiber_loss_db_per_km': 0.5}})
    other = run_sweep(figure_preset('fig12', changed)).metadata['config_digest']
    assert default != other
    assert default == figure_preset('fig12').config_digest()


# check_trends
def test_constant_column_fails_strict_check_at_row_1():
    table = table_of([1.0, 1.0, 1.0])
    report = check_trends(table, [TrendExpectation('y0', 'x', 'increasing', 1)])
    assert not report.passed
    assert report.results[0].first_violation == 1

    loose = check_trends(table, [TrendExpectation('y0', 'x', 'increasing', 1, strict=False)])
    assert loose.passed


def test_empty_expectations_pass():
    report = check_trends(table_of([3.0, 1.0]), [])
    assert report.passed
    assert report.results == ()


def test_missing_column():
    with pytest.raises(SweepError, match='no column'):
        check_trends(table_of([1.0, 2.0]), [TrendExpectation('nope', 'x', 'increasing', 1)])


def test_trend_directions():
    table = table_of([1.0, 2.0, 3.0], [0.5, 1.0, 4.0])
    results = check_trends(table, [
        TrendExpectation('y0', 'x', 'increasing', 1),
        TrendExpectation('y0', 'x', 'decreasing', 1),
        TrendExpectation('y0', 'y1', 'above', 1),
        TrendExpectation('y1', 'y0', 'below', 1),
    ]).results
    assert [r.passed for r in results] == [True, False, False, False]
    assert results[1].first_violation == 1
    assert results[2].first_violation == 2


def test_tolerance_counts_near_ties():
    table = table_of([1.0, 1.0 + 1e-12, 2.0])
    assert check_trends(table, [TrendExpectation('y0', 'x', 'increasing', 1)]).passed
    tight = check_trends(table, [TrendExpectation('y0', 'x', 'increasing', 1, tol=1e-9)])
    assert tight.results[0].first_violation == 1


def test_marked_cell_is_a_violation():
    table = table_of([1.0, None, 3.0])
    report = check_trends(table, [TrendExpectation('y0', 'x', 'increasing', 1)])
    assert report.results[0].first_violation == 1


def test_window_limits_the_check():
    table = table_of([0.0, 2.0, 1.0, 3.0])
    window = TrendExpectation('y0', 'x', 'increasing', 4, x_max=1.0)
    assert check_trends(table, [window]).passed
    assert not check_trends(table, [TrendExpectation('y0', 'x', 'increasing', 4)]).passed


def test_direction_must_fit_the_comparison():
    with pytest.raises(SweepError):
        TrendExpectation('y0', 'x', 'sideways', 1)
    with pytest.raises(SweepError, match='does not apply'):
        check_trends(table_of([1.0, 2.0], [0.0, 1.0]), [TrendExpectation('y0', 'y1', 'increasing', 1)])


def test_report_format():
    table = table_of([1.0, 1.0])
    text = check_trends(table, [TrendExpectation('y0', 'x', 'increasing', 3)]).format()
    assert 'FAIL fact 3: y0 increasing in x (first violation at row 1)' in text
    assert text.endswith('trend check: FAIL (0/1)\n')


# presets
@pytest.mark.parametrize('figure_id', ALL_FIGURES)
def test_presets_pass_their_trends(figure_id):
    spec = figure_preset(figure_id)
    assert spec.configs == LinkConfigs()
    assert spec.steps == 101
    assert spec.expectations
    table = run_sweep(spec)
    assert len(table.rows) == 101
    assert all(cell is not None and math.isfinite(cell) for row in table.rows for cell in row)
    report = check_trends(table, spec.expectations)
    assert report.passed, report.format()


def test_every_fact_is_covered():
    facts = {e.fact for figure_id in ALL_FIGURES for e in figure_preset(figure_id).expectations}
    assert facts == set(range(1, 9))
    assert sorted(PRESETS, key=lambda f: int(f[3:])) == ALL_FIGURES


def test_unknown_preset():
    with pytest.raises(SweepError, match='fig15'):
        figure_preset('fig15')


def test_fig5_values():
    table = run_sweep(figure_preset('fig5'))
    assert table.headers == ('visibility_km', 'fog_0.85um_db_per_km', 'fog_1.3um_db_per_km',
                             'fog_1.55um_db_per_km')
    first = table.rows[0]
    assert first[0] == 0.5
    expected = attenuation_db_per_km(fog_attenuation(0.5, Wavelength(0.85), Wavelength(0.55)))
    assert first[1] == pytest.approx(expected, rel=1e-12)
    for column in table.headers[1:]:
        assert np.all(np.diff(table.column(column)) < 0)


def test_fig8_family_is_amplification():
    spec = figure_preset('fig8')
    assert [m.value for m in spec.family] == [False, True]
    table = run_sweep(spec)
    assert table.rows[0][1:] == (10.82, 3.09)


def test_fig11_distance_falls_with_bit_rate():
    table = run_sweep(figure_preset('fig11'))
    for column in table.headers[1:]:
        assert np.all(np.diff(table.column(column)) < 0)


def test_fig14_columns_and_values():
    spec = figure_preset('fig14')
    assert [m.label for m in spec.family] == ['NRZ', 'RZ']
    table = run_sweep(spec)
    assert table.headers == ('bit_rate_gbps', 'L_NRZ_km', 'L_RZ_km')
    x, nrz, rz = table.rows[0]
    assert x == pytest.approx(0.1)
    assert nrz == pytest.approx(math.sqrt(7.0 ** 2 - 2 * 3.5 ** 2) / 0.07, abs=1e-6)
    assert rz == pytest.approx(math.sqrt(3.5 ** 2 - 2 * 1.75 ** 2) / 0.07, abs=1e-6)


def test_presets_start_from_given_configs():
    configs = configs_from_document({'fiber': {'fiber_loss_db_per_km': 0.5}})
    spec = figure_preset('fig12', configs)
    assert all(m.value.fiber_loss_db_per_km == 0.5 for m in spec.family)
    default = run_sweep(figure_preset('fig12')).rows[0][1]
    assert run_sweep(spec).rows[0][1] > default


@pytest.mark.parametrize('figure_id', ['fig5', 'fig14'])
def test_matches_committed_table(figure_id):
    expected = (DATA / f'{figure_id}.csv').read_text(encoding='utf-8')
    assert run_sweep(figure_preset(figure_id)).to_csv() == expected
