"""
Command-line interface.

    pyoptlink fso budget --length 1.0
    pyoptlink fiber limits --config study.json --format json
    pyoptlink sweep --figure fig14 --out fig14.csv
"""

import argparse
import csv
import io
import json
import logging
import math
import sys

from . import __version__
from .config import config_document, load_config
from .errors import LinkModelError
from .fiber.budget import chromatic_dispersion_factor, required_power_dbm
from .fiber.risetime import fiber_link_limits, rise_time_components, system_rise_time
from .fso.link import capacity_vs_rf, link_budget, max_fso_distance, osnr_at_rf
from .sweep import check_trends, figure_preset, run_sweep, PRESETS
from .utilities import mkfile

logger = logging.getLogger(__name__)


def parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--config', metavar='PATH', default=None,
                        help='JSON config document; missing keys keep the defaults')
    common.add_argument('--format', choices=('csv', 'json'), default='csv',
                        help='output format')
    common.add_argument('--out', metavar='PATH', default=None,
                        help='write the output to a file instead of stdout')

    parser = argparse.ArgumentParser(
        prog='pyoptlink',
        description='Wireless and fiber optical link calculator',
        formatter_class=argparse.ArgumentDefaultsHelpFormatter)
    parser.add_argument('-v', '--verbose', action='store_true', help='log debug messages')
    parser.add_argument('--version', action='version', version=f'%(prog)s {__version__}')
    commands = parser.add_subparsers(dest='command', metavar='command')

    fso = commands.add_parser('fso', help='wireless optical link')
    fso_commands = fso.add_subparsers(dest='action', metavar='action')
    budget = fso_commands.add_parser('budget', parents=[common],
                                     help='losses, received power and margin at one length')
    budget.add_argument('--length', type=float, required=True, help='link length in km')
    fso_commands.add_parser('max-distance', parents=[common],
                            help='longest length meeting the receiver sensitivity')
    capacity = fso_commands.add_parser('capacity', parents=[common],
                                       help='data rate carried at a radio frequency',
                                       formatter_class=argparse.ArgumentDefaultsHelpFormatter)
    capacity.add_argument('--freq', type=float, default=1.0, help='radio frequency in GHz')
    capacity.add_argument('--length', type=float, required=True, help='link length in km')
    capacity.add_argument('--amplified', action='store_true', help='apply the RF amplification gain')

    fiber = commands.add_parser('fiber', help='digital fiber link')
    fiber_commands = fiber.add_subparsers(dest='action', metavar='action')
    fiber_commands.add_parser('limits', parents=[common],
                              help='attenuation, PMD and rise-time length limits')
    rise = fiber_commands.add_parser('rise-time', parents=[common],
                                     help='rise-time budget at one length')
    rise.add_argument('--length', type=float, required=True, help='fiber length in km')

    sweep = commands.add_parser('sweep', parents=[common],
                                help='figure sweep as CSV, trend report on stderr')
    sweep.add_argument('--figure', required=True, choices=list(PRESETS), help='figure preset')

    defaults = commands.add_parser('defaults', parents=[common], help='configuration in use')
    defaults.add_argument('--show', action='store_true', required=True,
                          help='print the merged configuration')

    return parser


def fso_budget(configs, args):
    result = link_budget(configs.fso, configs.weather, configs.reference_wavelength, args.length)
    return {'length_km': result.length_km,
            'fog_db': result.losses.fog_db,
            'rain_db': result.losses.rain_db,
            'snow_db': result.losses.snow_db,
            'scintillation_db': result.losses.scintillation_db,
            'total_loss_db': result.losses.total_db,
            'geometric_factor': result.geometric_factor,
            'beam_radius_mm': result.beam_radius_mm,
            'ray_loss_db': result.ray_loss_db,
            'coupling_ratio': result.coupling_ratio,
            'received_power_mw': result.received_power.mw,
            'received_power_dbm': result.received_power_dbm,
            'margin_db': result.margin_db}


def fso_max_distance(configs, args):
    limit = max_fso_distance(configs.fso, configs.weather, configs.reference_wavelength)
    return {'max_distance_km': limit.km, 'closes': limit.closes, 'capped': limit.capped}


def fso_capacity(configs, args):
    osnr_db = osnr_at_rf(args.freq, args.length, args.amplified)
    rate = capacity_vs_rf(args.freq, args.length, args.amplified)
    return {'freq_ghz': args.freq, 'length_km': args.length, 'amplified': args.amplified,
            'osnr_db': osnr_db, 'capacity_gbps': rate / 1e9}


def fiber_limits(configs, args):
    cfg = configs.fiber
    report = fiber_link_limits(cfg)
    return {'bit_rate_gbps': cfg.bit_rate / 1e9,
            'required_power_dbm': required_power_dbm(cfg),
            'attenuation_limited_km': report.attenuation_limited_km,
            'pmd_limited_km': report.pmd_limited_km,
            'rise_time_limited_km': report.rise_time_limited_km,
            'overall_km': report.overall_km,
            'limiting_factor': report.limiting_factor.value,
            'closes': report.closes,
            'cd_factor_at_overall': chromatic_dispersion_factor(
                cfg.wavelength, cfg.bit_rate, report.overall_km,
                abs(cfg.dispersion_ns_per_nm_km) * 1e3)}


def fiber_rise_time(configs, args):
    cfg = configs.fiber
    budget = system_rise_time(rise_time_components(cfg, args.length), cfg.bit_rate, cfg.coding)
    return {'length_km': args.length,
            'coding': cfg.coding.value,
            't_tx_ns': budget.t_tx_ns,
            't_rx_ns': budget.t_rx_ns,
            't_mod_ns': budget.t_mod_ns,
            't_gvd_ns': budget.t_gvd_ns,
            't_sys_ns': budget.t_sys_ns,
            'budget_ns': budget.budget_ns,
            'passes': budget.passes}


def _cell(value):
    if isinstance(value, bool):
        return 'true' if value else 'false'
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _jsonable(value):
    # JSON has no infinity
    if isinstance(value, float) and not math.isfinite(value):
        return repr(value)
    return value


def format_result(result, fmt):
    """Format a flat result dict as `quantity,value` CSV or as JSON."""
    if fmt == 'json':
        return json.dumps({k: _jsonable(v) for k, v in result.items()}, indent=2, sort_keys=True) + '\n'
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator='\n')
    writer.writerow(('quantity', 'value'))
    for key, value in result.items():
        writer.writerow((key, _cell(value)))
    return buffer.getvalue()


def format_document(document, fmt):
    if fmt == 'json':
        return json.dumps(document, indent=2, sort_keys=True) + '\n'
    flat = {f'{section}.{key}': value
            for section, values in document.items() for key, value in values.items()}
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator='\n')
    writer.writerow(('key', 'value'))
    for key, value in flat.items():
        writer.writerow((key, 'null' if value is None else _cell(value)))
    return buffer.getvalue()


def run_figure(configs, args):
    spec = figure_preset(args.figure, configs)
    table = run_sweep(spec)
    report = check_trends(table, spec.expectations)
    sys.stderr.write(report.format())
    if args.format == 'json':
        return json.dumps(table.to_dict(), indent=2) + '\n'
    return table.to_csv()


COMMANDS = {
    ('fso', 'budget'): fso_budget,
    ('fso', 'max-distance'): fso_max_distance,
    ('fso', 'capacity'): fso_capacity,
    ('fiber', 'limits'): fiber_limits,
    ('fiber', 'rise-time'): fiber_rise_time,
}


def dispatch(args):
    configs = load_config(args.config)
    if args.command == 'sweep':
        return run_figure(configs, args)
    if args.command == 'defaults':
        return format_document(config_document(configs), args.format)
    return format_result(COMMANDS[(args.command, args.action)](configs, args), args.format)


def main(argv=None):
    """Run the command line; returns the exit code (0 ok, 1 model error, 2 usage error)."""
    arg_parser = parser()
    try:
        args = arg_parser.parse_args(argv)
    except SystemExit as exit_:
        return 0 if exit_.code is None else exit_.code

    logging.basicConfig(stream=sys.stderr, level=logging.DEBUG if args.verbose else logging.WARNING,
                        format='%(levelname)s %(name)s: %(message)s')

    if args.command is None or (args.command in ('fso', 'fiber') and args.action is None):
        arg_parser.print_usage(sys.stderr)
        sys.stderr.write('pyoptlink: error: a command is required\n')
        return 2

    try:
        output = dispatch(args)
    except LinkModelError as err:
        sys.stderr.write(f'pyoptlink: error: {err}\n')
        return 1

    if args.out is None:
        sys.stdout.write(output)
        return 0
    try:
        mkfile(output, args.out)
    except OSError as err:
        sys.stderr.write(f'pyoptlink: error: cannot write {args.out}: {err.strerror}\n')
        return 1
    logger.info('wrote %s', args.out)
    return 0
