# -*- coding: utf-8 -*-
#
# Copyright (c) 2026 The rbf-wavelets authors
#
# This software's license gives you freedom; you can copy, convey,
# propagate, redistribute and/or modify this program under the terms of
# the GNU Affero General Public License (AGPL) as published by the Free
# Software Foundation (FSF), either version 3 of the License, or (at your
# option) any later version of the AGPL published by the FSF.
#
# This program is distributed in the hope that it will be useful, but
# WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the GNU Affero
# General Public License for more details.
#
# You should have received a copy of the GNU Affero General Public License
# along with this program in a file in the toplevel directory called
# "AGPLv3".  If not, see <http://www.gnu.org/licenses/>.
#
"""
Command line front end.

`dispatch` runs one validated RunConfig and writes its outputs: CSV data files with a
one-line header and 17 significant digits, plus a run.json sidecar (or error.json when the
run fails). Data files never carry run metadata, so reruns produce identical bytes.
"""
# Imports ###########################################################

import csv
import dataclasses
import inspect
import json
import logging
import os
import sys
import traceback

import numpy as np
import scipy
import yaml
from django.core.management.base import BaseCommand, CommandError
from scipy import interpolate

from . import checks, kernels, rbffit, series, specfun, transforms
from .config import COMMANDS, RunConfig, parse_config, validate
from .exceptions import ConfigError, RbfWaveletError
from .utils import as_points

# Globals ###########################################################

log = logging.getLogger(__name__)

FLOAT_FORMAT = '%.17g'

PACKAGE_DIR = os.path.dirname(os.path.abspath(__file__))

TARGETS = {
    'sin_pi': lambda x: np.sin(np.pi * np.asarray(x)),
    'runge': lambda x: 1.0 / (1.0 + 25.0 * np.asarray(x) ** 2),
    'gaussian': lambda x: np.exp(-np.asarray(x) ** 2),
}

# Classes ###########################################################


@dataclasses.dataclass
class Outcome:
    """ Files an action wrote and the scalar results recorded in run.json """
    files: list = dataclasses.field(default_factory=list)
    results: dict = dataclasses.field(default_factory=dict)
    error: dict = None


class ActionCommand(BaseCommand):
    """
    Management command running one action of a command group, e.g. `check orthogonality`.

    Subclasses set `group`.
    """
    group = None

    def add_arguments(self, parser):
        parser.add_argument('action', choices=COMMANDS[self.group], help='Action to run.')
        parser.add_argument('--config', help='YAML run config; flags given here override its values.')
        parser.add_argument('--input', help='Input CSV file.')
        parser.add_argument('--out', help='Output directory (default: current directory).')
        parser.add_argument('--tol', type=float, help='Absolute tolerance of the integrals.')
        parser.add_argument('--nodes', type=int, help='Gauss-Legendre nodes per panel.')
        parser.add_argument('--seed', type=int, help='Seed for random sample placement.')
        parser.add_argument(
            '--param',
            action='append',
            default=[],
            metavar='KEY=VALUE',
            help='Action parameter, the value read as YAML (repeatable).',
        )

    def handle(self, *args, **options):
        try:
            config = self.build_config(options)
        except ConfigError as error:
            write_json(os.path.join(options['out'] or '.', 'error.json'), error.as_record(
                "{} {}".format(self.group, options['action'])))
            raise CommandError(str(error))

        status = dispatch(config)
        if status != 0:
            raise CommandError("{} failed, see {}".format(config.operation, os.path.join(config.out, 'error.json')))
        self.stdout.write("{}: outputs written to {}".format(config.operation, config.out))

    def build_config(self, options):
        params = parse_params(options['param'])
        if options['config']:
            with open(options['config'], 'r') as config_file:
                config = parse_config(config_file.read())
            if config.command != self.group or config.action != options['action']:
                raise ConfigError(["config is for {!r}, not {} {}".format(
                    config.operation, self.group, options['action'])])
        else:
            config = RunConfig(command=self.group, action=options['action'])
        return config.with_overrides(
            input=options['input'], out=options['out'], tol=options['tol'], nodes=options['nodes'],
            seed=options['seed'], params=params,
        )


# Functions #########################################################


def parse_params(pairs):
    params = {}
    errors = []
    for pair in pairs:
        key, separator, value = pair.partition('=')
        if not separator or not key:
            errors.append("--param expects KEY=VALUE, got {!r}".format(pair))
            continue
        try:
            params[key] = yaml.safe_load(value)
        except yaml.YAMLError:
            errors.append("--param {}: unreadable value {!r}".format(key, value))
    if errors:
        raise ConfigError(errors)
    return params


def _json_default(value):
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, np.ndarray):
        return value.tolist()
    return str(value)


def write_json(path, document):
    os.makedirs(os.path.dirname(path) or '.', exist_ok=True)
    with open(path, 'w') as json_file:
        json.dump(document, json_file, indent=2, sort_keys=True, default=_json_default)
        json_file.write('\n')


def write_table(path, header, columns):
    """ Numeric columns as CSV: one header line, 17 significant digits, LF line endings """
    table = np.column_stack([np.asarray(column, dtype=float).reshape(-1) for column in columns])
    np.savetxt(path, table, fmt=FLOAT_FORMAT, delimiter=',', header=header, comments='', newline='\n')
    return path


def write_samples(path, radii, values, label='r'):
    if np.iscomplexobj(values):
        return write_table(path, '{},re,im'.format(label), [radii, np.real(values), np.imag(values)])
    return write_table(path, '{},value'.format(label), [radii, values])


def write_spectrum(path, spectrum):
    return write_table(path, 'lambda,re,im', [spectrum.lambdas, np.real(spectrum.values), np.imag(spectrum.values)])


def _format(value):
    if value is None:
        return ''
    if isinstance(value, (float, np.floating)):
        return FLOAT_FORMAT % value
    return str(value)


def write_rows(path, header, rows):
    """ Mixed text and numeric rows, numbers formatted like write_table """
    with open(path, 'w', newline='') as csv_file:
        writer = csv.writer(csv_file, lineterminator='\n')
        writer.writerow(header)
        for row in rows:
            writer.writerow([_format(value) for value in row])
    return path


def read_table(path):
    return np.loadtxt(path, delimiter=',', skiprows=1, ndmin=2)


def read_samples(path):
    table = read_table(path)
    return series.RadialSamples(radii=table[:, 0], values=table[:, 1])


def read_spectrum(path, n, kind):
    table = read_table(path)
    values = table[:, 1] + 1j * table[:, 2] if kind == 'K' else table[:, 1]
    return transforms.Spectrum(lambdas=table[:, 0], values=values, order=n / 2.0 - 1.0, kind=kind)


def read_points(path):
    """ x_1, ..., x_d, value rows as (points, values) """
    table = read_table(path)
    return table[:, :-1], table[:, -1]


def grid_param(value, fallback):
    """ A list of numbers, or {start, stop, num} for an evenly spaced grid """
    if value is None:
        return np.asarray(fallback, dtype=float)
    if isinstance(value, dict):
        return np.linspace(float(value['start']), float(value['stop']), int(value.get('num', 50)))
    return np.atleast_1d(np.asarray(value, dtype=float))


def _output(config, name):
    return os.path.join(config.out, name)


def _lambda_grid(config):
    params = config.params
    if 'lambdas' in params:
        return grid_param(params['lambdas'], ())
    return transforms.spectral_grid(params.get('lambda_max'), params.get('panels'), config.nodes)


def _calibration(config, kind):
    params = config.params
    if 'm' in params and 'C' in params:
        return transforms.TransformCalibration(m=float(params['m']), C=float(params['C']), kind=kind)
    return transforms.calibrate(params['n'], kind)


def specfun_eval(config):
    params = config.params
    x = grid_param(params['x'], ())
    kind = params['kind']
    if kind in specfun.HANKEL_KINDS:
        values = specfun.hankel_eval(kind, params['order'], x)
    elif params.get('derivative'):
        values = specfun.bessel_derivative(kind, params['order'], x)
    else:
        values = specfun.bessel_eval(kind, params['order'], x)
    path = write_samples(_output(config, 'specfun.csv'), x, np.atleast_1d(values), label='x')
    return Outcome(files=[path])


def specfun_zeros(config):
    count = int(config.params['count'])
    zeros = specfun.jn_zeros(config.params['order'], count)
    path = write_table(_output(config, 'zeros.csv'), 'index,zero', [np.arange(1, count + 1), zeros])
    return Outcome(files=[path])


def _series_rows(expansion):
    """ center, zero, coefficient rows; the constant term is the zero-wavenumber row """
    rows = [(0, 0.0, expansion.alpha0)]
    for center, coeffs in enumerate(expansion.coeffs):
        rows.extend((center, zero, coeff) for zero, coeff in zip(expansion.zeros, coeffs))
    return np.array(rows, dtype=float)


def dbt_analyze(config):
    params = config.params
    samples = read_samples(config.input)
    mode = params.get('mode', 'orthogonal')
    if mode == 'least-squares':
        centers = as_points(params.get('centers', [[0.0, 0.0]]))
        expansion = series.fit_multicenter(
            lambda points: samples(np.linalg.norm(points, axis=1)), centers, params['n'], params['R'],
            params['terms'], include_constant=params.get('include_constant', True), seed=config.seed,
            design=params.get('design', 'quadrature'),
        )
    else:
        expansion = series.analyze(samples, params['n'], params['R'], params['terms'], mode=mode, nodes=config.nodes)
    rows = _series_rows(expansion)
    path = write_table(_output(config, 'coefficients.csv'), 'center,zero,coefficient', rows.T)
    results = {'alpha0': expansion.alpha0, 'terms': expansion.terms}
    if expansion.condition_estimate is not None:
        results['condition_estimate'] = expansion.condition_estimate
    return Outcome(files=[path], results=results)


def dbt_synthesize(config):
    params = config.params
    table = read_table(config.input)
    constant = table[:, 1] == 0
    terms = table[~constant]
    centers = as_points(params.get('centers', [[0.0]]))
    mode = params.get('mode', 'orthogonal')
    zeros = terms[terms[:, 0] == 0, 1]
    coeffs = terms[:, 2].reshape(len(centers), len(zeros))
    expansion = series.BesselSeries(
        n=params['n'], R=params['R'], centers=centers, zeros=zeros, alpha0=float(table[constant, 2].sum()),
        coeffs=coeffs, mode=mode,
    )
    if centers.shape[1] == 1:
        radii = grid_param(params.get('r'), np.linspace(0.0, params['R'], 101))
        path = write_samples(_output(config, 'synthesis.csv'), radii, series.synthesize(expansion, radii))
    else:
        points = as_points(params['points'])
        values = series.synthesize(expansion, points)
        header = ",".join(["x{}".format(axis + 1) for axis in range(points.shape[1])] + ['value'])
        path = write_table(_output(config, 'synthesis.csv'), header, list(points.T) + [values])
    return Outcome(files=[path])


def dbt_error(config):
    params = config.params
    samples = read_samples(config.input)
    terms_list = [int(terms) for terms in np.atleast_1d(params['terms'])]
    linf, l2 = [], []
    for terms in terms_list:
        expansion = series.analyze(samples, params['n'], params['R'], terms, nodes=config.nodes)
        linf.append(series.reconstruction_error(expansion, samples, norm='Linf'))
        l2.append(series.reconstruction_error(expansion, samples, norm='L2'))
    path = write_table(_output(config, 'errors.csv'), 'terms,linf,l2', [terms_list, linf, l2])
    return Outcome(files=[path])


def _forward(config, transform):
    params = config.params
    spectrum = transform(
        read_samples(config.input), params['n'], _lambda_grid(config), decay=params.get('decay', 'gaussian'),
        tol=config.tol, scale=params.get('scale', 1.0), nodes=config.nodes,
    )
    return Outcome(files=[write_spectrum(_output(config, 'spectrum.csv'), spectrum)])


def b_forward(config):
    return _forward(config, transforms.b_forward)


def k_forward(config):
    return _forward(config, transforms.k_forward)


def b_inverse(config):
    params = config.params
    spectrum = read_spectrum(config.input, params['n'], 'B')
    cal = _calibration(config, 'B')
    samples = transforms.b_inverse(spectrum, cal, grid_param(params.get('r'), np.linspace(0.0, 3.0, 31)))
    path = write_samples(_output(config, 'samples.csv'), samples.radii, samples.values)
    return Outcome(files=[path], results={'m': cal.m, 'C': cal.C})


def k_inverse(config):
    params = config.params
    spectrum = read_spectrum(config.input, params['n'], 'K')
    cal = _calibration(config, 'K')
    samples = transforms.k_inverse(spectrum, cal, grid_param(params.get('r'), np.linspace(0.0, 3.0, 31)))
    path = write_samples(_output(config, 'samples.csv'), samples.radii, samples.values)
    return Outcome(files=[path], results={'m': cal.m, 'C': cal.C,
                                          'max_imaginary_residue': float(np.max(np.abs(np.imag(samples.values))))})


def read_field(path):
    """
    f(r, t) from r, t, value rows on a rectangular grid, linear in between and zero outside.
    """
    table = read_table(path)
    radii = np.unique(table[:, 0])
    times = np.unique(table[:, 1])
    order = np.lexsort((table[:, 1], table[:, 0]))
    values = table[order, 2].reshape(len(radii), len(times))
    interpolator = interpolate.RegularGridInterpolator((radii, times), values, bounds_error=False, fill_value=0.0)

    def field(r, t):
        r, t = np.broadcast_arrays(r, t)
        return interpolator(np.stack([r.ravel(), t.ravel()], axis=-1)).reshape(r.shape)
    return field


def ts_forward(config):
    params = config.params
    spectrum = transforms.ts_forward(
        read_field(config.input), params['n'], _lambda_grid(config), config.diffusion,
        decay=params.get('decay', 'exponential'), time_decay=params.get('time_decay', 'exponential'), tol=config.tol,
    )
    return Outcome(files=[write_spectrum(_output(config, 'spectrum.csv'), spectrum)])


def ts_inverse(config):
    params = config.params
    spectrum = read_spectrum(config.input, params['n'], 'TS-diffusion')
    cal = _calibration(config, 'B')
    field = transforms.ts_inverse(spectrum, config.diffusion, cal, grid_param(params.get('r'), np.linspace(0, 3, 31)),
                                  grid_param(params['t'], ()))
    radii, times = np.meshgrid(field.radii, field.times)
    path = write_table(_output(config, 'field.csv'), 'r,t,value', [radii, times, field.values])
    return Outcome(files=[path])


def calibrate(config):
    params = config.params
    kind = params.get('kind', 'B')
    cal = transforms.calibrate(params['n'], kind)
    path = write_table(_output(config, 'calibration.csv'), 'n,m,C,discrepancy',
                       [[params['n']], [cal.m], [cal.C], [cal.discrepancy]])
    return Outcome(files=[path], results={'kind': kind, 'm': cal.m, 'C': cal.C})


def _check_options(config, harness):
    accepted = inspect.signature(harness).parameters
    options = {key: tuple(value) if isinstance(value, list) else value for key, value in config.params.items()}
    unknown = sorted(set(options) - set(accepted))
    if unknown:
        raise ConfigError(["check {}: unknown parameter(s) {}".format(config.action, ", ".join(unknown))])
    if config.nodes is not None and 'nodes' in accepted:
        options.setdefault('nodes', config.nodes)
    if config.seed is not None and 'seed' in accepted:
        options.setdefault('seed', config.seed)
    return options


def run_check(config):
    report = checks.run_check(config.action, **_check_options(config, checks.CHECKS[config.action]))
    csv_path = write_rows(_output(config, '{}_report.csv'.format(config.action)), ('metric', 'value', 'limit'),
                          report.rows())
    summary_path = _output(config, '{}_summary.txt'.format(config.action))
    with open(summary_path, 'w') as summary_file:
        summary_file.write(report.summary() + '\n')
    outcome = Outcome(files=[csv_path, summary_path], results={'passed': report.passed, 'notes': report.notes})
    if not report.passed:
        outcome.error = {
            'error': 'CheckFailed', 'module': 'checks', 'operation': config.operation,
            'message': "metrics over their limits: {}".format(", ".join(report.failures)),
            'failures': {metric: report.metrics[metric] for metric in report.failures},
        }
    return outcome


def fit_classic(config):
    params = config.params
    points, values = read_points(config.input)
    scales = [kernels.ClassicRbfSpec(params['kind'], c) for c in np.atleast_1d(params['c'])]
    centers = as_points(params['centers']) if 'centers' in params else points
    with_poly = params.get('with_poly', rbffit.DEFAULT_POLY[params['kind']])
    result = rbffit.fit(scales, centers, (points, values), with_poly=with_poly, ridge=params.get('ridge'))
    coeffs = np.concatenate([result.coeffs, result.poly_coeffs])
    path = write_table(_output(config, 'coefficients.csv'), 'index,coefficient', [np.arange(len(coeffs)), coeffs])
    fitted = rbffit.evaluate_fit(result, points)
    header = ",".join(["x{}".format(axis + 1) for axis in range(points.shape[1])] + ['value', 'fit'])
    fitted_path = write_table(_output(config, 'fitted.csv'), header, list(points.T) + [values, fitted])
    return Outcome(files=[path, fitted_path], results={
        'residual_norm': result.residual_norm, 'condition_estimate': result.condition_estimate,
        'polynomial_terms': len(result.poly_coeffs),
    })


def fit_ridgelet(config):
    params = config.params
    points, values = read_points(config.input)
    centers = as_points(params['centers'])
    init = (params['D'], tuple(np.atleast_1d(params['v'])), params.get('k', 0.0))
    result = rbffit.ridgelet_fit((points, values), centers, init, fit_params=params.get('fit_params', True),
                                 n=params.get('n'))
    weights_path = write_table(_output(config, 'weights.csv'), 'center,weight',
                               [np.arange(len(result.weights)), result.weights])
    rows = [('D', result.D)]
    rows.extend(('v{}'.format(axis + 1), component) for axis, component in enumerate(result.v))
    rows.extend([('k', result.k), ('mu', result.mu), ('loss', result.loss), ('iterations', result.iterations),
                 ('converged', int(result.converged))])
    params_path = write_rows(_output(config, 'parameters.csv'), ('parameter', 'value'), rows)
    history_path = write_table(_output(config, 'history.csv'), 'iteration,loss',
                               [np.arange(len(result.loss_history)), result.loss_history])
    return Outcome(files=[weights_path, params_path, history_path],
                   results={'mu': result.mu, 'converged': result.converged})


def study_convergence(config):
    params = config.params
    target_name = params.get('target', 'sin_pi')
    if target_name not in TARGETS:
        raise ConfigError(["study convergence: unknown target {!r}, expected one of {}".format(
            target_name, ", ".join(TARGETS))])

    def scale_rule(N):
        if 'c_N' in params:
            return float(params['c_N']) / N
        return float(params.get('c', 1.0))

    rows = rbffit.convergence_study(
        TARGETS[target_name], params['kind'], scale_rule, np.atleast_1d(params['N']),
        domain=tuple(params.get('domain', (-1.0, 1.0))), with_poly=params.get('with_poly'),
    )
    path = write_table(_output(config, 'convergence.csv'), 'N,error,condition',
                       [[row.N for row in rows], [row.error for row in rows], [row.condition_estimate for row in rows]])
    failures = {str(row.N): row.failure for row in rows if row.failure}
    return Outcome(files=[path], results={'failures': failures})


ACTIONS = {
    ('specfun', 'eval'): specfun_eval,
    ('specfun', 'zeros'): specfun_zeros,
    ('dbt', 'analyze'): dbt_analyze,
    ('dbt', 'synthesize'): dbt_synthesize,
    ('dbt', 'error'): dbt_error,
    ('transform', 'b-forward'): b_forward,
    ('transform', 'b-inverse'): b_inverse,
    ('transform', 'k-forward'): k_forward,
    ('transform', 'k-inverse'): k_inverse,
    ('transform', 'ts-forward'): ts_forward,
    ('transform', 'ts-inverse'): ts_inverse,
    ('transform', 'calibrate'): calibrate,
    ('fit', 'classic'): fit_classic,
    ('fit', 'ridgelet'): fit_ridgelet,
    ('study', 'convergence'): study_convergence,
}
ACTIONS.update({('check', name): run_check for name in checks.ACCEPTANCE})


def _run_record(config, outcome):
    return {
        'operation': config.operation,
        'config': dataclasses.asdict(config),
        'outputs': [os.path.basename(path) for path in outcome.files],
        'results': outcome.results,
        'versions': {'numpy': np.__version__, 'scipy': scipy.__version__},
    }


def _unexpected_record(config, error):
    """ error.json for exceptions outside the package hierarchy, attributed to the innermost package module """
    module = 'cli'
    for frame in traceback.extract_tb(error.__traceback__):
        if os.path.dirname(os.path.abspath(frame.filename)) == PACKAGE_DIR:
            module = os.path.splitext(os.path.basename(frame.filename))[0]
    return {'error': type(error).__name__, 'module': module, 'operation': config.operation, 'message': str(error)}


def dispatch(config):
    """
    Run the action named by `config` and write its outputs to config.out.

    Returns the exit status: 0 on success, 1 with error.json written otherwise.
    """
    os.makedirs(config.out, exist_ok=True)
    error_path = os.path.join(config.out, 'error.json')
    try:
        validate(config)
        outcome = ACTIONS[(config.command, config.action)](config)
    except RbfWaveletError as error:
        log.error("%s failed: %s", config.operation, error)
        write_json(error_path, error.as_record(config.operation))
        return 1
    except OSError as error:
        log.error("%s failed: %s", config.operation, error)
        write_json(error_path, _unexpected_record(config, error))
        return 1
    except Exception as error:  # pylint: disable=broad-except
        log.exception("%s failed unexpectedly", config.operation)
        write_json(error_path, _unexpected_record(config, error))
        return 1

    write_json(os.path.join(config.out, 'run.json'), _run_record(config, outcome))
    if outcome.error:
        write_json(error_path, outcome.error)
        log.warning("%s: %s", config.operation, outcome.error['message'])
        return 1
    if os.path.exists(error_path):
        os.remove(error_path)
    log.info("%s: wrote %s", config.operation, ", ".join(os.path.basename(path) for path in outcome.files))
    return 0


def main(argv=None):
    """ Console entry point: rbf-wavelets <group> <action> [options] """
    os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'rbf_wavelets.settings')
    from django.core.management import execute_from_command_line
    execute_from_command_line(argv or sys.argv)
