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
Run configurations.

A run config is one YAML document:

    command: transform
    action: b-forward
    input: gaussian.csv
    out: results
    tol: 1.0e-10
    params:
      n: 2
      lambdas: [0.5, 1.0, 2.0]

Validation reports every problem found, including the invariants of the kernel
parameters the action will construct.
"""
# Imports ###########################################################

import dataclasses
import logging

import yaml
from lazy import lazy

from . import checks, kernels, series, specfun
from .exceptions import ConfigError, DomainError
from .utils import as_number

# Globals ###########################################################

log = logging.getLogger(__name__)

COMMANDS = {
    'specfun': ('eval', 'zeros'),
    'dbt': ('analyze', 'synthesize', 'error'),
    'transform': ('b-forward', 'b-inverse', 'k-forward', 'k-inverse', 'ts-forward', 'ts-inverse', 'calibrate'),
    'check': checks.ACCEPTANCE,
    'fit': ('classic', 'ridgelet'),
    'study': ('convergence',),
}

# Actions that read their data from `input`.
NEEDS_INPUT = {
    ('dbt', 'analyze'), ('dbt', 'synthesize'), ('dbt', 'error'),
    ('transform', 'b-forward'), ('transform', 'b-inverse'), ('transform', 'k-forward'),
    ('transform', 'k-inverse'), ('transform', 'ts-forward'), ('transform', 'ts-inverse'),
    ('fit', 'classic'), ('fit', 'ridgelet'),
}

# Parameters each action cannot run without.
REQUIRED = {
    ('specfun', 'eval'): ('kind', 'order', 'x'),
    ('specfun', 'zeros'): ('order', 'count'),
    ('dbt', 'analyze'): ('n', 'R', 'terms'),
    ('dbt', 'synthesize'): ('n', 'R'),
    ('dbt', 'error'): ('n', 'R', 'terms'),
    ('transform', 'b-forward'): ('n',),
    ('transform', 'b-inverse'): ('n',),
    ('transform', 'k-forward'): ('n',),
    ('transform', 'k-inverse'): ('n',),
    ('transform', 'ts-forward'): ('n', 'a'),
    ('transform', 'ts-inverse'): ('n', 'a', 't'),
    ('transform', 'calibrate'): ('n',),
    ('fit', 'classic'): ('kind', 'c'),
    ('fit', 'ridgelet'): ('centers', 'D', 'v'),
    ('study', 'convergence'): ('kind', 'N'),
}

TOP_LEVEL_KEYS = ('command', 'action', 'input', 'out', 'tol', 'nodes', 'seed', 'params')

KIND_CHOICES = {
    'specfun': specfun.KINDS + specfun.HANKEL_KINDS,
    'transform': ('B', 'K'),
    'fit': kernels.CLASSIC_KINDS,
    'study': kernels.CLASSIC_KINDS,
}

# Classes ###########################################################


@dataclasses.dataclass(frozen=True)
class RunConfig:
    """
    One validated command: the group and action to run, their parameters and the I/O
    locations. Numerical overrides left as None fall back to the package defaults.
    """
    command: str
    action: str
    params: dict = dataclasses.field(default_factory=dict)
    input: str = None
    out: str = '.'
    tol: float = None
    nodes: int = None
    seed: int = None

    @property
    def operation(self):
        return "{} {}".format(self.command, self.action)

    @lazy
    def helmholtz(self):
        """ HelmholtzKernelSpec for configs that name a wavenumber, else None """
        if 'n' in self.params and 'lam' in self.params:
            return kernels.HelmholtzKernelSpec(self.params['n'], self.params['lam'], self.params.get('R'))
        return None

    @lazy
    def convdiff(self):
        """ ConvDiffSpec for configs that carry convection-diffusion parameters, else None """
        if 'D' not in self.params:
            return None
        v = self.params.get('v', ())
        n = self.params.get('n', len(v) if isinstance(v, (list, tuple)) else 1)
        return kernels.ConvDiffSpec(n, v, self.params['D'], self.params.get('k', 0.0))

    @lazy
    def diffusion(self):
        if 'a' in self.params and 'n' in self.params:
            return kernels.TimeSpaceDiffusionSpec(self.params['n'], self.params.get('lam', 1.0), self.params['a'])
        return None

    def with_overrides(self, **overrides):
        """ Copy with command-line values applied; None leaves a field alone """
        changes = {key: value for key, value in overrides.items() if value is not None}
        params = changes.pop('params', None)
        if params:
            changes['params'] = dict(self.params, **params)
        config = dataclasses.replace(self, **changes)
        validate(config)
        return config


# Functions #########################################################


def _positive(value, name, errors, integer=False):
    if value is None:
        return
    kind = int if integer else (int, float)
    if isinstance(value, bool) or not isinstance(value, kind) or not value > 0:
        errors.append("{} must be a positive {}, got {!r}".format(name, 'integer' if integer else 'number', value))


def _spec_errors(config):
    """ Messages of every kernel parameter invariant the params violate """
    errors = []
    for name in ('helmholtz', 'convdiff', 'diffusion'):
        try:
            getattr(config, name)
        except (DomainError, TypeError, ValueError) as error:
            errors.extend(str(error).split("; "))
    return errors


def _param_errors(config):
    errors = []
    params = config.params
    for key in REQUIRED.get((config.command, config.action), ()):
        if key not in params:
            errors.append("{}: missing parameter {!r}".format(config.operation, key))
    if 'n' in params:
        n = params['n']
        if isinstance(n, bool) or not isinstance(n, (int, float)) or not n >= 1:
            errors.append("n must be a real number >= 1, got {!r}".format(n))
    if 'order' in params:
        try:
            specfun.validate_order(params['order'])
        except DomainError as error:
            errors.append(str(error))
    if 'mode' in params and params['mode'] not in series.MODES:
        errors.append("mode must be one of {}, got {!r}".format(series.MODES, params['mode']))
    if 'design' in params and params['design'] not in series.DESIGNS:
        errors.append("design must be one of {}, got {!r}".format(series.DESIGNS, params['design']))
    kinds = KIND_CHOICES.get(config.command)
    if 'kind' in params and kinds and params['kind'] not in kinds:
        errors.append("kind must be one of {}, got {!r}".format(kinds, params['kind']))
    for key in ('R', 'terms', 'count'):
        values = params.get(key)
        for value in values if isinstance(values, list) else [values]:
            _positive(value, key, errors, integer=key in ('terms', 'count'))
    return errors


def validate(config):
    """
    Raise ConfigError listing every problem with `config`.
    """
    errors = []
    if config.command not in COMMANDS:
        errors.append("unknown command {!r}, expected one of {}".format(config.command, ", ".join(COMMANDS)))
    elif config.action not in COMMANDS[config.command]:
        errors.append("{}: unknown action {!r}, expected one of {}".format(
            config.command, config.action, ", ".join(COMMANDS[config.command])))
    if (config.command, config.action) in NEEDS_INPUT and not config.input:
        errors.append("{}: an input file is required".format(config.operation))
    if not isinstance(config.params, dict):
        errors.append("params must be a mapping")
    else:
        errors.extend(_param_errors(config))
        errors.extend(_spec_errors(config))
    _positive(config.tol, 'tol', errors)
    _positive(config.nodes, 'nodes', errors, integer=True)
    if config.seed is not None and (isinstance(config.seed, bool) or not isinstance(config.seed, int)):
        errors.append("seed must be an integer, got {!r}".format(config.seed))
    if errors:
        raise ConfigError(errors)
    return config


def parse_config(text):
    """
    Parse and validate a YAML run config; ConfigError carries the line of a syntax error.
    """
    try:
        document = yaml.safe_load(text)
    except yaml.YAMLError as error:
        mark = getattr(error, 'problem_mark', None)
        problem = getattr(error, 'problem', None) or str(error)
        raise ConfigError(["malformed config: {}".format(problem)], line=mark.line + 1 if mark else None)
    if not isinstance(document, dict):
        raise ConfigError(["config must be a mapping of settings"], line=1)

    unknown = sorted(set(document) - set(TOP_LEVEL_KEYS))
    errors = ["unknown setting {!r}".format(key) for key in unknown]
    for key in ('command', 'action'):
        if key not in document:
            errors.append("missing setting {!r}".format(key))
    params = document.get('params') or {}
    if isinstance(params, dict):
        params = {key: as_number(value) for key, value in params.items()}
    if errors:
        raise ConfigError(errors)

    config = RunConfig(
        command=document['command'],
        action=str(document['action']),
        params=params,
        input=document.get('input'),
        out=document.get('out') or '.',
        tol=as_number(document.get('tol')),
        nodes=document.get('nodes'),
        seed=document.get('seed'),
    )
    log.debug("parse_config: %s with params %s", config.operation, sorted(config.params))
    return validate(config)
