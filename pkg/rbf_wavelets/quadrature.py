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
Gauss-Legendre quadrature on finite intervals and panel-summed integration on (0, inf).

Integrands are called with an array of nodes and must return an array whose first axis
matches it; trailing axes are carried along, so a whole family of integrals (one per
wavenumber, say) can be computed in one pass.
"""
# Imports ###########################################################

import dataclasses
import functools
import logging

import numpy as np
from scipy import special

from .exceptions import DivergenceError, DomainError, IntegrationError
from .utils import default, sample

# Globals ###########################################################

log = logging.getLogger(__name__)

DECAY_HINTS = ('gaussian', 'exponential', 'oscillatory-bessel')

# Panels whose contribution stays below tol / _QUIET_FACTOR this many times in a row end the sum.
_QUIET_FACTOR = 10.0
_QUIET_PANELS = 2
_HEAD_GROWTH = 0.5

# Classes ###########################################################


@dataclasses.dataclass(frozen=True, eq=False)
class QuadratureRule:
    """
    Nodes and positive weights on the interval (a, b).
    """
    nodes: np.ndarray
    weights: np.ndarray
    interval: tuple

    def __post_init__(self):
        a, b = self.interval
        if not a < b:
            raise DomainError("QuadratureRule: invalid interval ({}, {})".format(a, b), module="quadrature")
        if len(self.nodes) != len(self.weights):
            raise DomainError("QuadratureRule: nodes and weights differ in length", module="quadrature")
        if np.any(self.nodes <= a) or np.any(self.nodes >= b) or np.any(np.diff(self.nodes) <= 0):
            raise DomainError("QuadratureRule: nodes must increase strictly inside (a, b)", module="quadrature")
        if np.any(self.weights <= 0):
            raise DomainError("QuadratureRule: weights must be positive", module="quadrature")

    def __len__(self):
        return len(self.nodes)


# Functions #########################################################


@functools.lru_cache(maxsize=64)
def _legendre(count):
    nodes, weights = special.roots_legendre(count)
    nodes.flags.writeable = False
    weights.flags.writeable = False
    return nodes, weights


def _validate_count(count):
    if int(count) != count or count < 1:
        raise DomainError("Gauss-Legendre rule needs a positive node count, got {!r}".format(count),
                          module="quadrature")
    return int(count)


def make_gauss_legendre(count, a, b):
    """
    `count`-node Gauss-Legendre rule on [a, b], exact for polynomials of degree 2*count - 1.
    """
    count = _validate_count(count)
    if not a < b:
        raise DomainError("make_gauss_legendre: invalid interval a={} >= b={}".format(a, b), module="quadrature")
    nodes, weights = _legendre(count)
    half = 0.5 * (b - a)
    return QuadratureRule(
        nodes=half * nodes + 0.5 * (a + b),
        weights=half * weights,
        interval=(float(a), float(b)),
    )


def make_composite_gauss_legendre(count, a, b, panels):
    """
    Composite rule: `panels` equal sub-intervals of [a, b], `count` Gauss-Legendre nodes each.
    """
    count = _validate_count(count)
    if int(panels) != panels or panels < 1:
        raise DomainError("make_composite_gauss_legendre: panels must be a positive integer", module="quadrature")
    if not a < b:
        raise DomainError("make_composite_gauss_legendre: invalid interval a={} >= b={}".format(a, b),
                          module="quadrature")
    edges = np.linspace(a, b, int(panels) + 1)
    nodes, weights = _panel_nodes(edges, count)
    return QuadratureRule(nodes=nodes.ravel(), weights=weights.ravel(), interval=(float(a), float(b)))


def _panel_nodes(edges, count):
    """ Nodes and weights of shape (panels, count) for consecutive panels [edges[i], edges[i+1]] """
    unit_nodes, unit_weights = _legendre(count)
    left = edges[:-1, None]
    half = 0.5 * np.diff(edges)[:, None]
    return left + half * (unit_nodes + 1.0), half * unit_weights


def _evaluate(f, nodes):
    """
    Call f on a flat array of nodes, falling back to one call per node for scalar-only f.
    """
    values = sample(f, nodes)
    bad = ~np.isfinite(values)
    if np.any(bad):
        index = np.flatnonzero(bad.reshape(len(nodes), -1).any(axis=1))[0]
        node = float(nodes[index])
        raise IntegrationError("integrand is not finite at node x={!r}".format(node), node=node)
    return values


def _scalar(value):
    if np.ndim(value) == 0:
        return value.item() if isinstance(value, np.generic) else value
    return value


def integrate(rule, f):
    """
    Sum of w_i f(x_i) over the rule. Complex and batched integrands are supported.
    """
    values = _evaluate(f, rule.nodes)
    return _scalar(np.tensordot(rule.weights, values, axes=(0, 0)))


def _integrate_panels(f, edges, count):
    """
    Per-panel integrals and per-panel peak magnitudes for the panels between `edges`.
    """
    nodes, weights = _panel_nodes(edges, count)
    values = _evaluate(f, nodes.ravel())
    values = values.reshape(nodes.shape + values.shape[1:])
    sums = np.einsum('pq,pq...->p...', weights, values)
    peaks = np.abs(values).reshape(nodes.shape[0], -1).max(axis=1)
    return sums, peaks


def wynn_epsilon(partial_sums):
    """
    Limit estimate of a sequence of partial sums by Wynn's epsilon algorithm.

    Works along the first axis, so batched sequences are accelerated together.
    """
    current = np.asarray(partial_sums)
    best = current[-1]
    previous = np.zeros((len(current) + 1,) + current.shape[1:], dtype=current.dtype)
    column = 0
    while len(current) > 1:
        diff = current[1:] - current[:-1]
        if np.any(diff == 0) or not np.all(np.isfinite(diff)):
            break
        following = previous[1:len(current)] + 1.0 / diff
        previous, current = current, following
        column += 1
        if not np.all(np.isfinite(current)):
            break
        if column % 2 == 0:
            best = current[-1]
    return best


def integrate_semi_infinite(f, decay_hint, tol, scale=1.0, frequency=0.0, order=0.0, nodes=None, max_panels=None):
    """
    Integral of f over (0, inf) by summing Gauss-Legendre panels.

    gaussian / exponential: panels of width min(scale, pi/frequency) until two consecutive
    panels contribute less than tol/10.
    oscillatory-bessel: panels out to a Bessel-zero-aligned head point, then half-period lobes
    whose partial sums are extrapolated with Wynn's epsilon algorithm; `frequency` is the
    oscillation rate in r and `order` the Bessel order producing it.
    """
    if decay_hint not in DECAY_HINTS:
        raise DomainError("integrate_semi_infinite: unknown decay hint {!r}".format(decay_hint), module="quadrature")
    if not tol > 0:
        raise DomainError("integrate_semi_infinite: tol must be positive", module="quadrature")
    if not scale > 0 or frequency < 0:
        raise DomainError("integrate_semi_infinite: scale must be positive and frequency nonnegative",
                          module="quadrature")
    count = nodes or default('quadrature.panel_nodes')
    max_panels = max_panels or default('quadrature.max_panels')

    if decay_hint == 'oscillatory-bessel':
        if frequency > 0:
            return _integrate_oscillatory(f, tol, scale, frequency, order, count, max_panels)
        return _integrate_growing(f, tol, scale, count, max_panels)
    width = scale if frequency == 0 else min(scale, np.pi / frequency)
    return _integrate_decaying(f, tol, width, count, max_panels)


def _integrate_decaying(f, tol, width, count, max_panels):
    """
    A panel only counts as quiet once the integrand has stopped rising, so mass away from
    the origin is reached before the sum is truncated.
    """
    chunk = default('quadrature.lobe_chunk')
    total = 0.0
    start = 0.0
    panels = 0
    quiet = 0
    previous_peak = np.inf
    while panels < max_panels:
        size = min(chunk, max_panels - panels)
        edges = start + width * np.arange(size + 1)
        sums, peaks = _integrate_panels(f, edges, count)
        for right, panel_sum, peak in zip(edges[1:], sums, peaks):
            total = total + panel_sum
            panels += 1
            falling = peak == 0 or peak <= previous_peak
            quiet = quiet + 1 if falling and peak * width < tol / _QUIET_FACTOR else 0
            previous_peak = peak
            if quiet >= _QUIET_PANELS:
                log.debug("integrate_semi_infinite: %s panels of width %s, truncated at r=%s",
                          panels, width, right)
                return _scalar(total)
        start = edges[-1]
    raise DivergenceError("integral did not decay within {} panels".format(max_panels),
                          panels=panels, estimate=_scalar(total))


def _integrate_growing(f, tol, scale, count, max_panels):
    """ Non-oscillating algebraic tails: panel widths double until the last panels are negligible """
    total = 0.0
    left = 0.0
    width = scale
    quiet = 0
    for panels in range(1, max_panels + 1):
        edges = np.array([left, left + width])
        sums, _ = _integrate_panels(f, edges, count)
        total = total + sums[0]
        quiet = quiet + 1 if np.max(np.abs(sums[0])) < tol / _QUIET_FACTOR else 0
        if quiet >= _QUIET_PANELS:
            log.debug("integrate_semi_infinite: %s growing panels, truncated at r=%s", panels, edges[-1])
            return _scalar(total)
        left = edges[-1]
        width *= 2.0
    raise DivergenceError("integral did not settle within {} panels".format(max_panels),
                          panels=max_panels, estimate=_scalar(total))


def _head_edges(scale, frequency, order):
    """
    Panel edges from 0 to a point aligned with the asymptotic zeros of J_order(frequency * r).
    """
    half_period = np.pi / frequency
    head_x = max(8.0 * scale * frequency, 2.0 * abs(order) + 4.0)
    first_lobe = np.ceil(head_x / np.pi - order / 2.0 + 0.25)
    head_end = (first_lobe + order / 2.0 - 0.25) * half_period
    edges = [0.0]
    while edges[-1] < head_end:
        width = min(half_period, max(scale, _HEAD_GROWTH * edges[-1]))
        edges.append(min(edges[-1] + width, head_end))
    return np.array(edges)


def _integrate_oscillatory(f, tol, scale, frequency, order, count, max_panels):
    head = _head_edges(scale, frequency, order)
    if len(head) - 1 > max_panels:
        raise DivergenceError("head region needs {} panels, budget is {}".format(len(head) - 1, max_panels),
                              panels=len(head) - 1)
    sums, _ = _integrate_panels(f, head, count)
    partial = [sums.sum(axis=0)]
    panels = len(head) - 1
    chunk = default('quadrature.lobe_chunk')
    half_period = np.pi / frequency
    start = head[-1]
    previous = None
    while panels < max_panels:
        size = min(chunk, max_panels - panels)
        edges = start + half_period * np.arange(size + 1)
        lobes, _ = _integrate_panels(f, edges, count)
        for lobe in lobes:
            partial.append(partial[-1] + lobe)
        panels += size
        start = edges[-1]
        estimate = wynn_epsilon(np.array(partial[-4 * chunk:]))
        if previous is not None and np.max(np.abs(estimate - previous)) < tol:
            log.debug("integrate_semi_infinite: %s panels, oscillatory tail extrapolated from r=%s", panels, start)
            return _scalar(estimate)
        previous = estimate
    raise DivergenceError("oscillatory integral did not settle within {} panels".format(max_panels),
                          panels=panels, estimate=_scalar(previous))
