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
Discrete Bessel transform: expansion of a function on a ball of radius R in the
Helmholtz kernels phi_j(r) = (lam_j / 2 pi R r)^nu J_nu(lam_j r / R).

Three ways to get the coefficients:

* orthogonal: single center, projection under the radial weight r^(n-1); the norms
  are computed with the same quadrature so a basis function analyzes to exactly 1.
* paper-faithful: mean value for alpha_0 plus the closed-form Bessel-series coefficients,
  synthesized with the unscaled (lam_j / 2 pi r)^nu prefactor.
* least-squares: several centers, ridge-regularized fit to samples on a quadrature-weighted
  design or scattered uniformly in the ball.
"""
# Imports ###########################################################

import dataclasses
import logging

import numpy as np

from . import kernels, quadrature, specfun
from .exceptions import DomainError, FitError
from .utils import as_points, default, sample

# Globals ###########################################################

log = logging.getLogger(__name__)

MODES = ('orthogonal', 'paper-faithful', 'least-squares')
NORMS = ('Linf', 'L2')
DESIGNS = ('quadrature', 'random')

# Classes ###########################################################


def _check(condition, message):
    if not condition:
        raise DomainError(message, module="series")


def zero_order(n):
    """
    Order whose zeros are used for dimension n; n = 1 uses J_1/2 so the sine basis vanishes at R.
    """
    return 0.5 if n == 1 else specfun.order_for_dimension(n)


@dataclasses.dataclass(frozen=True, eq=False)
class BesselSeries:
    """
    alpha0 + sum_k sum_j coeffs[k, j] phi_j(|x - centers[k]|).
    """
    n: float
    R: float
    centers: np.ndarray
    zeros: np.ndarray
    alpha0: float
    coeffs: np.ndarray
    mode: str
    condition_estimate: float = None

    def __post_init__(self):
        object.__setattr__(self, 'centers', as_points(self.centers))
        object.__setattr__(self, 'zeros', np.asarray(self.zeros, dtype=float))
        object.__setattr__(self, 'coeffs', np.atleast_2d(np.asarray(self.coeffs, dtype=float)))
        _check(self.mode in MODES, "BesselSeries: unknown mode {!r}".format(self.mode))
        _check(self.n >= 1 and self.R > 0, "BesselSeries: needs n >= 1 and R > 0")
        _check(len(self.zeros) >= 1 and np.all(np.diff(self.zeros) > 0),
               "BesselSeries: zeros must be a non-empty increasing list")
        expected = specfun.jn_zeros(zero_order(self.n), len(self.zeros))
        _check(np.allclose(self.zeros, expected, rtol=1e-12, atol=0),
               "BesselSeries: zeros are not the first {} zeros of J_{}".format(len(expected), zero_order(self.n)))
        _check(self.coeffs.shape == (len(self.centers), len(self.zeros)),
               "BesselSeries: coeffs shape {} does not match centers x zeros".format(self.coeffs.shape))
        if self.mode == 'orthogonal':
            _check(len(self.centers) == 1 and self.alpha0 == 0,
                   "BesselSeries: orthogonal mode has one center and alpha0 = 0")

    @property
    def terms(self):
        return len(self.zeros)


@dataclasses.dataclass(frozen=True, eq=False)
class RadialSamples:
    """ Values of a radial function on increasing radii """
    radii: np.ndarray
    values: np.ndarray
    R: float = None

    def __post_init__(self):
        object.__setattr__(self, 'radii', np.asarray(self.radii, dtype=float).reshape(-1))
        object.__setattr__(self, 'values', np.asarray(self.values).reshape(-1))
        _check(len(self.radii) == len(self.values), "RadialSamples: radii and values differ in length")
        _check(np.all(self.radii >= 0) and np.all(np.diff(self.radii) > 0),
               "RadialSamples: radii must be nonnegative and strictly increasing")
        _check(self.R is None or np.all(self.radii <= self.R), "RadialSamples: radii must lie within [0, R]")
        _check(np.all(np.isfinite(self.values)), "RadialSamples: values must be finite")

    def __call__(self, r):
        """ Piecewise-linear reading of the samples, zero beyond the last radius """
        return np.interp(r, self.radii, np.real(self.values), right=0.0)


# Functions #########################################################


def basis_matrix(n, zeros, R, radii, mode='orthogonal'):
    """
    Basis values, shape (len(radii), len(zeros)).
    """
    radii = np.asarray(radii, dtype=float).reshape(-1)
    columns = [kernels.helmholtz_kernel(kernels.HelmholtzKernelSpec(n, lam, R), radii) for lam in zeros]
    matrix = np.stack(columns, axis=1)
    if mode == 'paper-faithful':
        matrix = matrix * _closed_form_scale(n, R)
    return matrix


def _closed_form_scale(n, R):
    """ Ratio of the unscaled-prefactor basis to helmholtz_kernel with radius R """
    return 1.0 / R if n == 1 else R ** specfun.order_for_dimension(n)


def radial_rule(n, R, terms, nodes=None):
    """ Composite Gauss-Legendre rule on [0, R] with at least one panel per basis oscillation """
    count = nodes or default('series.panel_nodes')
    return quadrature.make_composite_gauss_legendre(count, 0.0, R, max(8, int(terms)))


def analyze(f, n, R, terms, mode='orthogonal', nodes=None):
    """
    Expansion coefficients of a radial function f on [0, R].
    """
    _check(int(terms) == terms and terms >= 1, "analyze: terms must be a positive integer, got {!r}".format(terms))
    _check(mode in ('orthogonal', 'paper-faithful'),
           "analyze: mode must be orthogonal or paper-faithful; use fit_multicenter for least squares")
    _check(n >= 1 and R > 0, "analyze: needs n >= 1 and R > 0")
    terms = int(terms)
    zeros = specfun.jn_zeros(zero_order(n), terms)
    rule = radial_rule(n, R, terms, nodes)
    weight = rule.nodes ** (n - 1)
    values = sample(f, rule.nodes)

    if mode == 'orthogonal':
        basis = basis_matrix(n, zeros, R, rule.nodes)
        projections = quadrature.integrate(rule, lambda r: (weight * values)[:, None] * basis)
        norms = quadrature.integrate(rule, lambda r: weight[:, None] * basis ** 2)
        coeffs = np.asarray(projections) / np.asarray(norms)
        alpha0 = 0.0
    else:
        _check(n >= 2, "analyze: paper-faithful coefficients need n >= 2")
        nu = specfun.order_for_dimension(n)
        alpha0 = n * R ** (-n) * quadrature.integrate(rule, lambda r: weight * values)
        bessel = np.stack([specfun.bessel_eval('J', nu, lam * rule.nodes / R) for lam in zeros], axis=1)
        moments = (rule.nodes ** (n / 2.0) * values)[:, None] * bessel
        integrals = np.asarray(quadrature.integrate(rule, lambda r: moments))
        scale = 2.0 / (R ** (n + 1) * specfun.bessel_eval('J', n / 2.0, zeros) ** 2)
        coeffs = scale * (zeros / (2.0 * np.pi)) ** (1.0 - n / 2.0) * integrals

    log.debug("analyze: n=%s R=%s terms=%s mode=%s alpha0=%s", n, R, terms, mode, alpha0)
    return BesselSeries(
        n=n, R=R, centers=np.zeros((1, 1)), zeros=zeros, alpha0=float(alpha0),
        coeffs=np.asarray(coeffs, dtype=float).reshape(1, -1), mode=mode,
    )


def _series_points(series, x):
    array = np.asarray(x, dtype=float)
    dim = series.centers.shape[1]
    if dim == 1:
        return array.reshape(-1, 1), array.ndim == 0
    return as_points(array), array.ndim <= 1


def synthesize(series, x):
    """
    Value of the series at a radius (single-center series) or at point(s).
    """
    points, single = _series_points(series, x)
    offsets = points[:, None, :] - series.centers[None, :, :]
    radii = np.linalg.norm(offsets, axis=-1)
    mode = 'paper-faithful' if series.mode == 'paper-faithful' else 'orthogonal'
    total = np.full(len(points), float(series.alpha0))
    for index, coeffs in enumerate(series.coeffs):
        total += basis_matrix(series.n, series.zeros, series.R, radii[:, index], mode).dot(coeffs)
    return total[0] if single else total


def weighted_l2_norm(f, n, R, nodes=None, panels=64):
    """ sqrt of the integral of r^(n-1) f(r)^2 over [0, R] """
    rule = quadrature.make_composite_gauss_legendre(nodes or default('series.panel_nodes'), 0.0, R, panels)
    values = sample(f, rule.nodes)
    return float(np.sqrt(quadrature.integrate(rule, lambda r: rule.nodes ** (n - 1) * np.abs(values) ** 2)))


def reconstruction_error(series, f, norm='Linf'):
    """
    Linf: maximum error on a radial grid over [0, 0.9 R]; L2: weighted error over [0, R].
    """
    _check(norm in NORMS, "reconstruction_error: norm must be one of {}".format(NORMS))
    if norm == 'Linf':
        grid = np.linspace(0.0, 0.9 * series.R, default('series.error_grid'))
        return float(np.max(np.abs(synthesize(series, grid) - sample(f, grid))))
    return weighted_l2_norm(lambda r: synthesize(series, r) - sample(f, r), series.n, series.R,
                            panels=max(64, 2 * series.terms))


def sample_ball(center, R, count, rng):
    """ `count` points distributed uniformly in the ball of radius R around `center` """
    center = np.asarray(center, dtype=float).reshape(-1)
    dim = len(center)
    directions = rng.standard_normal((count, dim))
    directions /= np.linalg.norm(directions, axis=1, keepdims=True)
    radii = R * rng.random(count) ** (1.0 / dim)
    return center + directions * radii[:, None]


def _directions(dim, count, rng):
    if dim == 1:
        return np.array([[1.0], [-1.0]])
    if dim == 2:
        angles = 2.0 * np.pi * (np.arange(count) + 0.5) / count
        return np.stack([np.cos(angles), np.sin(angles)], axis=1)
    directions = rng.standard_normal((count, dim))
    return directions / np.linalg.norm(directions, axis=1, keepdims=True)


def quadrature_design(center, n, R, terms, count, rng, nodes=None):
    """
    Points on radial Gauss-Legendre nodes times directions around `center`, with row weights
    sqrt(w_i r_i^(n-1) / directions) so that weighted least squares reproduces the radial projection.
    """
    center = np.asarray(center, dtype=float).reshape(-1)
    rule = radial_rule(n, R, terms, nodes)
    needed = -(-int(count) // len(rule.nodes))
    directions = _directions(len(center), max(default('series.directions'), needed), rng)
    points = center + (directions[:, None, :] * rule.nodes[None, :, None]).reshape(-1, len(center))
    weights = np.tile(rule.weights * rule.nodes ** (n - 1), len(directions)) / len(directions)
    return points, np.sqrt(weights)


def _ridge_solve(matrix, rhs, ridge, refinements=2):
    """
    Tikhonov solve with a trace-scaled ridge, then iterated refinement to remove its bias.
    """
    columns = matrix.shape[1]
    delta = ridge * np.trace(matrix.T.dot(matrix)) / columns
    augmented = np.vstack([matrix, np.sqrt(delta) * np.eye(columns)])
    padding = np.zeros(columns)
    solution = np.linalg.lstsq(augmented, np.concatenate([rhs, padding]), rcond=None)[0]
    for _ in range(refinements):
        residual = rhs - matrix.dot(solution)
        solution = solution + np.linalg.lstsq(augmented, np.concatenate([residual, padding]), rcond=None)[0]
    return solution


def fit_multicenter(f, centers, n, R, terms, include_constant=True, seed=None, samples=None, design='quadrature'):
    """
    Least-squares coefficients for several centers from f sampled in the ball of radius R
    around the centers' centroid.

    design 'quadrature' samples radial Gauss-Legendre nodes along fixed directions and weights
    each row by its share of the r^(n-1) measure; for one center and a radial f this is the
    orthogonal projection. design 'random' samples the ball uniformly with equal weights.
    f takes an array of points (count, dim) and returns one value per point.
    """
    centers = as_points(centers)
    _check(int(terms) == terms and terms >= 1, "fit_multicenter: terms must be a positive integer")
    _check(design in DESIGNS, "fit_multicenter: design must be one of {}, got {!r}".format(DESIGNS, design))
    terms = int(terms)
    zeros = specfun.jn_zeros(zero_order(n), terms)
    unknowns = len(centers) * terms + (1 if include_constant else 0)
    count = samples or max(default('series.sample_factor') * unknowns, default('series.min_samples'))
    if count < unknowns:
        raise FitError("fit_multicenter: {} samples for {} unknowns".format(count, unknowns), module="series")

    rng = np.random.default_rng(default('seed') if seed is None else seed)
    if design == 'quadrature':
        points, row_weights = quadrature_design(centers.mean(axis=0), n, R, terms, count, rng)
    else:
        points = sample_ball(centers.mean(axis=0), R, count, rng)
        row_weights = np.ones(count)
    radii = np.linalg.norm(points[:, None, :] - centers[None, :, :], axis=-1)
    blocks = [basis_matrix(n, zeros, R, radii[:, index]) for index in range(len(centers))]
    if include_constant:
        blocks.insert(0, np.ones((len(points), 1)))
    matrix = np.hstack(blocks) * row_weights[:, None]
    rhs = np.asarray(sample(f, points), dtype=float).reshape(-1) * row_weights

    try:
        condition = float(np.linalg.cond(matrix))
        solution = _ridge_solve(matrix, rhs, default('series.ridge'))
    except np.linalg.LinAlgError as error:
        raise FitError("fit_multicenter: least-squares solve failed ({})".format(error), module="series")
    if not np.all(np.isfinite(solution)):
        raise FitError("fit_multicenter: solve produced non-finite coefficients", condition, module="series")
    if condition > default('fit.warn_condition'):
        log.warning("fit_multicenter: ill-conditioned system, condition estimate %.3g", condition)
    log.debug("fit_multicenter: %s samples, %s unknowns, condition %.3g", len(points), unknowns, condition)

    alpha0 = solution[0] if include_constant else 0.0
    coeffs = solution[1:] if include_constant else solution
    return BesselSeries(
        n=n, R=R, centers=centers, zeros=zeros, alpha0=float(alpha0),
        coeffs=coeffs.reshape(len(centers), terms), mode='least-squares', condition_estimate=condition,
    )
