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
Fitting with classic RBFs read as wavelets (shape parameters as scales), convergence
studies, and recognition of convection-diffusion parameters from sampled data.
"""
# Imports ###########################################################

import dataclasses
import logging

import numpy as np
from scipy import linalg

from . import kernels
from .exceptions import DomainError, FitError
from .utils import as_points, default, distances, sample

# Globals ###########################################################

log = logging.getLogger(__name__)

# Condition estimates above this mean the solve has no significant digits left.
SINGULAR_CONDITION = 1.0 / np.finfo(float).eps

DEFAULT_POLY = {'MQ': True, 'PreWaveletTPS': True, 'Gaussian': False}

MIN_DIFFUSIVITY = 1.0e-8

# Classes ###########################################################


@dataclasses.dataclass(frozen=True, eq=False)
class FitResult:
    """
    f(x) = poly_coeffs[0] + poly_coeffs[1:] . x + sum_j sum_k coeffs[j * K + k] phi_j(|x - x_k|).
    """
    kernel: tuple
    centers: np.ndarray
    coeffs: np.ndarray
    poly_coeffs: np.ndarray
    residual_norm: float
    condition_estimate: float

    def __post_init__(self):
        if len(self.coeffs) != len(self.kernel) * len(self.centers):
            raise DomainError("FitResult: coeffs must have one entry per scale and center", module="rbffit")


@dataclasses.dataclass(frozen=True, eq=False)
class RidgeletFit:
    weights: np.ndarray
    D: float
    v: tuple
    k: float
    loss: float
    converged: bool = True
    iterations: int = 0
    loss_history: tuple = ()
    n: float = None

    @property
    def spec(self):
        return kernels.ConvDiffSpec(self.n or len(self.v), self.v, self.D, self.k)

    @property
    def mu(self):
        return kernels.convdiff_mu(self.spec)


@dataclasses.dataclass(frozen=True)
class StudyRow:
    N: int
    error: float
    condition_estimate: float
    failure: str = None


# Functions #########################################################


def _unpack_samples(samples):
    """ Accept (points, values) or a list of (point, value) pairs """
    if isinstance(samples, tuple) and len(samples) == 2:
        points, values = samples
    else:
        points = [point for point, _ in samples]
        values = [value for _, value in samples]
    points = as_points(np.asarray(points, dtype=float).reshape(len(values), -1))
    return points, np.asarray(values, dtype=float).reshape(-1)


def kernel_matrix(kernel_specs, centers, points):
    """ Columns ordered scale-major: all centers for the first scale, then the next """
    r = distances(points, centers)
    return np.hstack([kernels.classic_rbf(spec, r) for spec in kernel_specs])


def poly_matrix(points):
    """ Linear polynomial block [1, x_1, ..., x_d] """
    points = as_points(points)
    return np.hstack([np.ones((len(points), 1)), points])


def _condition(matrix):
    try:
        return float(np.linalg.cond(matrix))
    except np.linalg.LinAlgError:
        return np.inf


def _guard(condition):
    if not np.isfinite(condition) or condition > SINGULAR_CONDITION:
        raise FitError("system is numerically singular (condition estimate {:.3g})".format(condition), condition)
    if condition > default('fit.warn_condition'):
        log.warning("ill-conditioned RBF system, condition estimate %.3g", condition)


def _finite(solution, condition):
    if not np.all(np.isfinite(solution)):
        raise FitError("solve produced non-finite coefficients", condition)
    return solution


def _solve_square(system, rhs):
    condition = _condition(system)
    _guard(condition)
    lu, piv = linalg.lu_factor(system)
    return _finite(linalg.lu_solve((lu, piv), rhs), condition), condition


def _solve_rectangular(matrix, rhs, ridge):
    condition = _condition(matrix)
    _guard(condition)
    normal = matrix.T.dot(matrix)
    delta = ridge * np.trace(normal) / normal.shape[0]
    factor = linalg.cho_factor(normal + delta * np.eye(normal.shape[0]))
    return _finite(linalg.cho_solve(factor, matrix.T.dot(rhs)), condition), condition


def fit(kernel_specs, centers, samples, with_poly=False, ridge=None):
    """
    Coefficients of a multi-scale RBF expansion with an optional linear polynomial block.

    A square system is solved directly (LU with partial pivoting). With one scale, samples
    at as many points as centers and the polynomial block, the polynomial moments of the
    coefficients are constrained to vanish to keep it square. Otherwise the regularized
    normal equations are solved.
    """
    kernel_specs = tuple(kernel_specs)
    if not kernel_specs:
        raise DomainError("fit: at least one scale is needed", module="rbffit")
    centers = as_points(centers)
    points, values = _unpack_samples(samples)
    matrix = kernel_matrix(kernel_specs, centers, points)
    unknowns = matrix.shape[1]
    if with_poly:
        matrix = np.hstack([matrix, poly_matrix(points)])

    try:
        if with_poly and len(kernel_specs) == 1 and len(points) == len(centers):
            moments = poly_matrix(centers).T
            system = np.block([[matrix], [moments, np.zeros((moments.shape[0], moments.shape[0]))]])
            solution, condition = _solve_square(system, np.concatenate([values, np.zeros(moments.shape[0])]))
        elif matrix.shape[0] == matrix.shape[1]:
            solution, condition = _solve_square(matrix, values)
        elif matrix.shape[0] > matrix.shape[1]:
            solution, condition = _solve_rectangular(matrix, values, ridge or default('fit.ridge'))
        else:
            raise FitError("fit: {} samples for {} unknowns".format(matrix.shape[0], matrix.shape[1]))
    except (np.linalg.LinAlgError, linalg.LinAlgError) as error:
        raise FitError("fit: solve failed ({})".format(error), _condition(matrix))

    residual_norm = float(np.linalg.norm(matrix.dot(solution) - values))
    log.debug("fit: %s samples, %s unknowns, residual %.3g, condition %.3g",
              len(points), len(solution), residual_norm, condition)
    return FitResult(
        kernel=kernel_specs,
        centers=centers,
        coeffs=solution[:unknowns],
        poly_coeffs=solution[unknowns:],
        residual_norm=residual_norm,
        condition_estimate=condition,
    )


def evaluate_fit(result, x):
    """ Value of a fitted expansion at one point or an array of points """
    array = np.asarray(x, dtype=float)
    if result.centers.shape[1] == 1:
        points, single = array.reshape(-1, 1), array.ndim == 0
    else:
        points, single = as_points(array), array.ndim == 1
    value = kernel_matrix(result.kernel, result.centers, points).dot(result.coeffs)
    if len(result.poly_coeffs):
        value = value + poly_matrix(points).dot(result.poly_coeffs)
    return float(value[0]) if single else value


def convergence_study(target, kernel_kind, scale_rule, N_list, domain=(-1.0, 1.0), with_poly=None):
    """
    Interpolate `target` on N uniform centers for each N and measure the max error on a grid
    ten times denser. Failures are recorded in their row and the study moves on.
    """
    N_list = [int(N) for N in N_list]
    if any(b <= a for a, b in zip(N_list, N_list[1:])):
        raise DomainError("convergence_study: N_list must be increasing", module="rbffit")
    if with_poly is None:
        with_poly = DEFAULT_POLY[kernel_kind]
    low, high = domain
    rows = []
    for N in N_list:
        c = scale_rule(N) if callable(scale_rule) else float(scale_rule)
        centers = np.linspace(low, high, N).reshape(-1, 1)
        dense = np.linspace(low, high, 10 * N)
        try:
            result = fit([kernels.ClassicRbfSpec(kernel_kind, c)], centers,
                         (centers, sample(target, centers[:, 0])), with_poly=with_poly)
            error = float(np.max(np.abs(evaluate_fit(result, dense) - sample(target, dense))))
            rows.append(StudyRow(N=N, error=error, condition_estimate=result.condition_estimate))
        except FitError as failure:
            log.warning("convergence_study: N=%s failed: %s", N, failure)
            rows.append(StudyRow(N=N, error=np.nan, condition_estimate=failure.condition_estimate,
                                 failure=str(failure)))
    return rows


def _convdiff_matrix(spec, centers, points):
    return np.stack([kernels.convdiff_kernel(spec, points, center, 'general') for center in centers], axis=1)


def _params_to_spec(theta, n):
    return kernels.ConvDiffSpec(n, tuple(theta[1:-1]), theta[0], theta[-1])


def _project(theta):
    theta = np.array(theta, dtype=float)
    theta[0] = max(theta[0], MIN_DIFFUSIVITY)
    theta[-1] = max(theta[-1], 0.0)
    return theta


def _finite_difference_jacobian(residuals_fn, theta, step):
    base = residuals_fn(theta)
    jacobian = np.empty((base.size, theta.size))
    for index in range(theta.size):
        h = step * max(abs(theta[index]), 1.0)
        shifted = theta.copy()
        shifted[index] += h
        jacobian[:, index] = (residuals_fn(shifted) - base) / h
    return jacobian


def ridgelet_fit(samples, centers, init, fit_params=False, n=None):
    """
    Weights of convection-diffusion general-solution kernels at `centers`; with `fit_params`
    the parameters (D, v, k) are refined by Gauss-Newton on the variable-projection residual.

    `init` is (D, v, k). A run that stops without meeting the tolerance returns the best
    parameters seen with converged=False.
    """
    points, values = _unpack_samples(samples)
    centers = as_points(centers)
    D, v, k = init
    kernels.ConvDiffSpec(n or len(np.atleast_1d(v)), v, D, k)
    theta = _project(np.concatenate([[D], np.atleast_1d(np.asarray(v, dtype=float)), [k]]))
    dimension = n or float(len(theta) - 2)

    def solve_weights(params):
        matrix = _convdiff_matrix(_params_to_spec(params, dimension), centers, points)
        weights = np.linalg.lstsq(matrix, values, rcond=None)[0]
        return weights, matrix.dot(weights) - values

    def residuals_fn(params):
        return solve_weights(_project(params))[1]

    weights, residuals = solve_weights(theta)
    loss = float(residuals.dot(residuals))
    history = [loss]
    converged = True
    iteration = 0
    if fit_params and loss > 0:
        converged = False
        for iteration in range(1, default('ridgelet.max_iterations') + 1):
            jacobian = _finite_difference_jacobian(residuals_fn, theta, default('ridgelet.fd_step'))
            direction = np.linalg.lstsq(jacobian, -residuals, rcond=None)[0]
            step_size = 1.0
            improved = False
            for _ in range(default('ridgelet.backtrack_trials')):
                candidate = _project(theta + step_size * direction)
                candidate_weights, candidate_residuals = solve_weights(candidate)
                candidate_loss = float(candidate_residuals.dot(candidate_residuals))
                if candidate_loss < loss:
                    improved = True
                    break
                step_size *= 0.5
            if not improved:
                converged = loss <= default('ridgelet.relative_tolerance') * float(values.dot(values))
                break
            change = (loss - candidate_loss) / max(loss, np.finfo(float).tiny)
            theta, weights, residuals, loss = candidate, candidate_weights, candidate_residuals, candidate_loss
            history.append(loss)
            if change < default('ridgelet.relative_tolerance') or loss == 0:
                converged = True
                break
        if not converged:
            log.warning("ridgelet_fit: stopped after %s iterations without converging, loss %.3g", iteration, loss)
    log.debug("ridgelet_fit: theta=%s loss=%.3g iterations=%s", theta, loss, iteration)
    return RidgeletFit(
        weights=weights, D=float(theta[0]), v=tuple(theta[1:-1]), k=float(theta[-1]), loss=loss,
        converged=converged, iterations=iteration, loss_history=tuple(history), n=dimension,
    )
