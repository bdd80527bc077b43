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
Verification harnesses.

Each check runs one operator identity or oracle comparison and returns a CheckReport of
measured metrics next to the limits they must stay under. The `check` management command
runs them by name.
"""
# Imports ###########################################################

import dataclasses
import logging

import numpy as np

from . import kernels, quadrature, rbffit, series, specfun, transforms
from .exceptions import DomainError

# Globals ###########################################################

log = logging.getLogger(__name__)

FD_STEP = 1.0e-3

# Off-center evaluation points for the residual checks, all at distance >= 0.5 from the origin.
RESIDUAL_POINTS = np.array([
    [0.8, 0.3],
    [-0.5, 0.6],
    [0.2, -0.9],
    [1.2, 1.1],
    [-0.7, -0.4],
])

# Classes ###########################################################


@dataclasses.dataclass
class CheckReport:
    """
    Metrics of one check; a metric with a limit passes when metric <= limit.

    `notes` carries measured values that are reported but not graded.
    """
    name: str
    metrics: dict = dataclasses.field(default_factory=dict)
    limits: dict = dataclasses.field(default_factory=dict)
    notes: dict = dataclasses.field(default_factory=dict)

    def record(self, metric, value, limit=None):
        self.metrics[metric] = float(value)
        if limit is not None:
            self.limits[metric] = float(limit)

    @property
    def failures(self):
        return [metric for metric, limit in self.limits.items() if not self.metrics[metric] <= limit]

    @property
    def passed(self):
        return not self.failures

    def rows(self):
        """ (metric, value, limit) triples in recording order; limit is None for ungraded metrics """
        return [(metric, value, self.limits.get(metric)) for metric, value in self.metrics.items()]

    def summary(self):
        lines = ["{}: {}".format(self.name, "PASS" if self.passed else "FAIL")]
        for metric, value, limit in self.rows():
            if limit is None:
                lines.append("  {} = {:.6g}".format(metric, value))
            else:
                flag = "ok" if value <= limit else "FAILED"
                lines.append("  {} = {:.6g} (limit {:.3g}) {}".format(metric, value, limit, flag))
        for key, value in self.notes.items():
            lines.append("  {}: {}".format(key, value))
        return "\n".join(lines)


# Functions #########################################################


def _relative(actual, expected, scale=None):
    scale = np.abs(expected) if scale is None else scale
    return float(np.max(np.abs(np.asarray(actual) - np.asarray(expected)) / scale))


def _first_derivative(u, x, axis, h=FD_STEP):
    step = np.zeros_like(x)
    step[axis] = h
    return (-u(x + 2 * step) + 8.0 * u(x + step) - 8.0 * u(x - step) + u(x - 2 * step)) / (12.0 * h)


def _second_derivative(u, x, axis, h=FD_STEP):
    step = np.zeros_like(x)
    step[axis] = h
    stencil = -u(x + 2 * step) + 16.0 * u(x + step) - 30.0 * u(x) + 16.0 * u(x - step) - u(x - 2 * step)
    return stencil / (12.0 * h ** 2)


def _laplacian(u, x, h=FD_STEP):
    """ Cartesian Laplacian from fourth-order central differences """
    return sum(_second_derivative(u, x, axis, h) for axis in range(len(x)))


def _gradient(u, x, h=FD_STEP):
    return np.array([_first_derivative(u, x, axis, h) for axis in range(len(x))])


def orthogonality_report(orders=(0.0, 0.5, 1.0), terms=10, nodes=512):
    """
    Gram matrix of J_nu(lam_i z) under the weight z on [0, 1], lam_i the zeros of J_nu.

    Off-diagonal entries vanish; the diagonal is J_{nu+1}(lam_i)^2 / 2.
    """
    report = CheckReport('orthogonality')
    rule = quadrature.make_gauss_legendre(nodes, 0.0, 1.0)
    off_diagonal = 0.0
    diagonal = 0.0
    for nu in np.atleast_1d(orders):
        zeros = specfun.jn_zeros(nu, terms)
        basis = specfun.bessel_eval('J', nu, np.outer(rule.nodes, zeros))
        gram = basis.T.dot((rule.weights * rule.nodes)[:, None] * basis)
        expected = specfun.bessel_eval('J', nu + 1.0, zeros) ** 2 / 2.0
        off_diagonal = max(off_diagonal, float(np.max(np.abs(gram - np.diag(np.diag(gram))))))
        diagonal = max(diagonal, _relative(np.diag(gram), expected))
        log.debug("orthogonality: nu=%s off-diagonal %.3g", nu, off_diagonal)
    report.record('max_off_diagonal', off_diagonal, 1e-10)
    report.record('max_diagonal_relative_error', diagonal, 1e-10)
    return report


def specfun_report(points=200):
    """
    Half-integer closed forms, three-term recurrences, Wronskians and zeros of J.

    J_1/2 oscillates, so its error is measured relative to the envelope sqrt(2 / pi x).
    """
    report = CheckReport('specfun')
    x = np.linspace(0.1, 20.0, points)
    envelope = np.sqrt(2.0 / (np.pi * x))
    report.record('j_half_closed_form', _relative(specfun.bessel_eval('J', 0.5, x), envelope * np.sin(x), envelope),
                  1e-12)
    k_half = np.sqrt(np.pi / (2.0 * x)) * np.exp(-x)
    report.record('k_half_closed_form', _relative(specfun.bessel_eval('K', 0.5, x), k_half), 1e-12)

    recurrence = 0.0
    for nu in (0.0, 0.5, 1.0, 2.5):
        def value(kind, order):
            return specfun.evaluate_unchecked(kind, order, x)
        relations = {
            'J': (value('J', nu - 1) + value('J', nu + 1), 2 * nu / x * value('J', nu)),
            'Y': (value('Y', nu - 1) + value('Y', nu + 1), 2 * nu / x * value('Y', nu)),
            'I': (value('I', nu - 1) - value('I', nu + 1), 2 * nu / x * value('I', nu)),
            'K': (value('K', nu + 1) - value('K', nu - 1), 2 * nu / x * value('K', nu)),
        }
        for kind, (lhs, rhs) in relations.items():
            scale = np.maximum.reduce([np.abs(value(kind, nu - 1)), np.abs(value(kind, nu + 1)), np.abs(rhs)])
            recurrence = max(recurrence, _relative(lhs, rhs, scale))
    report.record('recurrence', recurrence, 1e-9)

    wronskian = 0.0
    for nu in (0.0, 0.5, 1.0):
        jy = (specfun.bessel_eval('J', nu, x) * specfun.bessel_derivative('Y', nu, x)
              - specfun.bessel_derivative('J', nu, x) * specfun.bessel_eval('Y', nu, x))
        ik = (specfun.bessel_eval('I', nu, x) * specfun.bessel_derivative('K', nu, x)
              - specfun.bessel_derivative('I', nu, x) * specfun.bessel_eval('K', nu, x))
        wronskian = max(wronskian, _relative(jy, 2.0 / (np.pi * x)), _relative(ik, -1.0 / x))
    report.record('wronskian', wronskian, 1e-9)

    zeros = {nu: specfun.jn_zeros(nu, 20) for nu in (0.0, 1.0, 0.5)}
    residue = max(float(np.max(np.abs(specfun.bessel_eval('J', nu, z)))) for nu, z in zeros.items())
    report.record('max_abs_j_at_zeros', residue, 1e-12)
    interlaced = np.all(zeros[0.0] < zeros[1.0]) and np.all(zeros[1.0][:-1] < zeros[0.0][1:])
    report.record('interlacing_violations', 0 if interlaced else 1, 0)
    report.notes['j_half_zero_error'] = float(np.max(np.abs(zeros[0.5] - np.pi * np.arange(1, 21))))
    return report


def dbt_report(terms_list=(5, 10, 20, 50), n=2, R=1.0):
    """ Orthogonal-mode reconstruction of 1 - r^2 on the unit disk """
    report = CheckReport('dbt')

    def target(r):
        return 1.0 - (np.asarray(r) / R) ** 2

    l2_errors = []
    for terms in terms_list:
        expansion = series.analyze(target, n, R, terms)
        l2_errors.append(series.reconstruction_error(expansion, target, norm='L2'))
        linf = series.reconstruction_error(expansion, target, norm='Linf')
    report.record('linf_error_{}_terms'.format(terms_list[-1]), linf, 1e-3)
    report.record('l2_increase', max([0.0] + list(np.diff(l2_errors))), 0.0)
    report.notes['l2_errors'] = ", ".join("{:.3e}".format(error) for error in l2_errors)
    return report


def _gaussian(r):
    return np.exp(-np.asarray(r) ** 2 / 2.0)


def roundtrip_report(dimensions=(2, 3), lambda_max=4.0):
    """
    Gaussian through the B-transform: its n = 2 spectrum against exp(-lam^2 / 2) and the
    inverse of the forward transform against the Gaussian itself.
    """
    report = CheckReport('roundtrip')
    lams = np.linspace(0.05, lambda_max, 80)
    spectrum = transforms.b_forward(_gaussian, 2, lams, decay='gaussian')
    report.record('forward_error_n2', np.max(np.abs(spectrum.values - np.exp(-lams ** 2 / 2.0))), 1e-6)

    radii = np.linspace(0.0, 3.0, 31)
    grid = transforms.spectral_grid()
    for n in dimensions:
        cal = transforms.calibrate(n, 'B')
        samples = transforms.b_inverse(transforms.b_forward(_gaussian, n, grid, decay='gaussian'), cal, radii)
        report.record('roundtrip_error_n{}'.format(n), np.max(np.abs(samples.values - _gaussian(radii))), 1e-5)
    return report


def calibration_report():
    report = CheckReport('calibration')
    expected = {2: (1.0, 1.0), 3: (0.0, 1.0 / (2.0 * np.pi))}
    for n, (m, C) in expected.items():
        cal = transforms.calibrate(n, 'B')
        report.record('m_error_n{}'.format(n), abs(cal.m - m), 0.0)
        report.record('C_relative_error_n{}'.format(n), abs(cal.C - C) / C, 1e-14)
        report.record('discrepancy_n{}'.format(n), cal.discrepancy, transforms.CALIBRATION_TOLERANCE)
    cal = transforms.calibrate(2, 'K')
    report.notes['K calibration n=2'] = "m={} C={}".format(cal.m, cal.C)
    return report


def eigenrelation_report(lambdas=(0.5, 1.0, 2.0), n=2):
    """
    f = exp(-r^2) with its analytic radial Laplacian (4 r^2 - 2 n) exp(-r^2).
    """
    report = CheckReport('eigenrelation')

    def f(r):
        return np.exp(-np.asarray(r) ** 2)

    def laplacian(r):
        r = np.asarray(r)
        return (4.0 * r ** 2 - 2.0 * n) * np.exp(-r ** 2)

    residuals = transforms.eigen_check(f, n, lambdas, laplacian=laplacian)
    report.record('b_residual', max(item.b_residual for item in residuals), 1e-6)
    if residuals and residuals[0].k_corrected is not None:
        report.record('k_residual', max(item.k_corrected for item in residuals), 1e-4)
        report.record('k_printed_residual', max(item.k_printed for item in residuals))
        report.notes['k_sign'] = ", ".join("{:+d}".format(item.k_sign) for item in residuals)
    return report


def k_roundtrip_report(n=2, radii=(0.5, 1.0, 1.5, 2.0)):
    report = CheckReport('k-roundtrip')
    radii = np.asarray(radii, dtype=float)
    cal = transforms.calibrate(n, 'K')
    spectrum = transforms.k_forward(_gaussian, n, transforms.spectral_grid(), decay='gaussian')
    samples = transforms.k_inverse(spectrum, cal, radii)
    report.record('reconstruction_error', np.max(np.abs(np.real(samples.values) - _gaussian(radii))), 1e-4)
    report.record('imaginary_residue', np.max(np.abs(np.imag(samples.values))), 1e-4)
    return report


def pde_residual_report(D=1.0, v=(1.0, 0.0), k=1.0, lam=1.5, a=0.8, c=2.0):
    """
    Finite-difference residuals of the convection-diffusion, heat and wave kernels in the plane.
    """
    report = CheckReport('pde-residual')
    spec = kernels.ConvDiffSpec(2, v, D, k)
    velocity = np.asarray(spec.v)

    for which in ('general', 'fundamental'):
        def u(x):
            return kernels.convdiff_kernel(spec, x, np.zeros(2), which)
        worst = max(abs(D * _laplacian(u, x) + velocity.dot(_gradient(u, x)) - k * u(x)) for x in RESIDUAL_POINTS)
        report.record('convdiff_{}'.format(which), worst, 1e-5)

    heat = kernels.TimeSpaceDiffusionSpec(2, lam, a)
    t0 = 0.5

    def heat_at(t):
        return lambda x: kernels.timespace_diffusion_kernel(heat, np.linalg.norm(x), t)

    def heat_in_time(x):
        return lambda t: kernels.timespace_diffusion_kernel(heat, np.linalg.norm(x), t[0])

    worst = max(abs(_first_derivative(heat_in_time(x), np.array([t0]), 0) - a ** 2 * _laplacian(heat_at(t0), x))
                for x in RESIDUAL_POINTS)
    report.record('heat', worst, 1e-5)

    wave = kernels.TimeSpaceWaveSpec(2, lam, c, alpha=1.0, beta=0.5)
    times = np.linspace(0.1, 3.0, 7)

    def temporal_factor(t):
        return kernels.timespace_wave_temporal_factor(wave, t[0])

    temporal = max(abs(_second_derivative(temporal_factor, np.array([t]), 0)
                       + wave.angular_frequency ** 2 * kernels.timespace_wave_temporal_factor(wave, t))
                   for t in times)
    report.record('wave_temporal', temporal, 1e-5)

    def spatial(x):
        return kernels.timespace_wave_spatial_factor(wave, np.linalg.norm(x))
    worst = max(abs(_laplacian(spatial, x) + lam ** 2 * spatial(x)) for x in RESIDUAL_POINTS)
    report.record('wave_spatial', worst, 1e-5)
    return report


MU_CASES = (
    ((0.0, 0.0), 1.0, 0.0, 0.0),
    ((2.0, 0.0), 1.0, 0.0, 1.0),
    ((2.0, 0.0), 1.0, 3.0, 2.0),
)


def mu_report():
    report = CheckReport('mu')
    worst = max(abs(kernels.convdiff_mu(kernels.ConvDiffSpec(2, v, D, k)) - expected) for v, D, k, expected in MU_CASES)
    report.record('mu_error', worst, 1e-15)
    return report


def timespace_report(a=1.0, lam=1.0, large_time=1.0e9):
    """
    f(r, t) = exp(-t) exp(-r^2 / 2): its n = 2 spectrum is exp(-lam^2 / 2), and for large
    times the time-space inverse reduces to the B inverse.
    """
    report = CheckReport('timespace')
    spec = kernels.TimeSpaceDiffusionSpec(2, lam, a)

    def field(r, t):
        return np.exp(-t) * np.exp(-r ** 2 / 2.0)

    spectrum = transforms.ts_forward(field, 2, [lam], spec)
    report.record('forward_error', abs(spectrum.values[0] - np.exp(-lam ** 2 / 2.0)), 1e-6)

    grid = transforms.spectral_grid()
    cal = transforms.calibrate(2, 'B')
    full = transforms.b_forward(_gaussian, 2, grid, decay='gaussian')
    radii = np.linspace(0.0, 3.0, 13)
    late = transforms.ts_inverse(full, spec, cal, radii, [large_time])
    report.record('large_time_error', np.max(np.abs(late.values[0] - transforms.b_inverse(full, cal, radii).values)),
                  1e-6)
    report.notes['min a^2 lam^2 t'] = float((a * grid.nodes[0]) ** 2 * large_time)

    cases = [(1.0, 0.5, 2.0), (0.8, 1.5, 1.0), (2.0, 1.0, 3.0), (1.0, 3.0, 3.3), (1.0, 1.0, 0.0)]
    worst = max(abs(transforms.propagator_integral(a_, lam_, t) - (1.0 - np.exp(-(a_ * lam_) ** 2 * t)))
                for a_, lam_, t in cases)
    report.record('propagator_error', worst, 1e-12)
    return report


def _sine(x):
    return np.sin(np.pi * np.asarray(x))


def rbf_study_report(N_list=(8, 16, 32), kinds=('MQ', 'PreWaveletTPS'), c=0.25):
    """
    Interpolation of sin(pi x) on [-1, 1] with a fixed shape parameter c.
    """
    report = CheckReport('rbf-study')

    reproduction = 0.0
    for kind in kinds:
        rows = rbffit.convergence_study(_sine, kind, c, N_list)
        errors = [row.error for row in rows]
        steps = sum(1 for before, after in zip(errors, errors[1:]) if not after < before)
        report.record('non_decreasing_steps_{}'.format(kind), steps, 0)
        report.notes['{} errors'.format(kind)] = ", ".join("{:.3e}".format(error) for error in errors)
        for N in N_list:
            nodes = np.linspace(-1.0, 1.0, N)
            result = rbffit.fit([kernels.ClassicRbfSpec(kind, c)], nodes.reshape(-1, 1),
                                (nodes.reshape(-1, 1), _sine(nodes)), with_poly=rbffit.DEFAULT_POLY[kind])
            if result.condition_estimate < 1e12:
                residual = np.abs(rbffit.evaluate_fit(result, nodes) - _sine(nodes))
                reproduction = max(reproduction, float(np.max(residual)))
    report.record('interpolation_residual', reproduction, 1e-8)
    return report


RIDGELET_CENTERS = np.array([[0.0, 0.0], [0.6, 0.4], [-0.5, 0.3]])
RIDGELET_WEIGHTS = np.array([1.0, -0.5, 0.3])


def ridgelet_samples(spec, count=60, seed=None):
    """ Samples of a three-center general-kernel expansion at seeded random points of [-1, 1]^2 """
    rng = np.random.default_rng(seed if seed is not None else 7)
    points = rng.uniform(-1.0, 1.0, size=(count, 2))
    matrix = np.stack([kernels.convdiff_kernel(spec, points, center, 'general') for center in RIDGELET_CENTERS],
                      axis=1)
    return points, matrix.dot(RIDGELET_WEIGHTS)


def ridgelet_report(seed=None, perturbation=0.1):
    """
    Recover mu from data generated with D = 1, |v| = 2 (mu = 2 with k = 3, sqrt(2) with k = 1)
    starting from parameters perturbed by `perturbation`.
    """
    report = CheckReport('ridgelet')
    for k, mu in ((3.0, 2.0), (1.0, np.sqrt(2.0))):
        truth = kernels.ConvDiffSpec(2, (2.0, 0.0), 1.0, k)
        samples = ridgelet_samples(truth, seed=seed)
        scale = 1.0 + perturbation
        init = (truth.D * scale, tuple(np.asarray(truth.v) * scale), k * scale)
        result = rbffit.ridgelet_fit(samples, RIDGELET_CENTERS, init, fit_params=True)
        suffix = 'k{:g}'.format(k)
        report.record('mu_relative_error_{}'.format(suffix), abs(result.mu - mu) / mu, 0.05)
        report.record('loss_increase_{}'.format(suffix), max([0.0] + list(np.diff(result.loss_history))), 0.0)
        report.notes['iterations {}'.format(suffix)] = result.iterations
        report.notes['recovered mu {}'.format(suffix)] = result.mu
    return report


# Name of each check, in the order of the acceptance list.
CHECKS = {
    'orthogonality': orthogonality_report,
    'specfun': specfun_report,
    'dbt': dbt_report,
    'roundtrip': roundtrip_report,
    'calibration': calibration_report,
    'eigenrelation': eigenrelation_report,
    'k-roundtrip': k_roundtrip_report,
    'pde-residual': pde_residual_report,
    'mu': mu_report,
    'timespace': timespace_report,
    'rbf-study': rbf_study_report,
    'ridgelet': ridgelet_report,
}

ACCEPTANCE = tuple(CHECKS)


def run_check(name, **options):
    """ Run a check by name; options are passed to the harness as keyword arguments """
    if name not in CHECKS:
        raise DomainError("unknown check {!r}, expected one of {}".format(name, ", ".join(CHECKS)), module="checks")
    report = CHECKS[name](**options)
    log.info("check %s: %s", name, "passed" if report.passed else "failed: " + ", ".join(report.failures))
    return report
