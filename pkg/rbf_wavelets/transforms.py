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
Continuous transforms of radial functions about a single reference center.

B-transform:   F(lam) = int_0^inf r^(n-1) f(r) phi_n(lam r) dr
               f(r)   = C_phi^-1 int_0^inf F(lam) phi_n(lam r) lam^m dlam
K-transform:   F(lam) = int_0^inf r^(n-1) f(r) conj(g_n(lam r)) dr, synthesized from the
               antisymmetric parts (F - conj F)(g - conj g) / 2 of the bi-orthogonal pair.
Time-space:    forward over r and t, inverse weighted by the heat propagator.

Spectra computed on a `spectral_grid` carry its quadrature weights, so the inverse
integrals are plain weighted sums; spectra without weights are integrated through a cubic
spline on their grid.
"""
# Imports ###########################################################

import dataclasses
import functools
import logging

import numpy as np
from scipy import interpolate

from . import kernels, quadrature, specfun
from .exceptions import CalibrationError, DomainError
from .series import RadialSamples
from .utils import default, sample

# Globals ###########################################################

log = logging.getLogger(__name__)

KINDS = ('B', 'K', 'TS-diffusion')

CALIBRATION_TOLERANCE = 1.0e-5
CALIBRATION_RADII = (0.0, 0.5, 1.0, 2.0)

# The propagator saturates to 1 - e^-40 beyond this exponent.
_PROPAGATOR_CUTOFF = 40.0
_PROPAGATOR_RULE = (16, 40)

# Classes ###########################################################


def _check(condition, message):
    if not condition:
        raise DomainError(message, module="transforms")


@dataclasses.dataclass(frozen=True)
class TransformCalibration:
    """ Inverse measure lam^m dlam and normalization constant (C_phi, or C_g for K) """
    m: float
    C: float
    kind: str = 'B'
    discrepancy: float = None

    @property
    def C_phi(self):
        return self.C


@dataclasses.dataclass(frozen=True, eq=False)
class Spectrum:
    """
    F(lam) on an increasing positive grid. `weights` are present when the grid is a
    quadrature rule.
    """
    lambdas: np.ndarray
    values: np.ndarray
    order: float
    kind: str
    weights: np.ndarray = None

    def __post_init__(self):
        object.__setattr__(self, 'lambdas', np.asarray(self.lambdas, dtype=float).reshape(-1))
        object.__setattr__(self, 'values', np.asarray(self.values).reshape(-1))
        _check(self.kind in KINDS, "Spectrum: unknown kind {!r}".format(self.kind))
        _check(len(self.lambdas) == len(self.values), "Spectrum: grid and values differ in length")
        _check(len(self.lambdas) >= 1 and np.all(self.lambdas > 0) and np.all(np.diff(self.lambdas) > 0),
               "Spectrum: grid must be positive and strictly increasing")
        _check(np.all(np.isfinite(self.values)), "Spectrum: values must be finite")
        specfun.validate_order(self.order)
        if self.weights is not None:
            object.__setattr__(self, 'weights', np.asarray(self.weights, dtype=float).reshape(-1))
            _check(len(self.weights) == len(self.lambdas), "Spectrum: weights and grid differ in length")

    @property
    def n(self):
        """ Dimension belonging to the Bessel order, n = 2 nu + 2 """
        return 2.0 * self.order + 2.0


@dataclasses.dataclass(frozen=True, eq=False)
class FieldSamples:
    """ Values of f(r, t), shape (len(times), len(radii)) """
    radii: np.ndarray
    times: np.ndarray
    values: np.ndarray


@dataclasses.dataclass(frozen=True)
class EigenResidual:
    """
    Residuals of the Laplacian eigenrelations at one wavenumber.

    k_printed is |K[lap f] + lam^2 K[f]|; k_corrected adds back the point-source term
    f(0) / |S^(n-1)| of the Green's function; k_sign is the sign s for which
    K[lap f] = s lam^2 K[f] - f(0) / |S^(n-1)| fits best.
    """
    lam: float
    b_residual: float
    k_printed: float = None
    k_corrected: float = None
    k_sign: int = None


# Functions #########################################################


def spectral_grid(lambda_max=None, panels=None, count=None):
    """ Composite Gauss-Legendre rule on [0, lambda_max] used as the wavenumber grid """
    return quadrature.make_composite_gauss_legendre(
        count or default('spectral_grid.nodes'),
        0.0,
        lambda_max or default('spectral_grid.lambda_max'),
        panels or default('spectral_grid.panels'),
    )


def _grid(lambda_grid):
    if isinstance(lambda_grid, quadrature.QuadratureRule):
        return lambda_grid.nodes, lambda_grid.weights
    lams = np.atleast_1d(np.asarray(lambda_grid, dtype=float))
    _check(np.all(lams > 0) and np.all(np.diff(lams) > 0), "lambda grid must be positive and increasing")
    return lams, None


def _radial_integral(f, n, lams, kernel_family, decay, tol, scale, nodes):
    """
    int_0^inf r^(n-1) f(r) kernel(lam r) dr for every lam in `lams`.
    """
    tol = tol or default('tolerance')
    nu = specfun.order_for_dimension(n)

    def integrand_for(grid):
        def integrand(r):
            return (r ** (n - 1) * sample(f, r))[:, None] * kernel_family(n, grid, r)
        return integrand

    if decay in ('gaussian', 'exponential'):
        return quadrature.integrate_semi_infinite(integrand_for(lams), decay, tol, scale=scale,
                                                  frequency=float(np.max(lams)), nodes=nodes)
    values = []
    for lam in lams:
        one = quadrature.integrate_semi_infinite(integrand_for(np.array([lam])), decay, tol, scale=scale,
                                                 frequency=float(lam), order=nu, nodes=nodes)
        values.append(np.asarray(one).reshape(-1)[0])
    return np.array(values)


def b_forward(f, n, lambda_grid, decay='oscillatory-bessel', tol=None, scale=1.0, nodes=None):
    """
    B-transform of a radial function; `decay` is the hint passed to the semi-infinite integrator.
    """
    _check(n >= 1, "b_forward: n must be >= 1")
    lams, weights = _grid(lambda_grid)
    values = _radial_integral(f, n, lams, kernels.helmholtz_family, decay, tol, scale, nodes)
    log.debug("b_forward: n=%s, %s wavenumbers up to %s", n, len(lams), lams[-1])
    return Spectrum(lambdas=lams, values=np.real(values), order=n / 2.0 - 1.0, kind='B', weights=weights)


def k_forward(f, n, lambda_grid, decay='oscillatory-bessel', tol=None, scale=1.0, nodes=None):
    """
    K-transform: projection on the dual basis conj(g_n).
    """
    _check(n >= 2, "k_forward: n must be >= 2")
    lams, weights = _grid(lambda_grid)
    _check(np.all(lams > 0), "k_forward: wavenumbers must be positive")

    def conjugate_family(dimension, grid, r):
        return np.conj(kernels.dual_family(dimension, grid, r))

    values = _radial_integral(f, n, lams, conjugate_family, decay, tol, scale, nodes)
    return Spectrum(lambdas=lams, values=values, order=n / 2.0 - 1.0, kind='K', weights=weights)


def _lambda_integral(spectrum, integrand_values):
    """
    int F-weighted integrand over lam; integrand_values has shape (len(r), len(lambdas)).
    """
    if spectrum.weights is not None:
        return integrand_values.dot(spectrum.weights)
    lams = spectrum.lambdas
    spline = interpolate.CubicSpline(lams, integrand_values, axis=1, extrapolate=True)
    rule = quadrature.make_composite_gauss_legendre(default('spectral_grid.nodes'), 0.0, lams[-1], max(len(lams), 8))
    return spline(rule.nodes).dot(rule.weights)


def _synthesis_weights(spectrum, cal):
    return spectrum.lambdas ** cal.m / cal.C


def b_inverse(spectrum, cal, r_grid):
    """
    f(r) = C_phi^-1 int F(lam) phi_n(lam r) lam^m dlam on the radii in r_grid.
    """
    _check(spectrum.kind in ('B', 'TS-diffusion'), "b_inverse: needs a B spectrum, got {}".format(spectrum.kind))
    radii = np.atleast_1d(np.asarray(r_grid, dtype=float))
    phi = kernels.helmholtz_family(spectrum.n, spectrum.lambdas, radii)
    values = _lambda_integral(spectrum, phi * (spectrum.values * _synthesis_weights(spectrum, cal))[None, :])
    return RadialSamples(radii=radii, values=np.real(values))


def _antisymmetric_dual(n, lams, radii):
    """
    g - conj(g) for every radius and wavenumber; at r = 0 it is the finite value i phi_n / 2.
    """
    out = np.empty((len(radii), len(lams)), dtype=complex)
    origin = radii == 0
    out[origin] = 0.5j * kernels.helmholtz_family(n, lams, radii[origin])
    if np.any(~origin):
        g = kernels.dual_family(n, lams, radii[~origin])
        out[~origin] = g - np.conj(g)
    return out


def k_inverse(spectrum, cal, r_grid):
    """
    f(r) = C_g^-1 int (F - conj F)(g - conj g) / 2 lam^m dlam.

    The result stays complex so the imaginary residue of the synthesis can be inspected.
    """
    _check(spectrum.kind == 'K', "k_inverse: needs a K spectrum, got {}".format(spectrum.kind))
    radii = np.atleast_1d(np.asarray(r_grid, dtype=float))
    F = spectrum.values
    antisymmetric = 0.5 * (F - np.conj(F)) * _synthesis_weights(spectrum, cal)
    values = _lambda_integral(spectrum, _antisymmetric_dual(spectrum.n, spectrum.lambdas, radii) * antisymmetric)
    return RadialSamples(radii=radii, values=values)


def _round_trip_discrepancy(n, kind, cal):
    grid = spectral_grid(lambda_max=12.0, panels=12)

    def gaussian(r):
        return np.exp(-r ** 2 / 2.0)

    radii = np.array(CALIBRATION_RADII)
    if kind == 'B':
        samples = b_inverse(b_forward(gaussian, n, grid, decay='gaussian'), cal, radii)
    else:
        samples = k_inverse(k_forward(gaussian, n, grid, decay='gaussian'), cal, radii)
    return float(np.max(np.abs(samples.values - gaussian(radii))))


@functools.lru_cache(maxsize=32)
def calibrate(n, kind='B', tol=CALIBRATION_TOLERANCE):
    """
    m = 3 - n and C_phi = (2 pi)^(2 - n) for the B-transform, C_g = C_phi / 8 for K.

    The constants are checked by a Gaussian round trip before they are returned.
    """
    _check(kind in ('B', 'K'), "calibrate: kind must be B or K, got {!r}".format(kind))
    _check(n >= 2, "calibrate: needs n >= 2, got {}".format(n))
    C_phi = (2.0 * np.pi) ** (2.0 - n)
    cal = TransformCalibration(m=3.0 - n, C=C_phi if kind == 'B' else C_phi / 8.0, kind=kind)
    discrepancy = _round_trip_discrepancy(n, kind, cal)
    if not discrepancy <= tol:
        raise CalibrationError("calibrate({}, {}): Gaussian round trip is off by {:.3g}".format(n, kind, discrepancy),
                               discrepancy=discrepancy)
    if discrepancy > 0.1 * tol:
        log.warning("calibrate(%s, %s): round-trip discrepancy %.3g is close to tolerance %.3g",
                    n, kind, discrepancy, tol)
    log.debug("calibrate(%s, %s): m=%s C=%s discrepancy=%.3g", n, kind, cal.m, cal.C, discrepancy)
    return dataclasses.replace(cal, discrepancy=discrepancy)


def _fourth_order_laplacian(f, n, h=1.0e-3):
    """
    Radial Laplacian f'' + (n-1) f' / r from fourth-order central differences of the even
    extension of f.
    """
    def laplacian(r):
        r = np.asarray(r, dtype=float)

        def at(shift):
            return sample(f, np.abs(r + shift * h))

        second = (-at(2) + 16.0 * at(1) - 30.0 * at(0) + 16.0 * at(-1) - at(-2)) / (12.0 * h ** 2)
        first = (-at(2) + 8.0 * at(1) - 8.0 * at(-1) + at(-2)) / (12.0 * h)
        return second + (n - 1.0) * first / r
    return laplacian


def eigen_check(f, n, lambdas, laplacian=None, include_k=True, decay='gaussian', tol=None):
    """
    Residuals of B[lap f] = -lam^2 B[f] and of the K-transform analog at each wavenumber.
    """
    lams = np.atleast_1d(np.asarray(lambdas, dtype=float))
    lap = laplacian or _fourth_order_laplacian(f, n)
    b_f = b_forward(f, n, lams, decay=decay, tol=tol).values
    b_lap = b_forward(lap, n, lams, decay=decay, tol=tol).values
    b_residuals = np.abs(b_lap + lams ** 2 * b_f)

    results = []
    if include_k and n >= 2:
        k_f = k_forward(f, n, lams, decay=decay, tol=tol).values
        k_lap = k_forward(lap, n, lams, decay=decay, tol=tol).values
        source = float(np.real(sample(f, np.array([0.0]))[0])) / specfun.unit_sphere_area(n)
        printed = np.abs(k_lap + lams ** 2 * k_f)
        corrected = {sign: np.abs(k_lap - sign * lams ** 2 * k_f + source) for sign in (-1, 1)}
        for index, lam in enumerate(lams):
            sign = min((-1, 1), key=lambda s: corrected[s][index])
            if sign != -1:
                log.warning("eigen_check: K-transform relation fits sign %+d at lam=%s", sign, lam)
            results.append(EigenResidual(
                lam=float(lam), b_residual=float(b_residuals[index]), k_printed=float(printed[index]),
                k_corrected=float(corrected[-1][index]), k_sign=sign,
            ))
    else:
        results = [EigenResidual(lam=float(lam), b_residual=float(res)) for lam, res in zip(lams, b_residuals)]
    return results


def time_integrated_profile(f, time_decay='exponential', tol=None, time_scale=1.0):
    """
    r -> int_0^inf f(r, t) dt, batched over the radii it is called with.
    """
    tol = tol or default('tolerance')

    def profile(r):
        r = np.atleast_1d(np.asarray(r, dtype=float))

        def in_time(t):
            return np.asarray(f(r[None, :], np.asarray(t, dtype=float)[:, None]), dtype=float)
        return np.asarray(quadrature.integrate_semi_infinite(in_time, time_decay, tol, scale=time_scale))
    return profile


def ts_forward(f, n, lambda_grid, spec, decay='exponential', time_decay='exponential', tol=None):
    """
    F(lam) = int int r^(n-1) f(r, t) phi_n(lam r) dr dt for f taking broadcast arrays (r, t).

    The time integral is recomputed each time the radial integrator asks for the profile, so the
    batched decay hints are the practical choice here.
    """
    _check(spec.n == n, "ts_forward: spec dimension {} differs from n={}".format(spec.n, n))
    profile = time_integrated_profile(f, time_decay, tol)
    spectrum = b_forward(profile, n, lambda_grid, decay=decay, tol=tol)
    return dataclasses.replace(spectrum, kind='TS-diffusion')


def propagator_integral(a, lam, t):
    """
    int_0^t a^2 lam^2 exp(-a^2 lam^2 (t - tau)) dtau, by quadrature in s = a^2 lam^2 (t - tau).

    Equals 1 - exp(-a^2 lam^2 t) for t >= 0 and 0 before the start of time.
    """
    exponent = (a * np.asarray(lam, dtype=float)) ** 2 * np.maximum(np.asarray(t, dtype=float), 0.0)
    upper = np.asarray(np.minimum(exponent, _PROPAGATOR_CUTOFF))
    rule = quadrature.make_composite_gauss_legendre(_PROPAGATOR_RULE[0], 0.0, 1.0, _PROPAGATOR_RULE[1])
    nodes = rule.nodes.reshape((-1,) + (1,) * upper.ndim)
    value = upper * np.tensordot(rule.weights, np.exp(-upper[None, ...] * nodes), axes=(0, 0))
    return value[()] if np.ndim(value) == 0 else value


def ts_inverse(spectrum, ts, cal, r_grid, t_grid):
    """
    f(r, t) = C_phi^-1 int P(a, lam, t) F(lam) phi_n(lam r) lam^m dlam, P the propagator integral.
    """
    _check(spectrum.kind in ('TS-diffusion', 'B'), "ts_inverse: needs a time-space spectrum")
    radii = np.atleast_1d(np.asarray(r_grid, dtype=float))
    times = np.atleast_1d(np.asarray(t_grid, dtype=float))
    phi = kernels.helmholtz_family(spectrum.n, spectrum.lambdas, radii)
    base = phi * (spectrum.values * _synthesis_weights(spectrum, cal))[None, :]
    rows = []
    for t in times:
        weights = propagator_integral(ts.a, spectrum.lambdas, t)
        rows.append(np.real(_lambda_integral(spectrum, base * weights[None, :])))
    return FieldSamples(radii=radii, times=times, values=np.array(rows))
