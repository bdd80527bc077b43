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
Radial kernels: Helmholtz solutions and their Hankel / modified-Bessel duals,
convection-diffusion kernels, time-space diffusion and wave kernels, classic RBFs.

Every kernel accepts a real dimension n >= 1, so the Bessel order nu = n/2 - 1 may be
fractional. Radii may be scalars or arrays; results follow the shape of the input.
"""
# Imports ###########################################################

import dataclasses
import logging

import numpy as np
from lazy import lazy

from . import specfun
from .exceptions import DomainError
from .utils import as_points

# Globals ###########################################################

log = logging.getLogger(__name__)

CLASSIC_KINDS = ('MQ', 'Gaussian', 'PreWaveletTPS')
CONVDIFF_KINDS = ('general', 'fundamental', 'dual')

# Below this argument the Bessel factor is replaced by its two-term series.
_SMALL_ARGUMENT = 1.0e-3

# Classes ###########################################################


def _check(condition, message):
    if not condition:
        raise DomainError(message, module="kernels")


@dataclasses.dataclass(frozen=True)
class HelmholtzKernelSpec:
    """
    Wavenumber `lam` in dimension `n`; with `R` set the argument is lam * r / R.
    """
    n: float
    lam: float
    R: float = None

    def __post_init__(self):
        _check(self.n >= 1, "HelmholtzKernelSpec: n must be >= 1, got {}".format(self.n))
        _check(self.lam >= 0, "HelmholtzKernelSpec: lambda must be >= 0, got {}".format(self.lam))
        _check(self.R is None or self.R > 0, "HelmholtzKernelSpec: R must be positive, got {}".format(self.R))
        specfun.order_for_dimension(self.n)

    @lazy
    def nu(self):
        return specfun.order_for_dimension(self.n)

    @property
    def effective_lambda(self):
        """ Scale of the Bessel argument, lam / R when R is set """
        return self.lam / self.R if self.R else self.lam


@dataclasses.dataclass(frozen=True)
class ConvDiffSpec:
    """
    Convection-diffusion operator D lap(u) + v . grad(u) - k u.

    `v` has one component per spatial dimension; for a fractal n its length sets the
    dimension of the points the kernel is evaluated at.
    """
    n: float
    v: tuple
    D: float
    k: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, 'v', tuple(float(component) for component in np.atleast_1d(self.v)))
        errors = []
        if not self.n >= 1:
            errors.append("ConvDiffSpec: n must be >= 1")
        if not self.D > 0:
            errors.append("ConvDiffSpec: D must be positive")
        if not self.k >= 0:
            errors.append("ConvDiffSpec: k must be nonnegative")
        if float(self.n).is_integer() and len(self.v) != int(self.n):
            errors.append("ConvDiffSpec: v needs {} components, got {}".format(int(self.n), len(self.v)))
        if errors:
            raise DomainError("; ".join(errors), module="kernels")
        specfun.order_for_dimension(self.n)

    @property
    def nu(self):
        return specfun.order_for_dimension(self.n)

    @property
    def mu(self):
        return convdiff_mu(self)


@dataclasses.dataclass(frozen=True)
class TimeSpaceDiffusionSpec:
    n: float
    lam: float
    a: float

    def __post_init__(self):
        _check(self.n >= 1, "TimeSpaceDiffusionSpec: n must be >= 1")
        _check(self.lam > 0, "TimeSpaceDiffusionSpec: lambda must be positive")
        _check(self.a > 0, "TimeSpaceDiffusionSpec: a must be positive")
        specfun.order_for_dimension(self.n)

    @lazy
    def spatial(self):
        return HelmholtzKernelSpec(self.n, self.lam)


@dataclasses.dataclass(frozen=True)
class TimeSpaceWaveSpec:
    n: float
    lam: float
    c: float
    alpha: float = 1.0
    beta: float = 0.0

    def __post_init__(self):
        _check(self.n >= 1, "TimeSpaceWaveSpec: n must be >= 1")
        _check(self.lam > 0, "TimeSpaceWaveSpec: lambda must be positive")
        _check(self.c > 0, "TimeSpaceWaveSpec: c must be positive")
        specfun.order_for_dimension(self.n)

    @lazy
    def spatial(self):
        return HelmholtzKernelSpec(self.n, self.lam)

    @property
    def angular_frequency(self):
        return self.c * self.lam


@dataclasses.dataclass(frozen=True)
class ClassicRbfSpec:
    kind: str
    c: float

    def __post_init__(self):
        _check(self.kind in CLASSIC_KINDS, "ClassicRbfSpec: kind must be one of {}, got {!r}".format(
            CLASSIC_KINDS, self.kind))
        _check(self.c > 0, "ClassicRbfSpec: c must be positive, got {}".format(self.c))


# Functions #########################################################


def _radii(r, strict=False, name="kernel"):
    r = np.asarray(r, dtype=float)
    if strict:
        _check(np.all(r > 0), "{}: r must be positive (the kernel is singular at 0)".format(name))
    else:
        _check(np.all(r >= 0), "{}: r must be nonnegative".format(name))
    return r


def _scalar(value):
    return value[()] if isinstance(value, np.ndarray) and value.ndim == 0 else value


def _regular_radial(kind, nu, scale, r):
    """
    (scale / 2 pi r)^nu C_nu(scale r) for C = J or I, finite at r = 0; scale and r broadcast.

    The limit there is (scale^2 / 4 pi)^nu / Gamma(nu + 1).
    """
    scale, r = np.broadcast_arrays(np.asarray(scale, dtype=float), np.asarray(r, dtype=float))
    x = scale * r
    limit = (scale ** 2 / (4.0 * np.pi)) ** nu / specfun.gamma(nu + 1.0)
    small = x < _SMALL_ARGUMENT
    sign = -1.0 if kind == 'J' else 1.0
    out = np.empty(x.shape)
    out[small] = limit[small] * (1.0 + sign * (x[small] / 2.0) ** 2 / (nu + 1.0))
    large = ~small
    out[large] = (scale[large] / (2.0 * np.pi * r[large])) ** nu * specfun.bessel_eval(kind, nu, x[large])
    return out


def helmholtz_family(n, lams, r):
    """
    phi_n(lam r) for every radius and wavenumber, shape (len(r), len(lams)).

    Same conventions as helmholtz_kernel with R unset.
    """
    r = np.asarray(r, dtype=float).reshape(-1, 1)
    lams = np.asarray(lams, dtype=float).reshape(1, -1)
    _check(np.all(r >= 0), "helmholtz_family: r must be nonnegative")
    _check(np.all(lams >= 0), "helmholtz_family: wavenumbers must be nonnegative")
    constant = lams == 0
    safe = np.where(constant, 1.0, lams)
    if n == 1:
        values = np.sin(safe * r) / (2.0 * safe)
    else:
        values = _regular_radial('J', specfun.order_for_dimension(n), safe, r)
    return np.where(constant, 1.0, values)


def helmholtz_kernel(spec, r):
    """
    Non-singular radial solution of (lap + lam^2) phi = 0.

    lam = 0 gives the constant 1, n = 1 gives sin(lam r) / (2 lam), otherwise
    (lam / 2 pi r)^nu J_nu(lam r). The effective wavenumber lam / R is used throughout
    when R is set.
    """
    r = _radii(r, name="helmholtz_kernel")
    values = helmholtz_family(spec.n, [spec.effective_lambda], r.reshape(-1))
    return _scalar(values[:, 0].reshape(r.shape))


def _singular_prefactor(spec, r, name):
    _check(spec.n >= 2, "{}: needs n >= 2, got {}".format(name, spec.n))
    _check(spec.lam > 0, "{}: needs lambda > 0".format(name))
    r = _radii(r, strict=True, name=name)
    return r, spec.effective_lambda


def hankel_kernel(spec, r, kind='H1'):
    """
    Singular Helmholtz solution (lam / 2 pi r)^nu H_nu(lam r) with a Hankel function of
    the first (outgoing) or second (incoming) kind.
    """
    r, scale = _singular_prefactor(spec, r, "hankel_kernel")
    return _scalar((scale / (2.0 * np.pi * r)) ** spec.nu * specfun.hankel_eval(kind, spec.nu, scale * r))


def helmholtz_dual_kernel_phi(spec, r):
    """
    Incoming general solution (lam / 2 pi r)^nu H2_nu(lam r), the conjugate partner of the
    outgoing one. Its real part is the regular kernel up to the (lam r)^nu normalization.
    """
    return hankel_kernel(spec, r, kind='H2')


def dual_kernel_g(spec, r):
    """
    Harmonic wavelet g = (1/2 pi) (-i lam / 2 pi r)^nu K_nu(-i lam r).

    K at the negative imaginary argument is evaluated through H1, which makes g equal to
    (i/4) (lam / 2 pi r)^nu H1_nu(lam r).
    """
    r, scale = _singular_prefactor(spec, r, "dual_kernel_g")
    prefactor = (-1j * scale / (2.0 * np.pi * r)) ** spec.nu
    return _scalar(prefactor * specfun.bessel_k_neg_imag(spec.nu, scale * r) / (2.0 * np.pi))


def dual_basis(spec, r):
    """ Dual wavelet: the complex conjugate of dual_kernel_g """
    return np.conj(dual_kernel_g(spec, r))


def dual_family(n, lams, r):
    """
    dual_kernel_g for every radius and wavenumber, shape (len(r), len(lams)); r > 0.
    """
    _check(n >= 2, "dual_family: needs n >= 2, got {}".format(n))
    r = _radii(np.asarray(r, dtype=float).reshape(-1, 1), strict=True, name="dual_family")
    lams = np.asarray(lams, dtype=float).reshape(1, -1)
    _check(np.all(lams > 0), "dual_family: wavenumbers must be positive")
    nu = specfun.order_for_dimension(n)
    prefactor = (-1j * lams / (2.0 * np.pi * r)) ** nu
    return prefactor * specfun.bessel_k_neg_imag(nu, lams * r) / (2.0 * np.pi)


def convdiff_mu(spec):
    """ mu = sqrt((|v| / 2D)^2 + k / D) """
    speed = np.linalg.norm(spec.v)
    return float(np.sqrt((speed / (2.0 * spec.D)) ** 2 + spec.k / spec.D))


def convdiff_kernel(spec, x, center, which='general'):
    """
    Convection-diffusion kernel at point(s) x around `center`.

    The exponential factor exp(-v . (x - center) / 2D) is directional; the radial factor is
    (1/2 pi)(mu / 2 pi r)^nu times I_nu (general), K_nu (fundamental) or I_nu + i K_nu (dual).
    """
    _check(which in CONVDIFF_KINDS, "convdiff_kernel: unknown kind {!r}".format(which))
    single = np.ndim(x) <= 1
    points = as_points(x)
    center = np.asarray(center, dtype=float).reshape(-1)
    _check(points.shape[1] == len(spec.v) == len(center),
           "convdiff_kernel: points, center and v must share one dimension")
    offset = points - center
    r = np.linalg.norm(offset, axis=1)
    drift = np.exp(-offset.dot(spec.v) / (2.0 * spec.D))
    mu = spec.mu
    nu = spec.nu

    if which == 'general':
        if mu == 0:
            _check(nu >= 0, "convdiff_kernel: mu = 0 has no regular solution for n < 2")
            radial = np.full_like(r, 0.0 ** nu / specfun.gamma(nu + 1.0))
        else:
            radial = _regular_radial('I', nu, mu, r)
        value = drift * radial / (2.0 * np.pi)
    else:
        _check(np.all(r > 0), "convdiff_kernel: the {} kernel is singular at the center".format(which))
        _check(mu > 0, "convdiff_kernel: the {} kernel needs mu > 0".format(which))
        prefactor = drift * (mu / (2.0 * np.pi * r)) ** nu / (2.0 * np.pi)
        singular = specfun.bessel_eval('K', nu, mu * r)
        if which == 'fundamental':
            value = prefactor * singular
        else:
            value = prefactor * (specfun.bessel_eval('I', nu, mu * r) + 1j * singular)
    return value[0] if single else value


def _heaviside(value):
    return np.where(np.asarray(value) >= 0, 1.0, 0.0)


def timespace_diffusion_kernel(spec, r, dt):
    """ H(dt) exp(-a^2 lam^2 dt) phi_n(lam r) """
    r = _radii(r, name="timespace_diffusion_kernel")
    dt = np.asarray(dt, dtype=float)
    decay = np.exp(-(spec.a * spec.lam) ** 2 * np.maximum(dt, 0.0))
    return _scalar(_heaviside(dt) * decay * helmholtz_kernel(spec.spatial, r))


def timespace_wave_temporal_factor(spec, dt):
    """ alpha cos(c lam dt) + (beta / c lam) sin(c lam dt) """
    omega = spec.angular_frequency
    dt = np.asarray(dt, dtype=float)
    return _scalar(spec.alpha * np.cos(omega * dt) + spec.beta / omega * np.sin(omega * dt))


def timespace_wave_spatial_factor(spec, r):
    return helmholtz_kernel(spec.spatial, r)


def timespace_wave_kernel(spec, r, dt):
    """
    Temporal factor times phi_n(lam r), supported where dt >= 0 and c lam dt >= r.
    """
    r = _radii(r, name="timespace_wave_kernel")
    dt = np.asarray(dt, dtype=float)
    support = _heaviside(dt) * _heaviside(spec.angular_frequency * dt - r)
    return _scalar(support * timespace_wave_temporal_factor(spec, dt) * timespace_wave_spatial_factor(spec, r))


def _k_neg_imag_radial(n, lam, r, name):
    spec = HelmholtzKernelSpec(n, lam)
    r, scale = _singular_prefactor(spec, r, name)
    return (scale / (2.0 * np.pi * r)) ** spec.nu * specfun.bessel_k_neg_imag(spec.nu, scale * r)


def timespace_diffusion_dual_kernel(spec, r, dt):
    """ H(dt) exp(-a^2 lam^2 dt) (lam / 2 pi r)^nu K_nu(-i lam r), complex valued """
    dt = np.asarray(dt, dtype=float)
    radial = _k_neg_imag_radial(spec.n, spec.lam, r, "timespace_diffusion_dual_kernel")
    decay = np.exp(-(spec.a * spec.lam) ** 2 * np.maximum(dt, 0.0))
    return _scalar(_heaviside(dt) * decay * radial)


def timespace_wave_dual_kernel(spec, r, dt):
    """ Wave kernel with the K(-i lam r) radial factor; same causal support as the regular one """
    dt = np.asarray(dt, dtype=float)
    radial = _k_neg_imag_radial(spec.n, spec.lam, r, "timespace_wave_dual_kernel")
    support = _heaviside(dt) * _heaviside(spec.angular_frequency * dt - np.asarray(r, dtype=float))
    return _scalar(support * timespace_wave_temporal_factor(spec, dt) * radial)


def classic_rbf(spec, r):
    """
    MQ sqrt(r^2 + c^2), Gaussian exp(-r^2 / c^2) or pre-wavelet TPS (r^2 + c^2) ln sqrt(r^2 + c^2).
    """
    r = _radii(r, name="classic_rbf")
    shifted = r ** 2 + spec.c ** 2
    if spec.kind == 'MQ':
        value = np.sqrt(shifted)
    elif spec.kind == 'Gaussian':
        value = np.exp(-r ** 2 / spec.c ** 2)
    else:
        value = 0.5 * shifted * np.log(shifted)
    return _scalar(value)
