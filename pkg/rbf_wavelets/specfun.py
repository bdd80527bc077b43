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
Bessel functions of real order for real positive argument.

Thin, validated layer over scipy.special: J, Y, I, K, the Hankel functions, derivatives by
recurrence, and the positive zeros of J for any real order in the supported range.
Orders may be fractional since the kernels use nu = n/2 - 1 with a real dimension n.
"""
# Imports ###########################################################

import functools
import logging

import numpy as np
from scipy import optimize, special

from .exceptions import DomainError

# Globals ###########################################################

log = logging.getLogger(__name__)

ORDER_MIN = -0.5
ORDER_MAX = 60.0

KINDS = ('J', 'Y', 'I', 'K')
HANKEL_KINDS = ('H1', 'H2')

# Zeros of J_nu are at least pi/2 apart for nu >= -1/2, so this step cannot straddle two.
_ZERO_SCAN_STEP = 0.25

_EVALUATORS = {
    'J': special.jv,
    'Y': special.yv,
    'I': special.iv,
    'K': special.kv,
}

# Functions #########################################################


def validate_order(order):
    """
    Return `order` as a float, or raise DomainError if it is outside [-0.5, 60].
    """
    try:
        nu = float(order)
    except (TypeError, ValueError):
        raise DomainError("Order: {!r} is not a real number".format(order))
    if not np.isfinite(nu) or nu < ORDER_MIN or nu > ORDER_MAX:
        raise DomainError("Order: nu={} is outside [{}, {}]".format(nu, ORDER_MIN, ORDER_MAX))
    return nu


def order_for_dimension(n):
    """ Bessel order nu = n/2 - 1 used by the n-dimensional radial kernels """
    return validate_order(n / 2.0 - 1.0)


def _validate_argument(kind, x):
    x = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(x)):
        raise DomainError("{}: argument must be finite".format(kind))
    if kind in ('Y', 'K', 'H1', 'H2'):
        if np.any(x <= 0):
            raise DomainError("{}: argument must be positive, got min x={}".format(kind, x.min()))
    elif np.any(x < 0):
        raise DomainError("{}: argument must be nonnegative, got min x={}".format(kind, x.min()))
    return x


def _unwrap(value):
    """ Return Python scalars for 0-d results, arrays otherwise """
    if np.ndim(value) == 0:
        return value[()] if isinstance(value, np.ndarray) else value
    return value


def evaluate_unchecked(kind, nu, x):
    """ Evaluation without the order range check, for the neighbouring orders of the recurrences """
    return _EVALUATORS[kind](nu, x)


def bessel_eval(kind, order, x):
    """
    Value of J_nu, Y_nu, I_nu or K_nu at x (scalar or array).

    Y and K are singular at the origin and need x > 0; J and I accept x >= 0.
    """
    if kind not in KINDS:
        raise DomainError("bessel_eval: unknown kind {!r}, expected one of {}".format(kind, KINDS))
    nu = validate_order(order)
    x = _validate_argument(kind, x)
    return _unwrap(evaluate_unchecked(kind, nu, x))


def bessel_derivative(kind, order, x):
    """
    Derivative with respect to x, from the three-term recurrences (no finite differences).
    """
    if kind not in KINDS:
        raise DomainError("bessel_derivative: unknown kind {!r}".format(kind))
    nu = validate_order(order)
    x = _validate_argument(kind, x)
    lower = evaluate_unchecked(kind, nu - 1.0, x)
    upper = evaluate_unchecked(kind, nu + 1.0, x)
    if kind in ('J', 'Y'):
        value = 0.5 * (lower - upper)
    elif kind == 'I':
        value = 0.5 * (lower + upper)
    else:
        value = -0.5 * (lower + upper)
    return _unwrap(value)


def hankel_eval(kind, order, x):
    """
    Hankel function of the first (H1 = J + iY) or second (H2 = J - iY) kind.

    Built from J and Y directly so that H2 is exactly the conjugate of H1.
    """
    if kind not in HANKEL_KINDS:
        raise DomainError("hankel_eval: unknown kind {!r}, expected one of {}".format(kind, HANKEL_KINDS))
    nu = validate_order(order)
    x = _validate_argument(kind, x)
    j_part = special.jv(nu, x)
    y_part = special.yv(nu, x)
    sign = 1.0 if kind == 'H1' else -1.0
    return _unwrap(j_part + sign * 1j * y_part)


def bessel_k_neg_imag(order, x):
    """
    K_nu(-ix) for real x > 0, through the Hankel function.

    K_nu(-ix) = (pi/2) i^(nu+1) H1_nu(x); for nu = 0 this is K_0(-ix) = (i pi/2) H1_0(x).
    """
    nu = validate_order(order)
    phase = (np.pi / 2.0) * np.exp(0.5j * np.pi * (nu + 1.0))
    return _unwrap(phase * np.asarray(hankel_eval('H1', nu, x)))


def gamma(value):
    """ Gamma function, used for the small-argument limits of the radial kernels """
    return special.gamma(value)


def unit_sphere_area(n):
    """ Surface area of the unit sphere in R^n, for real n >= 1 """
    if n < 1:
        raise DomainError("unit_sphere_area: dimension n={} must be >= 1".format(n))
    return 2.0 * np.pi ** (n / 2.0) / special.gamma(n / 2.0)


@functools.lru_cache(maxsize=256)
def _cached_zeros(nu, count):
    roots = []
    start = max(1.0e-3, nu)
    upper = start + (count + 2) * np.pi + 2.0 * abs(nu)

    def j_nu(x):
        return special.jv(nu, x)

    while len(roots) < count:
        grid = np.arange(start, upper + _ZERO_SCAN_STEP, _ZERO_SCAN_STEP)
        values = special.jv(nu, grid)
        roots.extend(grid[values == 0.0])
        brackets = np.flatnonzero(values[:-1] * values[1:] < 0.0)
        for idx in brackets:
            roots.append(optimize.brentq(j_nu, grid[idx], grid[idx + 1], xtol=1.0e-15, rtol=4.0 * np.finfo(float).eps))
        log.debug("jn_zeros: nu=%s scanned [%s, %s], %s roots so far", nu, start, grid[-1], len(roots))
        roots = sorted(set(roots))
        start = grid[-1]
        upper = start + (count - len(roots) + 2) * np.pi
    return tuple(roots[:count])


def jn_zeros(order, count):
    """
    First `count` positive zeros of J_nu, ascending.

    Zeros are bracketed by scanning for sign changes and polished with Brent's method.
    """
    nu = validate_order(order)
    if int(count) != count or count < 1:
        raise DomainError("jn_zeros: count must be a positive integer, got {!r}".format(count))
    return np.array(_cached_zeros(nu, int(count)))
