"""
Unit tests for the Bessel function layer
"""
import unittest

import ddt
import numpy as np
from scipy import special

from rbf_wavelets import specfun
from rbf_wavelets.exceptions import DomainError


@ddt.ddt
class TestBesselEval(unittest.TestCase):
    """ Values, derivatives and argument checks """

    @ddt.data(0.1, 0.5, 1.0, 5.0, 17.3)
    def test_half_integer_closed_forms(self, x):
        envelope = np.sqrt(2.0 / (np.pi * x))
        self.assertLess(abs(specfun.bessel_eval('J', 0.5, x) - envelope * np.sin(x)), 1e-12 * envelope)
        k_half = np.sqrt(np.pi / (2.0 * x)) * np.exp(-x)
        self.assertLess(abs(specfun.bessel_eval('K', 0.5, x) / k_half - 1.0), 1e-12)

    def test_values_at_origin(self):
        self.assertEqual(specfun.bessel_eval('J', 0, 0.0), 1.0)
        self.assertEqual(specfun.bessel_eval('J', 1, 0.0), 0.0)
        self.assertEqual(specfun.bessel_eval('I', 0, 0.0), 1.0)

    def test_array_in_array_out(self):
        x = np.linspace(0.5, 3.0, 6)
        values = specfun.bessel_eval('Y', 1.5, x)
        self.assertEqual(values.shape, (6,))
        np.testing.assert_allclose(values, special.yv(1.5, x), rtol=1e-14)

    @ddt.data('Y', 'K')
    def test_singular_kinds_reject_origin(self, kind):
        with self.assertRaises(DomainError):
            specfun.bessel_eval(kind, 0, 0.0)

    @ddt.data('J', 'I')
    def test_negative_argument_rejected(self, kind):
        with self.assertRaises(DomainError):
            specfun.bessel_eval(kind, 0, -1.0)

    @ddt.data(-1.0, 60.5, 'abc', float('nan'))
    def test_order_out_of_range(self, order):
        with self.assertRaises(DomainError):
            specfun.bessel_eval('J', order, 1.0)

    def test_unknown_kind(self):
        with self.assertRaises(DomainError):
            specfun.bessel_eval('Z', 0, 1.0)

    @ddt.data(0.3, 2.0, 11.0)
    def test_derivative_of_j0_is_minus_j1(self, x):
        self.assertAlmostEqual(specfun.bessel_derivative('J', 0, x), -special.j1(x), places=14)

    @ddt.data(0.3, 2.0, 11.0)
    def test_derivative_of_k0_is_minus_k1(self, x):
        self.assertLess(abs(specfun.bessel_derivative('K', 0, x) / -special.k1(x) - 1.0), 1e-13)

    def test_hankel_kinds_are_conjugate(self):
        x = np.linspace(0.2, 9.0, 17)
        h1 = specfun.hankel_eval('H1', 0.5, x)
        h2 = specfun.hankel_eval('H2', 0.5, x)
        np.testing.assert_array_equal(h2, np.conj(h1))
        np.testing.assert_allclose(h1, special.hankel1(0.5, x), rtol=1e-13)

    @ddt.data(0.4, 1.0, 6.5)
    def test_k_at_negative_imaginary_argument(self, x):
        # K_1/2(-ix) = sqrt(pi / 2x) exp(i pi / 4) exp(ix) on the principal branch
        expected = np.sqrt(np.pi / (2.0 * x)) * np.exp(0.25j * np.pi) * np.exp(1j * x)
        self.assertLess(abs(specfun.bessel_k_neg_imag(0.5, x) - expected), 1e-12 * abs(expected))


@ddt.ddt
class TestZerosAndConstants(unittest.TestCase):
    """ Zeros of J, sphere areas and the dimension-order map """

    def test_zeros_of_j0(self):
        np.testing.assert_allclose(
            specfun.jn_zeros(0, 3), [2.404825557695773, 5.520078110286311, 8.653727912911013], rtol=1e-13)

    def test_zeros_of_j_half_are_multiples_of_pi(self):
        np.testing.assert_allclose(specfun.jn_zeros(0.5, 8), np.pi * np.arange(1, 9), rtol=1e-13)

    @ddt.data(0.0, 1.0, 0.25, 7.5)
    def test_zeros_are_roots_and_increasing(self, order):
        zeros = specfun.jn_zeros(order, 20)
        self.assertEqual(len(zeros), 20)
        self.assertTrue(np.all(np.diff(zeros) > 0))
        self.assertLess(np.max(np.abs(special.jv(order, zeros))), 1e-12)

    def test_zeros_interlace(self):
        j0 = specfun.jn_zeros(0, 20)
        j1 = specfun.jn_zeros(1, 20)
        self.assertTrue(np.all(j0 < j1))
        self.assertTrue(np.all(j1[:-1] < j0[1:]))

    @ddt.data(0, -2, 2.5)
    def test_bad_zero_count(self, count):
        with self.assertRaises(DomainError):
            specfun.jn_zeros(0, count)

    @ddt.unpack
    @ddt.data((1, 2.0), (2, 2.0 * np.pi), (3, 4.0 * np.pi))
    def test_unit_sphere_area(self, n, area):
        self.assertAlmostEqual(specfun.unit_sphere_area(n), area, places=13)

    @ddt.unpack
    @ddt.data((1, -0.5), (2, 0.0), (3, 0.5), (2.5, 0.25))
    def test_order_for_dimension(self, n, nu):
        self.assertEqual(specfun.order_for_dimension(n), nu)
