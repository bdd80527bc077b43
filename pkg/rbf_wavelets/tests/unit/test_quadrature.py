"""
Unit tests for the Gauss-Legendre rules and the semi-infinite integrator
"""
import unittest

import ddt
import numpy as np
from scipy import special

from rbf_wavelets import quadrature
from rbf_wavelets.exceptions import DivergenceError, DomainError, IntegrationError


@ddt.ddt
class TestRules(unittest.TestCase):

    @ddt.data(1, 2, 5, 16)
    def test_polynomial_exactness(self, count):
        rule = quadrature.make_gauss_legendre(count, -1.0, 2.0)
        degree = 2 * count - 1
        expected = (2.0 ** (degree + 1) - (-1.0) ** (degree + 1)) / (degree + 1)
        self.assertLess(abs(quadrature.integrate(rule, lambda x: x ** degree) / expected - 1.0), 1e-12)

    def test_composite_rule_covers_the_interval(self):
        rule = quadrature.make_composite_gauss_legendre(8, 0.0, 3.0, 5)
        self.assertEqual(len(rule), 40)
        self.assertAlmostEqual(rule.weights.sum(), 3.0, places=14)
        self.assertTrue(np.all(np.diff(rule.nodes) > 0))
        self.assertEqual(rule.interval, (0.0, 3.0))

    def test_batched_and_complex_integrands(self):
        rule = quadrature.make_gauss_legendre(20, 0.0, 1.0)
        value = quadrature.integrate(rule, lambda x: np.stack([x, np.exp(1j * x)], axis=1))
        self.assertAlmostEqual(value[0], 0.5, places=14)
        self.assertAlmostEqual(abs(value[1] - (np.exp(1j) - 1.0) / 1j), 0.0, places=14)

    def test_scalar_only_integrand(self):
        rule = quadrature.make_gauss_legendre(10, 0.0, np.pi)
        self.assertAlmostEqual(quadrature.integrate(rule, lambda x: float(np.sin(x))), 2.0, places=12)

    @ddt.unpack
    @ddt.data((0, 0.0, 1.0), (3, 1.0, 1.0), (3, 2.0, 1.0), (2.5, 0.0, 1.0))
    def test_invalid_rules(self, count, a, b):
        with self.assertRaises(DomainError):
            quadrature.make_gauss_legendre(count, a, b)

    def test_non_finite_integrand_names_the_node(self):
        rule = quadrature.make_gauss_legendre(4, 0.0, 1.0)
        bad = rule.nodes[2]
        with self.assertRaises(IntegrationError) as context:
            quadrature.integrate(rule, lambda x: np.where(x == bad, np.nan, x))
        self.assertEqual(context.exception.node, bad)


@ddt.ddt
class TestSemiInfinite(unittest.TestCase):

    def test_gaussian(self):
        value = quadrature.integrate_semi_infinite(lambda r: np.exp(-r ** 2), 'gaussian', 1e-13)
        self.assertAlmostEqual(value, np.sqrt(np.pi) / 2.0, places=12)

    def test_gaussian_centered_away_from_origin(self):
        value = quadrature.integrate_semi_infinite(lambda r: np.exp(-(r - 10.0) ** 2), 'gaussian', 1e-10)
        expected = np.sqrt(np.pi) / 2.0 * (1.0 + special.erf(10.0))
        self.assertAlmostEqual(value, expected, places=9)

    def test_zero_integrand(self):
        value = quadrature.integrate_semi_infinite(lambda r: np.zeros_like(r), 'gaussian', 1e-10)
        self.assertEqual(value, 0.0)

    def test_exponential(self):
        value = quadrature.integrate_semi_infinite(lambda r: np.exp(-r), 'exponential', 1e-13)
        self.assertAlmostEqual(value, 1.0, places=12)

    @ddt.data(0, 1)
    def test_oscillatory_bessel(self, order):
        """ int_0^inf J_nu(r) dr = 1 """
        value = quadrature.integrate_semi_infinite(
            lambda r: special.jv(order, r), 'oscillatory-bessel', 1e-10, frequency=1.0, order=order)
        self.assertAlmostEqual(value, 1.0, places=8)

    def test_hankel_pair(self):
        """ int_0^inf r exp(-r^2 / 2) J_0(2 r) dr = exp(-2) """
        value = quadrature.integrate_semi_infinite(
            lambda r: r * np.exp(-r ** 2 / 2.0) * special.j0(2.0 * r), 'oscillatory-bessel', 1e-12,
            frequency=2.0, order=0.0)
        self.assertAlmostEqual(value, np.exp(-2.0), places=10)

    def test_divergence(self):
        with self.assertRaises(DivergenceError) as context:
            quadrature.integrate_semi_infinite(lambda r: np.ones_like(r), 'exponential', 1e-10, max_panels=10)
        self.assertEqual(context.exception.panels, 10)

    def test_unknown_hint(self):
        with self.assertRaises(DomainError):
            quadrature.integrate_semi_infinite(np.exp, 'power-law', 1e-10)

    def test_wynn_accelerates_alternating_series(self):
        partial = np.cumsum([(-1.0) ** k / (k + 1) for k in range(20)])
        self.assertAlmostEqual(quadrature.wynn_epsilon(partial), np.log(2.0), places=10)
        self.assertGreater(abs(partial[-1] - np.log(2.0)), 1e-2)
