"""
Unit tests for the discrete Bessel transform
"""
import unittest

import ddt
import numpy as np
from scipy import special

from rbf_wavelets import kernels, series, specfun
from rbf_wavelets.exceptions import DomainError, FitError


def parabola(r):
    return 1.0 - np.asarray(r) ** 2


def bump(points):
    return np.exp(-np.sum(points ** 2, axis=1))


@ddt.ddt
class TestAnalyze(unittest.TestCase):
    """ Orthogonal and closed-form coefficients of a single-center series """

    @ddt.unpack
    @ddt.data((1, 0.5), (2, 0.0), (3, 0.5), (4, 1.0))
    def test_zero_order(self, n, order):
        self.assertEqual(series.zero_order(n), order)

    def test_parabola_coefficients(self):
        """ 1 - r^2 on the unit disk expands with c_j = 8 / (lam_j^3 J1(lam_j)) """
        result = series.analyze(parabola, 2, 1.0, 10)
        zeros = specfun.jn_zeros(0, 10)
        expected = 8.0 / (zeros ** 3 * special.j1(zeros))
        np.testing.assert_allclose(result.coeffs[0], expected, rtol=1e-9)
        self.assertEqual(result.alpha0, 0.0)
        self.assertEqual(result.terms, 10)

    @ddt.data(0, 2, 6)
    def test_basis_function_analyzes_to_unit_vector(self, index):
        zeros = specfun.jn_zeros(0, 8)
        spec = kernels.HelmholtzKernelSpec(2, zeros[index], 1.0)
        result = series.analyze(lambda r: kernels.helmholtz_kernel(spec, r), 2, 1.0, 8)
        np.testing.assert_allclose(result.coeffs[0], np.eye(8)[index], atol=1e-10)

    def test_reconstruction_of_parabola(self):
        result = series.analyze(parabola, 2, 1.0, 50)
        self.assertLess(series.reconstruction_error(result, parabola, 'Linf'), 1e-3)

    def test_weighted_error_does_not_grow_with_terms(self):
        errors = [series.reconstruction_error(series.analyze(parabola, 2, 1.0, terms), parabola, 'L2')
                  for terms in (5, 10, 20, 50)]
        for before, after in zip(errors, errors[1:]):
            self.assertLessEqual(after, before)

    def test_larger_radius(self):
        result = series.analyze(lambda r: np.exp(-np.asarray(r) ** 2), 3, 5.0, 40)
        r = np.array([0.0, 0.5, 1.2])
        np.testing.assert_allclose(series.synthesize(result, r), np.exp(-r ** 2), atol=1e-6)

    def test_one_dimensional_sine_basis(self):
        """ n = 1 expands in sin(lam_j r / R) with lam_j = j pi """
        result = series.analyze(lambda r: np.sin(2.0 * np.pi * np.asarray(r)), 1, 1.0, 4)
        self.assertAlmostEqual(result.coeffs[0, 1] * series.basis_matrix(1, result.zeros, 1.0, [0.25])[0, 1], 1.0,
                               places=9)

    @ddt.data(5, 10, 20)
    def test_truncated_synthesis_norm_is_bounded(self, terms):
        """ The truncated series is a projection: its weighted norm never exceeds that of f """
        result = series.analyze(parabola, 2, 1.0, terms)
        synthesized = series.weighted_l2_norm(lambda r: series.synthesize(result, r), 2, 1.0)
        self.assertLessEqual(synthesized, series.weighted_l2_norm(parabola, 2, 1.0) + 1e-8)

    def test_closed_form_mode_mean_value(self):
        result = series.analyze(parabola, 2, 1.0, 10, mode='paper-faithful')
        self.assertAlmostEqual(result.alpha0, 0.5, places=12)
        self.assertEqual(result.mode, 'paper-faithful')

    @ddt.unpack
    @ddt.data(
        ({'n': 1, 'R': 1.0, 'terms': 5, 'mode': 'paper-faithful'},),
        ({'n': 2, 'R': 1.0, 'terms': 0},),
        ({'n': 2, 'R': 1.0, 'terms': 2.5},),
        ({'n': 2, 'R': -1.0, 'terms': 5},),
        ({'n': 2, 'R': 1.0, 'terms': 5, 'mode': 'least-squares'},),
    )
    def test_invalid_arguments(self, arguments):
        with self.assertRaises(DomainError):
            series.analyze(parabola, **arguments)


@ddt.ddt
class TestSeriesObjects(unittest.TestCase):

    def test_zeros_must_be_bessel_zeros(self):
        with self.assertRaises(DomainError):
            series.BesselSeries(n=2, R=1.0, centers=[[0.0]], zeros=[1.0, 2.0], alpha0=0.0,
                                coeffs=[[1.0, 1.0]], mode='orthogonal')

    def test_orthogonal_series_has_no_constant(self):
        with self.assertRaises(DomainError):
            series.BesselSeries(n=2, R=1.0, centers=[[0.0]], zeros=specfun.jn_zeros(0, 2), alpha0=1.0,
                                coeffs=[[1.0, 1.0]], mode='orthogonal')

    def test_radial_samples_interpolate(self):
        samples = series.RadialSamples([0.0, 1.0, 2.0], [1.0, 3.0, 5.0])
        np.testing.assert_allclose(samples([0.5, 1.5, 2.0, 2.5]), [2.0, 4.0, 5.0, 0.0])

    @ddt.unpack
    @ddt.data(
        ([0.0, 1.0, 1.0], [1.0, 2.0, 3.0], None),
        ([-0.5, 1.0], [1.0, 2.0], None),
        ([0.0, 1.0], [1.0], None),
        ([0.0, 2.0], [1.0, 2.0], 1.0),
        ([0.0, 1.0], [1.0, np.nan], None),
    )
    def test_invalid_radial_samples(self, radii, values, R):
        with self.assertRaises(DomainError):
            series.RadialSamples(radii, values, R)


@ddt.ddt
class TestFitMulticenter(unittest.TestCase):

    centers = [[0.0, 0.0], [0.5, 0.0]]

    @ddt.data('quadrature', 'random')
    def test_same_seed_same_coefficients(self, design):
        first = series.fit_multicenter(bump, self.centers, 2, 1.0, 5, seed=3, design=design)
        second = series.fit_multicenter(bump, self.centers, 2, 1.0, 5, seed=3, design=design)
        np.testing.assert_array_equal(first.coeffs, second.coeffs)
        self.assertEqual(first.alpha0, second.alpha0)
        self.assertEqual(first.mode, 'least-squares')

    def test_single_center_matches_orthogonal_analysis(self):
        result = series.fit_multicenter(lambda points: 1.0 - np.sum(points ** 2, axis=1), [[0.0, 0.0]], 2, 1.0, 5,
                                        include_constant=False)
        expected = series.analyze(parabola, 2, 1.0, 5)
        np.testing.assert_allclose(result.coeffs[0], expected.coeffs[0], atol=1e-6)
        self.assertEqual(result.alpha0, 0.0)

    def test_known_two_center_series_is_recovered(self):
        known = series.BesselSeries(
            n=2, R=1.0, centers=[[0.0, 0.0], [0.4, 0.0]], zeros=specfun.jn_zeros(0, 3), alpha0=0.0,
            coeffs=[[1.0, -0.5, 0.25], [0.3, 0.2, -0.1]], mode='least-squares',
        )
        result = series.fit_multicenter(lambda points: series.synthesize(known, points), known.centers, 2, 1.0, 3)
        np.testing.assert_allclose(result.coeffs, known.coeffs, atol=1e-6)
        self.assertAlmostEqual(result.alpha0, 0.0, places=6)

    @ddt.data('quadrature', 'random')
    def test_zero_function(self, design):
        result = series.fit_multicenter(lambda points: np.zeros(len(points)), self.centers, 2, 1.0, 4, design=design)
        np.testing.assert_array_equal(result.coeffs, 0.0)
        self.assertEqual(result.alpha0, 0.0)

    def test_unknown_design(self):
        with self.assertRaises(DomainError):
            series.fit_multicenter(bump, self.centers, 2, 1.0, 5, design='grid')

    def test_constant_is_reproduced(self):
        result = series.fit_multicenter(lambda points: np.full(len(points), 3.0), self.centers, 2, 1.0, 5, seed=1)
        points = np.array([[0.25, 0.0], [0.5, 0.5], [-0.3, -0.2]])
        np.testing.assert_allclose(series.synthesize(result, points), 3.0, atol=1e-6)
        self.assertEqual(result.coeffs.shape, (2, 5))
        self.assertGreater(result.condition_estimate, 1.0)

    def test_too_few_samples(self):
        with self.assertRaises(FitError):
            series.fit_multicenter(lambda points: np.zeros(len(points)), self.centers, 2, 1.0, 5, samples=5)

    def test_sample_ball_stays_inside(self):
        points = series.sample_ball([1.0, -1.0, 0.5], 0.5, 300, np.random.default_rng(0))
        self.assertEqual(points.shape, (300, 3))
        self.assertTrue(np.all(np.linalg.norm(points - [1.0, -1.0, 0.5], axis=1) <= 0.5))
