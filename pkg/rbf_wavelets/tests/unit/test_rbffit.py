"""
Unit tests for classic RBF fitting, convergence studies and ridgelet parameter recognition
"""
import unittest

import ddt
import numpy as np

from rbf_wavelets import checks, kernels, rbffit
from rbf_wavelets.exceptions import DomainError, FitError


def sine(x):
    return np.sin(np.pi * np.asarray(x))


def line_samples(count, target=sine):
    points = np.linspace(-1.0, 1.0, count).reshape(-1, 1)
    return points, target(points[:, 0])


@ddt.ddt
class TestFit(unittest.TestCase):

    @ddt.data('MQ', 'Gaussian')
    def test_square_system_reproduces_samples(self, kind):
        points, values = line_samples(10)
        result = rbffit.fit([kernels.ClassicRbfSpec(kind, 0.5)], points, (points, values))
        np.testing.assert_allclose(rbffit.evaluate_fit(result, points), values, atol=1e-8)
        self.assertEqual(len(result.poly_coeffs), 0)
        self.assertLess(result.residual_norm, 1e-8)

    @ddt.data(1, 2)
    def test_polynomial_block(self, dim):
        rng = np.random.default_rng(dim)
        centers = rng.uniform(-1.0, 1.0, size=(12, dim))
        values = np.cos(centers.sum(axis=1))
        result = rbffit.fit([kernels.ClassicRbfSpec('MQ', 0.5)], centers, (centers, values), with_poly=True)
        self.assertEqual(len(result.poly_coeffs), dim + 1)
        np.testing.assert_allclose(rbffit.evaluate_fit(result, centers), values, atol=1e-8)
        # moments of the coefficients vanish
        np.testing.assert_allclose(rbffit.poly_matrix(centers).T.dot(result.coeffs), 0.0, atol=1e-8)

    def test_pairs_of_samples(self):
        points, values = line_samples(6)
        pairs = [(point, value) for point, value in zip(points[:, 0], values)]
        result = rbffit.fit([kernels.ClassicRbfSpec('MQ', 0.5)], points, pairs)
        self.assertAlmostEqual(rbffit.evaluate_fit(result, points[2, 0]), values[2], places=8)

    def test_scale_major_columns(self):
        specs = [kernels.ClassicRbfSpec('MQ', 0.5), kernels.ClassicRbfSpec('MQ', 1.0)]
        centers = np.array([[0.0], [1.0], [2.0]])
        matrix = rbffit.kernel_matrix(specs, centers, [[0.5], [3.0]])
        self.assertEqual(matrix.shape, (2, 6))
        self.assertAlmostEqual(matrix[0, 4], np.sqrt(0.25 + 1.0))
        self.assertAlmostEqual(matrix[1, 2], np.sqrt(1.0 + 0.25))

    def test_stored_residual_matches_evaluation(self):
        points, values = line_samples(30)
        centers = np.linspace(-1.0, 1.0, 7).reshape(-1, 1)
        specs = [kernels.ClassicRbfSpec('MQ', 0.4), kernels.ClassicRbfSpec('Gaussian', 0.8)]
        result = rbffit.fit(specs, centers, (points, values))
        self.assertEqual(len(result.coeffs), 14)
        residual = np.linalg.norm(rbffit.evaluate_fit(result, points) - values)
        self.assertAlmostEqual(result.residual_norm, residual, delta=1e-12)

    @ddt.data(0, 1, 2, 3, 4)
    def test_polynomial_block_never_increases_residual(self, seed):
        rng = np.random.default_rng(seed)
        weights = rng.normal(size=3)

        def target(x):
            return weights[0] * np.sin(2.0 * x) + weights[1] * x ** 2 + weights[2] * np.exp(x)

        points, values = line_samples(30, target)
        centers = np.linspace(-1.0, 1.0, 6).reshape(-1, 1)
        specs = [kernels.ClassicRbfSpec('MQ', 0.5)]
        plain = rbffit.fit(specs, centers, (points, values), ridge=1e-14)
        nested = rbffit.fit(specs, centers, (points, values), with_poly=True, ridge=1e-14)
        self.assertLessEqual(nested.residual_norm, plain.residual_norm + 1e-6)

    def test_duplicate_centers_are_singular(self):
        centers = np.array([[0.0], [0.5], [0.5], [1.0]])
        with self.assertRaises(FitError) as context:
            rbffit.fit([kernels.ClassicRbfSpec('Gaussian', 0.5)], centers, (centers, np.ones(4)))
        self.assertIsNotNone(context.exception.condition_estimate)

    def test_too_few_samples(self):
        centers = np.linspace(0.0, 1.0, 4).reshape(-1, 1)
        specs = [kernels.ClassicRbfSpec('MQ', 0.5), kernels.ClassicRbfSpec('MQ', 1.0)]
        with self.assertRaises(FitError):
            rbffit.fit(specs, centers, line_samples(5))

    def test_needs_a_scale(self):
        with self.assertRaises(DomainError):
            rbffit.fit([], [[0.0]], ([[0.0]], [1.0]))

    def test_result_shape_invariant(self):
        with self.assertRaises(DomainError):
            rbffit.FitResult(kernel=(kernels.ClassicRbfSpec('MQ', 1.0),), centers=np.zeros((2, 1)),
                             coeffs=np.zeros(3), poly_coeffs=np.zeros(0), residual_norm=0.0, condition_estimate=1.0)

    def test_known_coefficients_are_recovered(self):
        specs = [kernels.ClassicRbfSpec('MQ', 1.0)]
        centers = np.linspace(-1.0, 1.0, 10).reshape(-1, 1)
        known = np.array([0.5, -1.0, 0.25, 2.0, -0.75, 1.0, 0.0, -1.5, 0.5, 1.25])
        values = rbffit.kernel_matrix(specs, centers, centers).dot(known)
        result = rbffit.fit(specs, centers, (centers, values))
        np.testing.assert_allclose(result.coeffs, known, atol=1e-8)

    def test_single_center_unit_coefficient(self):
        spec = kernels.ClassicRbfSpec('MQ', 0.7)
        result = rbffit.fit([spec], [[0.3]], ([[0.3]], [kernels.classic_rbf(spec, 0.0)]))
        np.testing.assert_allclose(result.coeffs, [1.0], rtol=1e-14)

    @ddt.data(False, True)
    def test_zero_samples_give_zero_coefficients(self, with_poly):
        points, values = line_samples(8, target=np.zeros_like)
        result = rbffit.fit([kernels.ClassicRbfSpec('MQ', 0.5)], points, (points, values), with_poly=with_poly)
        np.testing.assert_array_equal(result.coeffs, 0.0)
        np.testing.assert_array_equal(result.poly_coeffs, 0.0)
        self.assertEqual(rbffit.evaluate_fit(result, 0.3), 0.0)

    def test_sine_between_nodes(self):
        points, values = line_samples(20)
        result = rbffit.fit([kernels.ClassicRbfSpec('MQ', 0.5)], points, (points, values))
        self.assertAlmostEqual(rbffit.evaluate_fit(result, 0.25), np.sin(0.25 * np.pi), delta=1e-3)


@ddt.ddt
class TestConvergenceStudy(unittest.TestCase):

    @ddt.data('MQ', 'PreWaveletTPS')
    def test_error_decreases(self, kind):
        rows = rbffit.convergence_study(sine, kind, 0.25, [8, 16, 32])
        self.assertEqual([row.N for row in rows], [8, 16, 32])
        errors = [row.error for row in rows]
        self.assertTrue(all(after < before for before, after in zip(errors, errors[1:])), errors)
        self.assertTrue(all(row.failure is None for row in rows))

    def test_scale_rule_may_be_a_function(self):
        rows = rbffit.convergence_study(sine, 'MQ', lambda N: 2.0 / N, [8, 16])
        self.assertEqual(len(rows), 2)
        self.assertTrue(all(np.isfinite(row.condition_estimate) for row in rows))

    def test_zero_target(self):
        rows = rbffit.convergence_study(np.zeros_like, 'MQ', 0.25, [8, 16, 32])
        self.assertTrue(all(row.error < 1e-12 for row in rows))

    def test_counts_must_increase(self):
        with self.assertRaises(DomainError):
            rbffit.convergence_study(sine, 'MQ', 0.5, [16, 8])


class TestRidgeletFit(unittest.TestCase):

    truth = kernels.ConvDiffSpec(2, (2.0, 0.0), 1.0, 3.0)

    def test_weights_at_known_parameters(self):
        samples = checks.ridgelet_samples(self.truth)
        result = rbffit.ridgelet_fit(samples, checks.RIDGELET_CENTERS, (1.0, (2.0, 0.0), 3.0))
        np.testing.assert_allclose(result.weights, checks.RIDGELET_WEIGHTS, atol=1e-6)
        self.assertEqual(result.iterations, 0)
        self.assertTrue(result.converged)
        self.assertAlmostEqual(result.mu, 2.0, places=12)

    def test_zero_data(self):
        points = np.random.default_rng(0).uniform(-1.0, 1.0, size=(20, 2))
        result = rbffit.ridgelet_fit((points, np.zeros(20)), checks.RIDGELET_CENTERS, (1.0, (1.0, 0.0), 1.0),
                                     fit_params=True)
        np.testing.assert_array_equal(result.weights, np.zeros(3))
        self.assertEqual(result.loss, 0.0)
        self.assertTrue(result.converged)

    def test_recovers_mu_from_perturbed_start(self):
        for k, mu in ((3.0, 2.0), (1.0, np.sqrt(2.0))):
            truth = kernels.ConvDiffSpec(2, (2.0, 0.0), 1.0, k)
            samples = checks.ridgelet_samples(truth)
            result = rbffit.ridgelet_fit(samples, checks.RIDGELET_CENTERS, (1.1, (2.2, 0.0), 1.1 * k), fit_params=True)
            self.assertLess(abs(result.mu - mu) / mu, 0.05)
            self.assertTrue(all(after <= before for before, after in zip(result.loss_history,
                                                                         result.loss_history[1:])))
            self.assertGreater(result.D, 0.0)
            self.assertGreaterEqual(result.k, 0.0)

    def test_invalid_initial_parameters(self):
        samples = checks.ridgelet_samples(self.truth)
        with self.assertRaises(DomainError):
            rbffit.ridgelet_fit(samples, checks.RIDGELET_CENTERS, (-1.0, (2.0, 0.0), 3.0))
