"""
Unit tests for the continuous B, K and time-space transforms
"""
import unittest

import ddt
import numpy as np

from rbf_wavelets import kernels, transforms
from rbf_wavelets.exceptions import DomainError

RADII = np.array([0.0, 0.5, 1.0, 2.0, 3.0])


def gaussian(r):
    return np.exp(-np.asarray(r) ** 2 / 2.0)


def narrow_gaussian(r):
    return np.exp(-np.asarray(r) ** 2)


def narrow_gaussian_laplacian(r):
    r = np.asarray(r)
    return (4.0 * r ** 2 - 4.0) * np.exp(-r ** 2)


def separable_field(r, t):
    return np.exp(-t) * np.exp(-r ** 2 / 2.0)


@ddt.ddt
class TestBTransform(unittest.TestCase):

    @ddt.data('gaussian', 'oscillatory-bessel')
    def test_gaussian_is_self_reciprocal_in_the_plane(self, decay):
        lams = np.array([0.5, 1.0, 2.0, 4.0])
        spectrum = transforms.b_forward(gaussian, 2, lams, decay=decay)
        np.testing.assert_allclose(spectrum.values, np.exp(-lams ** 2 / 2.0), atol=1e-7)
        self.assertEqual(spectrum.kind, 'B')
        self.assertEqual(spectrum.order, 0.0)
        self.assertIsNone(spectrum.weights)

    def test_three_dimensional_closed_form(self):
        lams = np.array([0.5, 1.0, 3.0])
        spectrum = transforms.b_forward(gaussian, 3, lams, decay='gaussian')
        expected = np.sqrt(np.pi / 2.0) * lams * np.exp(-lams ** 2 / 2.0) / np.pi
        np.testing.assert_allclose(spectrum.values, expected, atol=1e-8)
        self.assertEqual(spectrum.n, 3.0)

    @ddt.unpack
    @ddt.data((2, 1.0, 1.0), (3, 0.0, 1.0 / (2.0 * np.pi)))
    def test_calibration_constants(self, n, m, C):
        cal = transforms.calibrate(n)
        self.assertEqual(cal.m, m)
        self.assertAlmostEqual(cal.C_phi, C, places=15)
        self.assertLessEqual(cal.discrepancy, transforms.CALIBRATION_TOLERANCE)

    def test_k_calibration(self):
        cal = transforms.calibrate(2, 'K')
        self.assertEqual(cal.kind, 'K')
        self.assertAlmostEqual(cal.C, 1.0 / 8.0, places=15)

    @ddt.unpack
    @ddt.data((1, 'B'), (2, 'X'))
    def test_calibration_domain(self, n, kind):
        with self.assertRaises(DomainError):
            transforms.calibrate(n, kind)

    @ddt.data(2, 3)
    def test_round_trip(self, n):
        grid = transforms.spectral_grid(lambda_max=12.0, panels=12)
        spectrum = transforms.b_forward(gaussian, n, grid, decay='gaussian')
        samples = transforms.b_inverse(spectrum, transforms.calibrate(n), RADII)
        np.testing.assert_allclose(samples.values, gaussian(RADII), atol=1e-5)

    def test_round_trip_through_spline(self):
        """ Spectra on a plain grid carry no weights and are integrated through a spline """
        lams = np.linspace(0.025, 12.0, 480)
        spectrum = transforms.b_forward(gaussian, 2, lams, decay='gaussian')
        radii = np.array([0.0, 0.5, 1.0])
        samples = transforms.b_inverse(spectrum, transforms.calibrate(2), radii)
        np.testing.assert_allclose(samples.values, gaussian(radii), atol=1e-4)

    def test_inverse_needs_a_b_spectrum(self):
        spectrum = transforms.Spectrum(lambdas=[1.0], values=[1.0 + 0j], order=0.0, kind='K')
        with self.assertRaises(DomainError):
            transforms.b_inverse(spectrum, transforms.calibrate(2), RADII)

    @ddt.unpack
    @ddt.data(
        ([0.0, 1.0], [1.0, 1.0], 'B'),
        ([2.0, 1.0], [1.0, 1.0], 'B'),
        ([1.0, 2.0], [1.0], 'B'),
        ([1.0, 2.0], [1.0, np.inf], 'B'),
        ([1.0, 2.0], [1.0, 1.0], 'Hankel'),
    )
    def test_invalid_spectra(self, lambdas, values, kind):
        with self.assertRaises(DomainError):
            transforms.Spectrum(lambdas=lambdas, values=values, order=0.0, kind=kind)


class TestKTransform(unittest.TestCase):

    def test_imaginary_part_is_a_quarter_of_b(self):
        lams = np.array([0.5, 1.0, 2.0])
        b = transforms.b_forward(gaussian, 2, lams, decay='gaussian').values
        k = transforms.k_forward(gaussian, 2, lams, decay='gaussian')
        np.testing.assert_allclose(k.values.imag, -b / 4.0, atol=1e-9)
        self.assertEqual(k.kind, 'K')

    def test_needs_two_dimensions(self):
        with self.assertRaises(DomainError):
            transforms.k_forward(gaussian, 1, [1.0])

    def test_round_trip(self):
        grid = transforms.spectral_grid(lambda_max=12.0, panels=12)
        spectrum = transforms.k_forward(gaussian, 2, grid, decay='gaussian')
        samples = transforms.k_inverse(spectrum, transforms.calibrate(2, 'K'), RADII)
        np.testing.assert_allclose(samples.values.real, gaussian(RADII), atol=1e-4)
        self.assertLess(np.max(np.abs(samples.values.imag)), 1e-4)

    def test_inverse_needs_a_k_spectrum(self):
        spectrum = transforms.Spectrum(lambdas=[1.0], values=[1.0], order=0.0, kind='B')
        with self.assertRaises(DomainError):
            transforms.k_inverse(spectrum, transforms.calibrate(2, 'K'), RADII)


class TestEigenrelation(unittest.TestCase):

    def test_analytic_laplacian(self):
        results = transforms.eigen_check(narrow_gaussian, 2, [0.5, 1.0, 2.0], laplacian=narrow_gaussian_laplacian)
        self.assertEqual([result.lam for result in results], [0.5, 1.0, 2.0])
        for result in results:
            self.assertLess(result.b_residual, 1e-6)
            self.assertLess(result.k_corrected, 1e-4)
            self.assertEqual(result.k_sign, -1)

    def test_finite_difference_laplacian_without_k(self):
        results = transforms.eigen_check(narrow_gaussian, 3, [1.0], include_k=False)
        self.assertLess(results[0].b_residual, 1e-6)
        self.assertIsNone(results[0].k_printed)


@ddt.ddt
class TestTimeSpace(unittest.TestCase):

    @ddt.unpack
    @ddt.data((1.0, 1.0, 2.0), (0.5, 2.0, 0.3), (2.0, 0.5, 10.0))
    def test_propagator_closed_form(self, a, lam, t):
        expected = 1.0 - np.exp(-(a * lam) ** 2 * t)
        self.assertAlmostEqual(transforms.propagator_integral(a, lam, t), expected, places=12)

    def test_propagator_before_and_long_after(self):
        self.assertEqual(transforms.propagator_integral(1.0, 1.0, -1.0), 0.0)
        self.assertAlmostEqual(transforms.propagator_integral(1.0, 1.0, 1e9), 1.0, places=12)
        lams = np.array([0.5, 1.0, 2.0])
        np.testing.assert_allclose(transforms.propagator_integral(1.0, lams, 1.0), 1.0 - np.exp(-lams ** 2),
                                   atol=1e-12)

    def test_forward_of_separable_field(self):
        lams = np.array([0.5, 1.0, 2.0])
        spec = kernels.TimeSpaceDiffusionSpec(2, 1.0, 1.0)
        spectrum = transforms.ts_forward(separable_field, 2, lams, spec)
        np.testing.assert_allclose(spectrum.values, np.exp(-lams ** 2 / 2.0), atol=1e-6)
        self.assertEqual(spectrum.kind, 'TS-diffusion')

    def test_forward_dimension_must_match(self):
        with self.assertRaises(DomainError):
            transforms.ts_forward(separable_field, 3, [1.0], kernels.TimeSpaceDiffusionSpec(2, 1.0, 1.0))

    def test_inverse_settles_to_b_inverse(self):
        grid = transforms.spectral_grid(lambda_max=12.0, panels=12)
        spectrum = transforms.b_forward(gaussian, 2, grid, decay='gaussian')
        cal = transforms.calibrate(2)
        spec = kernels.TimeSpaceDiffusionSpec(2, 1.0, 1.0)
        field = transforms.ts_inverse(spectrum, spec, cal, RADII, [0.0, 1e9])
        self.assertEqual(field.values.shape, (2, len(RADII)))
        np.testing.assert_allclose(field.values[0], 0.0, atol=1e-15)
        np.testing.assert_allclose(field.values[1], transforms.b_inverse(spectrum, cal, RADII).values, atol=1e-6)
