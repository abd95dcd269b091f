"""Synthetic benchmark generators and closed-form reference curves."""

import math

import numpy as np
import pytest
from scipy.integrate import quad
from scipy.stats import norm

import prdcurves as pr
from prdcurves.synth import CLUSTER_DIM, _cluster_center


class TestMixtureSampling:
    def test_single_component_mean(self):
        spec = pr.MixtureSpec(np.zeros((1, 1)), np.ones(1), np.ones(1))
        sample = pr.sample_mixture(spec, 10000, seed=0)
        assert abs(sample.features.mean()) <= 0.05

    def test_degenerate_weights_pin_labels(self):
        spec = pr.MixtureSpec(np.zeros((2, 2)), np.ones(2),
                              np.array([1.0, 0.0]))
        sample = pr.sample_mixture(spec, 100, seed=1)
        assert np.all(sample.labels == 0)

    def test_deterministic(self):
        spec = pr.MixtureSpec(np.zeros((2, 3)), np.ones(2),
                              np.array([0.5, 0.5]))
        a = pr.sample_mixture(spec, 50, seed=2)
        b = pr.sample_mixture(spec, 50, seed=2)
        assert np.array_equal(a.features, b.features)
        assert np.array_equal(a.labels, b.labels)

    def test_spec_validation(self):
        with pytest.raises(pr.InputError):
            pr.MixtureSpec(np.zeros((1, 2)), np.zeros(1), np.ones(1))
        with pytest.raises(pr.InputError):
            pr.MixtureSpec(np.zeros((1, 2)), np.ones(1), np.array([0.5]))
        with pytest.raises(pr.InputError):
            pr.sample_mixture(
                pr.MixtureSpec(np.zeros((1, 1)), np.ones(1), np.ones(1)),
                0, seed=0)


class TestClusterGeometry:
    def test_centers_are_ten_sigma_separated(self):
        centers = np.stack([_cluster_center(i, x0)
                            for i in range(20) for x0 in (0.0, 20.0, -20.0)])
        diff = centers[:, None, :] - centers[None, :, :]
        dist = np.sqrt((diff ** 2).sum(axis=2))
        dist[np.arange(len(centers)), np.arange(len(centers))] = np.inf
        assert dist.min() >= 10.0

    def test_dimension(self):
        assert _cluster_center(0, 0.0).shape == (CLUSTER_DIM,)


class TestExperimentSpecs:
    def test_class_subset_caps(self):
        for q, expected in ((3, (1.0, 0.6)), (8, (0.625, 1.0)),
                            (5, (1.0, 1.0))):
            data, spec = pr.class_subset_experiment(q, 10, seed=0)
            assert (spec.max_precision, spec.max_recall) == \
                pytest.approx(expected)
            assert data.n == 50 and data.d == CLUSTER_DIM
        with pytest.raises(pr.InputError):
            pr.class_subset_experiment(0, 10, seed=0)
        with pytest.raises(pr.InputError):
            pr.class_subset_experiment(10, 10, seed=0)

    def test_class_overlap_caps(self):
        for ratio in (0.0, 0.5, 1.0):
            _, spec = pr.class_overlap_experiment(4, ratio, 5, seed=0)
            assert spec.max_precision == ratio
            assert spec.max_recall == ratio
        with pytest.raises(pr.InputError):
            pr.class_overlap_experiment(4, 0.3, 5, seed=0)

    def test_reweighting_caps(self):
        _, spec = pr.reweighting_experiment(0.6, 10, seed=0)
        assert (spec.max_precision, spec.max_recall) == (1.0, 0.6)
        with pytest.raises(pr.InputError):
            pr.reweighting_experiment(1.0, 10, seed=0)

    def test_disjoint_split(self):
        data, spec = pr.disjoint_split_experiment(4, 10, seed=0)
        assert (spec.max_precision, spec.max_recall) == (0.0, 0.0)
        assert data.n == 10
        with pytest.raises(pr.InputError):
            pr.disjoint_split_experiment(3, 10, seed=0)

    def test_experiments_deterministic(self):
        a, _ = pr.class_subset_experiment(3, 5, seed=9)
        b, _ = pr.class_subset_experiment(3, 5, seed=9)
        assert np.array_equal(a.real_features, b.real_features)
        assert np.array_equal(a.fake_features, b.fake_features)


class TestRectangleCurve:
    def test_corner_values(self):
        grid = pr.LambdaGrid(np.array([1.0, 5.0 / 3.0]))
        curve = pr.theoretical_rectangle_curve(
            pr.TheoreticalCurveSpec(1.0, 0.6), grid)
        assert curve.alpha[1] == pytest.approx(1.0)
        assert curve.beta[1] == pytest.approx(0.6)

    def test_identity_spec(self):
        grid = pr.default_lambda_grid(51)
        curve = pr.theoretical_rectangle_curve(
            pr.TheoreticalCurveSpec(1.0, 1.0), grid)
        np.testing.assert_allclose(curve.alpha,
                                   np.minimum(grid.values, 1.0), rtol=1e-12)

    def test_half_spec_at_unity(self):
        grid = pr.LambdaGrid(np.array([1.0]))
        curve = pr.theoretical_rectangle_curve(
            pr.TheoreticalCurveSpec(0.5, 0.5), grid)
        assert (curve.alpha[0], curve.beta[0]) == (0.5, 0.5)

    def test_matches_exact_class_histograms(self):
        # the class-subset construction is, at the class level, uniform-5
        # vs uniform-q histograms; the rectangle must match exactly
        grid = pr.default_lambda_grid(101)
        for q in (1, 3, 5, 8):
            k = max(5, q)
            p = pr.DiscreteDistribution(
                np.concatenate([np.full(5, 0.2), np.zeros(k - 5)]))
            qd = pr.DiscreteDistribution(
                np.concatenate([np.full(q, 1.0 / q), np.zeros(k - q)]))
            _, spec = pr.class_subset_experiment(q, 1, seed=0)
            rect = pr.theoretical_rectangle_curve(spec, grid)
            exact = pr.exact_pr_curve(p, qd, grid)
            np.testing.assert_allclose(rect.alpha, exact.alpha, atol=1e-12)
            np.testing.assert_allclose(rect.beta, exact.beta, atol=1e-12)


class TestGaussianOptimalCurve:
    def test_equal_means_identity_curve(self):
        grid = pr.default_lambda_grid(51)
        curve = pr.gaussian_optimal_curve(0.0, 0.0, 1.0, grid)
        np.testing.assert_allclose(curve.alpha,
                                   np.minimum(grid.values, 1.0), rtol=1e-12)

    def test_ten_sigma_gap_near_zero_overlap(self):
        grid = pr.LambdaGrid(np.array([1.0]))
        curve = pr.gaussian_optimal_curve(0.0, 10.0, 1.0, grid)
        assert curve.alpha[0] <= 1e-5

    def test_two_sigma_gap_closed_form(self):
        grid = pr.LambdaGrid(np.array([1.0]))
        curve = pr.gaussian_optimal_curve(0.0, 2.0, 1.0, grid)
        assert curve.alpha[0] == pytest.approx(2 * norm.cdf(-1.0), rel=1e-12)

    def test_mean_order_invariance(self):
        grid = pr.default_lambda_grid(21)
        a = pr.gaussian_optimal_curve(-1.0, 2.0, 1.5, grid)
        b = pr.gaussian_optimal_curve(2.0, -1.0, 1.5, grid)
        np.testing.assert_allclose(a.alpha, b.alpha, rtol=1e-12)

    def test_monotone_and_bounded(self):
        grid = pr.default_lambda_grid(101)
        for gap in (0.3, 1.0, 3.0):
            curve = pr.gaussian_optimal_curve(0.0, gap, 1.0, grid)
            assert np.all(np.diff(curve.alpha) >= -1e-12)
            assert np.all(np.diff(curve.beta) <= 1e-12)
            assert np.all(curve.alpha <= np.minimum(grid.values, 1.0) + 1e-12)

    def test_matches_adaptive_quadrature(self):
        grid = pr.LambdaGrid(np.array([0.25, 1.0, 4.0]))
        for gap in (0.5, 1.0):
            curve = pr.gaussian_optimal_curve(0.0, gap, 1.0, grid)
            for lam, alpha in zip(grid.values, curve.alpha):
                integral, _ = quad(
                    lambda z: min(lam * norm.pdf(z), norm.pdf(z - gap)),
                    -30, 30, limit=200)
                assert alpha == pytest.approx(integral, abs=1e-6)

    def test_rejects_bad_sigma(self):
        with pytest.raises(pr.InputError):
            pr.gaussian_optimal_curve(0.0, 1.0, 0.0,
                                      pr.default_lambda_grid(3))
