import numpy as np
import pytest

from dequant_lab.fourier import Dataset, FeatureMap, FrequencySet, LinearModel, sample_uniform_inputs
from dequant_lab.numeric import SeededRng
from dequant_lab.rff import (
    SamplingDistribution, error_radius, loglog_slope, mc_estimator, mnls_rff_bound,
    refit_estimator, rff_error_curve, sample_feature_indices,
)


@pytest.fixture
def fm():
    return FeatureMap(FrequencySet.half_lattice(1, 10))  # p = 20


def test_sampling_distribution_validation():
    with pytest.raises(ValueError):
        SamplingDistribution(np.array([0.5, 0.6]))
    q = SamplingDistribution.leverage([1.0, -3.0])
    np.testing.assert_allclose(q.q, [0.25, 0.75])


def test_point_mass_recovers_single_feature(fm):
    beta = np.zeros(fm.p)
    beta[4] = 2.0
    q = SamplingDistribution.point_mass(fm.p, 4)
    est = mc_estimator(fm, beta, q, sample_feature_indices(q, 7, 0))
    np.testing.assert_allclose(est.feature_weights(), beta, atol=1e-14)


def test_mc_estimator_is_unbiased(fm):
    beta = SeededRng(0).generator().standard_normal(fm.p)
    q = SamplingDistribution.uniform(fm.p)
    W = np.array([mc_estimator(fm, beta, q, sample_feature_indices(q, 8, SeededRng(1).child(t))).feature_weights()
                  for t in range(3000)])
    se = W.std(0) / np.sqrt(len(W))
    assert np.all(np.abs(W.mean(0) - beta) < 5 * se + 1e-12)


def test_zero_probability_draw_rejected(fm):
    q = SamplingDistribution.point_mass(fm.p, 0)
    with pytest.raises(ValueError):
        mc_estimator(fm, np.ones(fm.p), q, np.array([1]))


def test_error_radius_formula(fm):
    beta = np.ones(fm.p)
    q = SamplingDistribution.uniform(fm.p)
    R = 1.0 * fm.feature_norms_mu()[0] * fm.p
    expect = R / 4.0 * (1 + np.sqrt(2 * np.log(20.0)))
    assert error_radius(fm, beta, q, 16, 0.05) == pytest.approx(expect)
    assert error_radius(fm, np.zeros(fm.p), q, 16) == 0.0


def test_refit_interpolates_with_enough_columns(fm):
    beta = SeededRng(2).generator().standard_normal(fm.p)
    X = sample_uniform_inputs(6, 1, 3)
    ds = Dataset.from_function(LinearModel(fm, beta), X)
    est = refit_estimator(fm, np.arange(fm.p), ds, ridge=0.0)
    np.testing.assert_allclose(est(ds.inputs), ds.targets, atol=1e-10)


def test_error_curve_slope_small(fm):
    beta = SeededRng(3).generator().standard_normal(fm.p)
    rows = rff_error_curve(fm, beta, SamplingDistribution.uniform(fm.p), [16, 64, 256],
                           trials=20, n_mc=1000, rng=SeededRng(4))
    slope = loglog_slope([r.D for r in rows], [r.mean_error for r in rows])
    assert -0.65 < slope < -0.35
    assert all(r.violation_rate <= 0.1 for r in rows)


def test_loglog_slope_exact():
    assert loglog_slope([1, 10, 100], [1, 0.1, 0.01]) == pytest.approx(-1.0)


def test_mnls_rff_bound():
    assert mnls_rff_bound(np.eye(3) * 0.5, 3, 4, 0.2) == pytest.approx(3 * 0.2 / (2 * 0.5))
    with pytest.raises(np.linalg.LinAlgError):
        mnls_rff_bound(np.zeros((2, 2)), 2, 4, 1.0)
