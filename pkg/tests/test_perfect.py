import numpy as np
import pytest

from dequant_lab.fourier import FrequencySet
from dequant_lab.numeric import SeededRng
from dequant_lab.perfect import (
    DEFAULT_SIGMA_CONSTANT, PerfectFunctionSpec, SampledPerfectFunction, SweepRow,
    check_norm_property, check_variance_property, default_sigma_constant, empirical_sup,
    sample_perfect_function, sigma_sweep, single_frequency_amplitude,
)


@pytest.fixture(scope="module")
def spec():
    return PerfectFunctionSpec.random(2, 8, 32, SeededRng(0))


def test_sigma_formula(spec):
    assert spec.p == 64
    assert spec.sigma == pytest.approx(DEFAULT_SIGMA_CONSTANT / (2 * (np.log(2) + np.log(8))))


def test_spec_validation():
    with pytest.raises(ValueError):
        PerfectFunctionSpec(FrequencySet.half_lattice(1, 3), 3)
    with pytest.raises(ValueError):
        PerfectFunctionSpec(FrequencySet.from_integers([[9, 0]]), 8)


def test_coefficients_in_range(spec):
    f = sample_perfect_function(spec, 1)
    assert np.all(np.abs(f.beta) <= spec.sigma)
    assert abs(f.beta.mean()) < 4 * spec.sigma / np.sqrt(spec.p)
    assert f.norm_sq == pytest.approx(np.linalg.norm(f.beta) ** 2, rel=1e-14)


def test_zero_sigma(spec):
    zero = PerfectFunctionSpec(spec.frequencies, spec.L, 0.0)
    f = sample_perfect_function(zero, 0)
    assert np.all(f(np.random.default_rng(0).uniform(0, 6, (10, 2))) == 0)
    assert check_norm_property(f, 0.01).passed
    v = check_variance_property(f, 0.01, 10_000, 0)
    assert v.var_estimate == 0 and v.threshold <= 0 and v.passed
    assert empirical_sup(f, scatter=1000) == 0


def test_mean_norm(spec):
    norms = np.array([sample_perfect_function(spec, SeededRng(2).child(t)).norm_sq for t in range(5000)])
    se = norms.std(ddof=1) / np.sqrt(len(norms))
    assert abs(norms.mean() - 2 / 3 * spec.n_freq * spec.sigma**2) < 3 * se


def test_variance_identity(spec):
    f = sample_perfect_function(spec, 3)
    v = check_variance_property(f, 0.01, 50_000, 4)
    assert abs(v.identity_z) < 4
    with pytest.raises(ValueError):
        check_variance_property(f, 0.01, 100, 4)


def test_single_frequency_sup():
    spec = PerfectFunctionSpec(FrequencySet.from_integers([[1, 2], [2, -1]]), 8, 1.0)
    beta = np.array([0.3, -0.4, 0.0, 0.0])
    f = SampledPerfectFunction(spec, beta)
    exact = single_frequency_amplitude(f)
    assert exact == pytest.approx(0.5 / np.sqrt(2))
    assert empirical_sup(f, scatter=5000) == pytest.approx(exact, rel=1e-6)


def test_sweep_monotone_and_default(spec):
    rows = sigma_sweep(spec, [0.0, 1.0, 2.0, 4.0], 6, SeededRng(5), scatter=2000)
    assert rows[0].mean_sup == 0
    fr = [r.fraction_bounded for r in rows]
    assert fr == sorted(fr, reverse=True)
    assert default_sigma_constant([SweepRow(1, 0, 0, 1.0), SweepRow(2, 0, 0, 0.995), SweepRow(3, 0, 0, 0.5)]) == 2
    with pytest.raises(ValueError):
        default_sigma_constant([SweepRow(1, 0, 0, 0.5)])
