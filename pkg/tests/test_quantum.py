import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from dequant_lab.fourier import LinearModel
from dequant_lab.numeric import SeededRng, haar_unitary
from dequant_lab.quantum import (
    DiagonalEncoding, GolombRuler, Observable, approx_design_norm_bound,
    beta_norm_sq, beta_norm_variance_prediction, coeffs_to_beta, default_observable,
    eval_reuploading_model, eval_simple_model, expected_beta_norm_reuploading,
    expected_beta_norm_reuploading_exact, expected_beta_norm_simple, fft_coeffs_oracle,
    golomb_encoding, greedy_golomb_ruler, monte_carlo_norm_stats, random_pauli,
    redundancy_map, reuploading_coeffs, simple_model_coeffs, ternary_encoding,
    ternary_zero_digits, weingarten_w2, weingarten_w4,
)
from dequant_lab.quantum.models import AliasingError


# ---- encodings

def test_ternary_n1_slopes():
    np.testing.assert_array_equal(ternary_encoding(1).slopes, [-0.25, 0.25])


def test_ternary_n2_redundancy_by_hand():
    # slopes (-4, -2, 2, 4)/4 -> half-step differences
    assert redundancy_map(ternary_encoding(2)) == {-4: 1, -3: 2, -2: 1, -1: 2, 0: 4, 1: 2, 2: 1, 3: 2, 4: 1}


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_ternary_spectrum_size_and_total(n):
    enc = ternary_encoding(n)
    R = redundancy_map(enc)
    assert len(R) == 3**n
    assert sum(R.values()) == 4**n
    assert max(R) == (3**n - 1) // 2


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_ternary_redundancy_counts_zero_digits(n):
    for h, r in redundancy_map(ternary_encoding(n)).items():
        assert r == 2 ** ternary_zero_digits(h, n)


def test_ternary_range():
    with pytest.raises(ValueError):
        ternary_encoding(0)
    with pytest.raises(ValueError):
        ternary_encoding(11)


def test_greedy_rulers():
    assert greedy_golomb_ruler(3).marks == (0, 1, 3)
    assert greedy_golomb_ruler(5).marks == (0, 1, 3, 7, 12)


def test_golomb_validation_and_redundancy():
    with pytest.raises(ValueError):
        GolombRuler((0, 1, 2))
    enc = golomb_encoding(GolombRuler((0, 1, 4, 6)))
    R = redundancy_map(enc)
    assert R[0] == 4
    assert all(v == 1 for k, v in R.items() if k != 0)
    assert len(R) == 4 * 3 + 1


def test_encoding_rejects_bad_slopes():
    with pytest.raises(ValueError):
        DiagonalEncoding([0.0, 0.3])


# ---- observables

def test_pauli_matrix_ordering():
    # character 0 acts on the least significant bit
    Z0 = Observable.pauli("ZI").matrix
    np.testing.assert_array_equal(np.diag(Z0).real, [1, -1, 1, -1])
    X1 = Observable.pauli("IX").matrix
    assert X1[0, 2] == 1 and X1[0, 1] == 0


def test_observable_properties():
    O = Observable.pauli("XYZ")
    assert O.trace == 0 and O.frobenius_sq == pytest.approx(8)
    # sum |O (x) O| / N^2 = 1 for a Pauli string, checked on the tensor itself
    T = np.kron(Observable.pauli("ZZ").matrix, Observable.pauli("ZZ").matrix)
    assert np.abs(T).sum() / 4**2 == pytest.approx(1.0)
    D = Observable.balanced_diagonal(6)
    assert D.trace == 0 and D.is_diagonal()
    with pytest.raises(ValueError):
        Observable.balanced_diagonal(5)
    with pytest.raises(ValueError):
        Observable.pauli("ZQ")
    assert set(random_pauli(3, 0).label) != {"I"}


# ---- coefficients

def _instance(n, seed):
    enc = ternary_encoding(n)
    r = SeededRng(seed)
    return enc, random_pauli(n, r.child(0)), haar_unitary(enc.N, r.child(1)), haar_unitary(enc.N, r.child(2))


@settings(max_examples=15, deadline=None)
@given(st.integers(1, 4), st.integers(0, 2**32 - 1))
def test_simple_coeffs_match_fft(n, seed):
    enc, O, V, _ = _instance(n, seed)
    c = simple_model_coeffs(enc, V, O)
    cf, leak = fft_coeffs_oracle(lambda x: eval_simple_model(enc, V, O, x), enc)
    assert np.max(np.abs(c.values - cf.values)) < 1e-12
    assert leak < 1e-12
    assert c.c0 == 0
    assert c.hermitian_defect() < 1e-12


@settings(max_examples=15, deadline=None)
@given(st.integers(1, 4), st.integers(0, 2**32 - 1))
def test_reuploading_coeffs_match_fft(n, seed):
    enc, O, V1, V2 = _instance(n, seed)
    c = reuploading_coeffs(enc, V1, V2, O)
    cf, _ = fft_coeffs_oracle(lambda x: eval_reuploading_model(enc, V1, V2, O, x), enc)
    assert np.max(np.abs(c.values - cf.values)) < 1e-12


def test_fft_aliasing_guard():
    enc = ternary_encoding(3)
    with pytest.raises(AliasingError):
        fft_coeffs_oracle(lambda x: 0 * x, enc, grid=16)


def test_beta_conversion_reproduces_model():
    enc, O, V, _ = _instance(3, 9)
    c = simple_model_coeffs(enc, V, O)
    fm, beta = coeffs_to_beta(c)
    x = np.linspace(0, 4 * np.pi, 50)
    np.testing.assert_allclose(LinearModel(fm, beta)(x), eval_simple_model(enc, V, O, x), atol=1e-12)
    assert beta_norm_sq(c) == pytest.approx(beta @ beta, rel=1e-13)


def test_model_values_bounded():
    enc, O, V, _ = _instance(3, 4)
    v = eval_simple_model(enc, V, O, np.linspace(0, 20, 300))
    assert np.all(np.abs(v) <= 1 + 1e-12)


def test_non_unitary_rejected():
    enc = ternary_encoding(1)
    with pytest.raises(ValueError):
        simple_model_coeffs(enc, np.ones((2, 2)), Observable.pauli("Z"))


# ---- moments

def test_weingarten_values():
    assert weingarten_w2(4) == pytest.approx(-1 / 164)
    assert weingarten_w4(4) == pytest.approx(134 / 20160)
    assert 128**4 * weingarten_w4(128) == pytest.approx(1.0, rel=0.01)
    with pytest.raises(ValueError):
        weingarten_w2(3)


def test_simple_expectation_pauli_closed_form():
    # Pauli observable: 4 p sum_{w>0} R / (N (N^2 - 1)) with sum_{w>0} R = N(N-1)/2 -> 2p/(N+1)
    enc = ternary_encoding(3)
    ex = expected_beta_norm_simple(enc, default_observable(8))
    assert ex.value == pytest.approx(2 * 27 / 9)
    assert ex.reference_scaling == pytest.approx(27 / 9)
    assert ex.convention_ratio == pytest.approx(2.0)
    with pytest.raises(ValueError):
        expected_beta_norm_simple(enc, Observable("I", np.eye(8)))


def test_golomb_n4_monte_carlo():
    enc = golomb_encoding(GolombRuler((0, 1, 4, 6)))
    O = default_observable(4)
    st_ = monte_carlo_norm_stats(enc, O, "simple", 2000, SeededRng(5))
    assert abs(st_.mean - expected_beta_norm_simple(enc, O).value) < 3 * st_.stderr


def test_reuploading_exact_vs_monte_carlo():
    enc = ternary_encoding(2)
    for O in (default_observable(4), Observable("I", np.eye(4))):
        st_ = monte_carlo_norm_stats(enc, O, "reuploading", 2000, SeededRng(6))
        ex = expected_beta_norm_reuploading_exact(enc, O)
        assert abs(st_.mean - ex) <= 3 * st_.stderr + 1e-9


def test_reuploading_reference_formula_cases():
    # identity observable: only the constant term survives
    assert expected_beta_norm_reuploading(8, 27, Observable("I", np.eye(8))) == pytest.approx(1.0)
    O = default_observable(8)
    assert approx_design_norm_bound(8, 27, 0.0, O) == pytest.approx(expected_beta_norm_reuploading(8, 27, O))
    b = [approx_design_norm_bound(8, 27, e, O) for e in (0.0, 0.01, 0.1)]
    assert b[0] < b[1] < b[2]


def test_variance_predictor_golomb_sum():
    enc = golomb_encoding(greedy_golomb_ruler(8))
    p, N = enc.n_features, 8
    assert beta_norm_variance_prediction(enc) == pytest.approx(p**2 / N**6 * N * (N - 1) + p**2 / N**4)


def test_monte_carlo_reproducible_and_stderr_scaling():
    enc, O = ternary_encoding(2), default_observable(4)
    a = monte_carlo_norm_stats(enc, O, "simple", 50, SeededRng(1))
    b = monte_carlo_norm_stats(enc, O, "simple", 50, SeededRng(1))
    assert a == b
    s500 = monte_carlo_norm_stats(enc, O, "simple", 500, SeededRng(2)).stderr
    s2000 = monte_carlo_norm_stats(enc, O, "simple", 2000, SeededRng(2)).stderr
    assert s500 / s2000 == pytest.approx(2.0, rel=0.3)
    with pytest.raises(ValueError):
        monte_carlo_norm_stats(enc, O, "other", 10, SeededRng(0))


def test_zero_digit_helper():
    assert ternary_zero_digits(0, 3) == 3
    assert ternary_zero_digits(13, 3) == 0  # 13 = 9 + 3 + 1
    with pytest.raises(ValueError):
        ternary_zero_digits(14, 3)
    assert math.isclose(sum(2 ** ternary_zero_digits(h, 4) for h in range(-40, 41)), 4**4)
