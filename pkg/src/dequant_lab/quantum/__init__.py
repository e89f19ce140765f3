"""Diagonal-encoding quantum models and their Fourier weight statistics."""

from dequant_lab.quantum.encodings import (
    DiagonalEncoding, GolombRuler, golomb_encoding, greedy_golomb_ruler, redundancy_map,
    ternary_encoding, ternary_zero_digits,
)
from dequant_lab.quantum.models import (
    AliasingError, QuantumCoeffs, beta_norm_sq, coeff_feature_map, coeffs_to_beta,
    eval_reuploading_model, eval_simple_model, fft_coeffs_oracle, reuploading_coeffs,
    simple_model_coeffs,
)
from dequant_lab.quantum.moments import (
    NormExpectation, NormStats, approx_design_norm_bound, beta_norm_variance_prediction,
    expected_beta_norm_reuploading, expected_beta_norm_reuploading_exact,
    expected_beta_norm_simple, monte_carlo_norm_stats, off_diagonal_second_moment,
    weingarten_w2, weingarten_w4,
)
from dequant_lab.quantum.observables import Observable, default_observable, random_pauli
