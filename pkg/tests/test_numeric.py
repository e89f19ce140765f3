import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from dequant_lab.numeric import (
    DimensionError, RankDeficientError, SeededRng, haar_unitary, min_norm_lstsq,
    null_space_basis, row_space_projector, sym_eig_min, unitarity_defect,
)


def test_seeded_rng_reproducible_and_independent():
    a = SeededRng(5, 3).generator().standard_normal(4)
    b = SeededRng(5, 3).generator().standard_normal(4)
    c = SeededRng(5, 4).generator().standard_normal(4)
    assert np.array_equal(a, b)
    assert not np.allclose(a, c)


def test_child_streams_depend_only_on_index():
    r = SeededRng(11)
    first = r.child(7).generator().integers(0, 2**32, 3)
    for i in range(7):
        r.child(i).generator().integers(0, 2**32, 100)
    assert np.array_equal(first, r.child(7).generator().integers(0, 2**32, 3))
    assert r.child(1) != r.child(2)


def test_seed_range():
    with pytest.raises(ValueError):
        SeededRng(-1)
    with pytest.raises(ValueError):
        SeededRng(2**64)


@pytest.mark.parametrize("N", [1, 2, 5, 16, 64])
def test_haar_is_unitary(N):
    assert unitarity_defect(haar_unitary(N, SeededRng(N))) < 1e-12


def test_haar_first_moment():
    # E|U_00|^2 = 1/N, and Var|U_00|^2 = (N-1)/(N^2 (N+1))
    N, T = 4, 4000
    v = np.array([abs(haar_unitary(N, SeededRng(1).child(t))[0, 0]) ** 2 for t in range(T)])
    se = np.sqrt((N - 1) / (N**2 * (N + 1)) / T)
    assert abs(v.mean() - 1 / N) < 4 * se


def test_haar_phase_fix_matters():
    # without the phase fix, QR makes diag(R) real positive; the fixed output has
    # diagonal phases spread over the circle
    phases = [np.angle(haar_unitary(3, SeededRng(2).child(t))[0, 0]) for t in range(400)]
    assert abs(np.mean(np.cos(phases))) < 0.15


def test_haar_dimension_error():
    with pytest.raises(DimensionError):
        haar_unitary(0, 0)


def test_sym_eig_min():
    assert sym_eig_min(np.diag([3.0, 1.0, 2.0])) == pytest.approx(1.0)
    with pytest.raises(ValueError):
        sym_eig_min(np.array([[1.0, 2.0], [0.0, 1.0]]))
    with pytest.raises(DimensionError):
        sym_eig_min(np.ones((2, 3)))


def test_min_norm_lstsq_matches_pinv():
    A = SeededRng(3).generator().standard_normal((4, 9))
    y = np.arange(4.0)
    x = min_norm_lstsq(A, y)
    np.testing.assert_allclose(x, np.linalg.pinv(A) @ y, atol=1e-12)
    np.testing.assert_allclose(A @ x, y, atol=1e-12)


def test_min_norm_lstsq_rank_deficient():
    A = np.array([[1.0, 0.0, 0.0], [2.0, 0.0, 0.0]])
    with pytest.raises(RankDeficientError) as ei:
        min_norm_lstsq(A, np.ones(2))
    assert ei.value.singular_value < 1e-12


def test_min_norm_lstsq_shape_errors():
    with pytest.raises(DimensionError):
        min_norm_lstsq(np.ones((3, 2)), np.ones(3))
    with pytest.raises(DimensionError):
        min_norm_lstsq(np.ones((2, 3)), np.ones(3))


@settings(max_examples=25, deadline=None)
@given(st.integers(1, 5), st.integers(0, 6), st.integers(0, 2**32 - 1))
def test_projector_and_null_space_complement(M, extra, seed):
    p = M + extra
    A = np.random.default_rng(seed).standard_normal((M, p))
    P = row_space_projector(A)
    Z = null_space_basis(A)
    assert Z.shape == (p, p - M)
    np.testing.assert_allclose(P @ P, P, atol=1e-10)
    np.testing.assert_allclose(A @ Z, 0, atol=1e-10)
    np.testing.assert_allclose(P + Z @ Z.T, np.eye(p), atol=1e-10)
