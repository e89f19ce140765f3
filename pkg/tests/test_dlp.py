import itertools

import numpy as np
import pytest

from dequant_lab.dlp import (
    build_instance, dlp_expansion_check, dlp_feature, dlp_model_eval, dlp_model_eval_circuit,
    dlp_observable_diag, dlp_permutation, dlp_rff_obstruction, dlp_variance_exact,
)


def test_instances():
    i2 = build_instance(2)
    assert (i2.P, i2.g) == (5, 2)
    assert i2.log_table == {1: 0, 2: 1, 3: 3, 4: 2}
    i4 = build_instance(4)
    assert (i4.P, i4.g) == (17, 3)
    with pytest.raises(ValueError):
        build_instance(3)
    with pytest.raises(ValueError):
        build_instance(2, b_idx=2)


def test_permutation_n2():
    assert dlp_permutation(build_instance(2)) == {1: 1, 2: 2, 3: 4, 4: 3}


def test_permutation_oracle_n4():
    inst = build_instance(4)
    pi = dlp_permutation(inst)
    assert sorted(pi.values()) == list(range(1, 17))
    assert all(pow(3, pi[i] - 1, 17) == i for i in pi)


def test_diag_n2():
    np.testing.assert_array_equal(dlp_observable_diag(build_instance(2)), [-1, 1, 1, -1])


@pytest.mark.parametrize("b", range(4))
def test_diag_balanced_n4(b):
    d = dlp_observable_diag(build_instance(4, b))
    assert set(d) <= {-1.0, 1.0} and d.sum() == 0


def test_model_corners():
    inst = build_instance(4)
    d = dlp_observable_diag(inst)
    assert dlp_model_eval(inst, np.zeros(4)) == d[0]
    assert dlp_model_eval(inst, np.full(4, np.pi)) == pytest.approx(d[-1], abs=1e-15)


def test_model_matches_dense_circuit():
    inst = build_instance(4, 1)
    X = np.random.default_rng(0).uniform(0, 2 * np.pi, (20, 4))
    for x in X:
        assert dlp_model_eval(inst, x) == pytest.approx(dlp_model_eval_circuit(inst, x), abs=1e-13)
        assert -1 <= dlp_model_eval(inst, x) <= 1


def test_features_form_a_simplex():
    x = np.random.default_rng(1).uniform(0, 2 * np.pi, 3)
    vals = [dlp_feature(np.array(y), x) for y in itertools.product((0, 1), repeat=3)]
    assert min(vals) >= 0 and sum(vals) == pytest.approx(1.0, abs=1e-12)
    assert dlp_feature(np.zeros(3, int), np.zeros(3)) == 1.0
    assert dlp_feature(np.array([0, 1, 0]), np.zeros(3)) == 0.0


@pytest.mark.parametrize("n,tol", [(2, 1e-12), (4, 1e-10)])
def test_expansion(n, tol):
    assert dlp_expansion_check(build_instance(n), 100, 3) <= tol


def test_variance_and_obstruction():
    for n in (2, 4):
        inst = build_instance(n)
        v = dlp_variance_exact(inst, 20000, 0)
        assert v.corner_mean == 0.0 and v.corner_variance == 1.0
        assert v.continuous_variance > 0.01
        assert dlp_rff_obstruction(inst) == 2.0 ** (n / 2)
    assert dlp_rff_obstruction(build_instance(4)) == 2 * dlp_rff_obstruction(build_instance(2))
