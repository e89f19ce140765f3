"""Haar moments of quantum-model weight norms.

All expectations are for ``||beta||^2`` in this package's feature convention,
where a frequency pair contributes ``4 p |c_w|^2`` and the constant ``p |c_0|^2``
with ``p = 2 |spectrum_+| + 1``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from dequant_lab.numeric import SeededRng, haar_unitary
from dequant_lab.quantum.encodings import DiagonalEncoding
from dequant_lab.quantum.models import beta_norm_sq, reuploading_coeffs, simple_model_coeffs
from dequant_lab.quantum.observables import Observable


def weingarten_w2(N: int) -> float:
    """Second-order Weingarten function at the transposition class, degree 4."""
    if N < 4:
        raise ValueError("Weingarten values need N >= 4")
    return -1.0 / (N**5 - 14 * N**3 + 9 * N)


def weingarten_w4(N: int) -> float:
    if N < 4:
        raise ValueError("Weingarten values need N >= 4")
    return (N**4 - 8 * N**2 + 6) / (N**8 - 14 * N**6 + 49 * N**4 - 36 * N**2)


def _traces(O: Observable) -> tuple[int, float, float]:
    return O.N, O.trace, O.frobenius_sq


def off_diagonal_second_moment(O: Observable) -> float:
    """``E |(V^dag O V)_jk|^2`` for ``j != k`` and Haar V."""
    N, t1, t2 = _traces(O)
    return (N * t2 - t1**2) / (N * (N**2 - 1))


def _positive_redundancy(enc: DiagonalEncoding) -> np.ndarray:
    return enc.redundancies[enc.spectrum > 0]


@dataclass
class NormExpectation:
    value: float
    p: int
    N: int
    reference_scaling: float

    @property
    def convention_ratio(self) -> float:
        return self.value / self.reference_scaling


def expected_beta_norm_simple(enc: DiagonalEncoding, O: Observable) -> NormExpectation:
    """Exact Haar mean of ``||beta||^2`` for the simple model and traceless O.

    Only off-diagonal entries of ``V^dag O V`` feed nonzero frequencies and the
    constant vanishes for traceless O, so the mean is
    ``4 p sum_{w>0} R(w) C1 / N^2``.  For a Pauli observable (``C1 = N/(N+1)``,
    ``sum_{w>0} R = N(N-1)/2``) this is ``2p/(N+1)``.
    The reference ``p/(N+1)`` is kept for comparison.
    """
    N = enc.N
    if O.N != N:
        raise ValueError("observable and encoding dimensions differ")
    if abs(O.trace) > 1e-9:
        raise ValueError("the simple-model expectation needs a traceless observable")
    p = enc.n_features
    c1 = off_diagonal_second_moment(O)
    value = 4.0 * p * _positive_redundancy(enc).sum() * c1 / N**2
    return NormExpectation(float(value), p, N, p / (N + 1))


def beta_norm_variance_prediction(enc: DiagonalEncoding) -> float:
    """Heuristic variance ``(p^2/N^6) sum_{w != 0} R(w)^2 + p^2/N^4``."""
    N = enc.N
    if N < 4:
        raise ValueError("variance prediction needs N >= 4")
    p = enc.n_features
    R = enc.redundancies[enc.spectrum != 0].astype(float)
    return float(p**2 / N**6 * np.sum(R**2) + p**2 / N**4)


def expected_beta_norm_reuploading(N: int, p: int, O: Observable) -> float:
    """Reference expression ``C1 N^2 p / (N(N+1)) + Tr(O)^2 / N^2``."""
    if O.N != N:
        raise ValueError("observable and encoding dimensions differ")
    c1 = off_diagonal_second_moment(O)
    return float(c1 * N**2 * p / (N * (N + 1)) + O.trace**2 / N**2)


def expected_beta_norm_reuploading_exact(enc: DiagonalEncoding, O: Observable) -> float:
    """Exact Haar mean of ``||beta||^2`` for the re-uploading model.

    With ``a = V1 e_0`` uniform on the sphere, ``E|a_j|^2 |a_k|^2 = (1 + delta_jk)/(N(N+1))``.
    A nonzero frequency gives ``E|c_w|^2 = R(w) C1 / (N(N+1))``.  The constant
    picks up the diagonal of ``V2^dag O V2`` as well:
    ``E|c_0|^2 = A + 2 C1/(N+1)`` with ``A = (N Tr(O)^2 - ||O||^2)/(N(N^2-1))``.
    """
    N, t1, t2 = _traces(O)
    if N != enc.N:
        raise ValueError("observable and encoding dimensions differ")
    p = enc.n_features
    c1 = off_diagonal_second_moment(O)
    A = (N * t1**2 - t2) / (N * (N**2 - 1))
    e_c0 = A + 2.0 * c1 / (N + 1)
    e_pos = _positive_redundancy(enc).sum() * c1 / (N * (N + 1))
    return float(p * e_c0 + 4.0 * p * e_pos)


def approx_design_norm_bound(N: int, p: int, eps: float, O: Observable) -> float:
    """Upper bound on the mean norm when V1, V2 form an eps-approximate 2-design."""
    if eps < 0:
        raise ValueError("eps must be >= 0")
    c1 = off_diagonal_second_moment(O)
    c2 = O.abs_entry_sum**2 / N**2
    base = expected_beta_norm_reuploading(N, p, O)
    return float(base + (c1 * eps / N**2 + c2 * eps / (N * (N + 1))) * N**2 + c2 * eps**2 * N**2)


@dataclass
class NormStats:
    trials: int
    mean: float
    variance: float
    stderr: float


def monte_carlo_norm_stats(enc: DiagonalEncoding, O: Observable, kind: str,
                           trials: int, rng: SeededRng) -> NormStats:
    """``||beta||^2`` over Haar-random unitaries; trial t draws from ``rng.child(t)``."""
    if kind not in ("simple", "reuploading"):
        raise ValueError(f"unknown model kind {kind!r}")
    if trials < 2:
        raise ValueError("need at least 2 trials")
    vals = np.empty(trials)
    for t in range(trials):
        r = rng.child(t)
        if kind == "simple":
            c = simple_model_coeffs(enc, haar_unitary(enc.N, r.child(0)), O)
        else:
            c = reuploading_coeffs(enc, haar_unitary(enc.N, r.child(0)),
                                   haar_unitary(enc.N, r.child(1)), O)
        vals[t] = beta_norm_sq(c)
    var = float(vals.var(ddof=1))
    return NormStats(trials, float(vals.mean()), var, float(np.sqrt(var / trials)))
