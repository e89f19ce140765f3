"""Fourier coefficients of diagonal-encoding quantum models.

Simple model: ``f(x) = <0| S(x)^dag V^dag O V S(x) |0>`` evaluated on the
uniform superposition ``S(x) H^n |0>``.  Re-uploading model:
``f(x) = <0| V1^dag S(x)^dag V2^dag O V2 S(x) V1 |0>``.

Both are trigonometric polynomials ``sum_w c_w exp(i w x)`` over the encoding
spectrum, and the coefficient of ``w`` collects every index pair with
``lambda_j - lambda_k = w``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from dequant_lab.fourier.features import FeatureMap, FrequencySet
from dequant_lab.numeric import DimensionError, unitarity_defect
from dequant_lab.quantum.encodings import DiagonalEncoding
from dequant_lab.quantum.observables import Observable

UNITARY_TOL = 1e-9


class AliasingError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class QuantumCoeffs:
    """Complex coefficients aligned with ``half_steps`` (the full symmetric spectrum)."""

    half_steps: np.ndarray
    values: np.ndarray

    def get(self, half_step: int) -> complex:
        i = np.searchsorted(self.half_steps, half_step)
        if i < len(self.half_steps) and self.half_steps[i] == half_step:
            return complex(self.values[i])
        return 0j

    @property
    def c0(self) -> complex:
        return self.get(0)

    @property
    def positive(self) -> tuple[np.ndarray, np.ndarray]:
        m = self.half_steps > 0
        return self.half_steps[m], self.values[m]

    def hermitian_defect(self) -> float:
        """``max |c_{-w} - conj(c_w)|``; zero for a real-valued model."""
        rev = self.values[::-1]
        if not np.array_equal(self.half_steps, -self.half_steps[::-1]):
            raise ValueError("spectrum is not symmetric")
        return float(np.max(np.abs(rev - self.values.conj())))

    def __call__(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float).reshape(-1)
        ph = np.exp(0.5j * np.outer(x, self.half_steps))
        return (ph @ self.values).real


def _check_unitary(U, N, name):
    U = np.asarray(U, dtype=complex)
    if U.shape != (N, N):
        raise DimensionError(f"{name} has shape {U.shape}, expected ({N}, {N})")
    if unitarity_defect(U) > UNITARY_TOL:
        raise ValueError(f"{name} is not unitary (defect {unitarity_defect(U):.2e})")
    return U


def _check_observable(O, N) -> np.ndarray:
    A = O.matrix if isinstance(O, Observable) else np.asarray(O, dtype=complex)
    if A.shape != (N, N):
        raise DimensionError(f"observable has shape {A.shape}, expected ({N}, {N})")
    return A


def _collect(enc: DiagonalEncoding, weights: np.ndarray) -> QuantumCoeffs:
    idx = enc.pair_index.ravel()
    n = len(enc.spectrum)
    w = weights.ravel()
    vals = np.bincount(idx, w.real, n) + 1j * np.bincount(idx, w.imag, n)
    return QuantumCoeffs(enc.spectrum, vals)


def simple_model_coeffs(enc: DiagonalEncoding, V, O) -> QuantumCoeffs:
    """``c_w = (1/N) sum_{lambda_j - lambda_k = w} (V^dag O V)_jk``."""
    N = enc.N
    V = _check_unitary(V, N, "V")
    O = _check_observable(O, N)
    A = V.conj().T @ O @ V
    c = _collect(enc, A / N)
    if enc.redundancies[enc.spectrum == 0][0] == N:
        # distinct slopes: c_0 = Tr(V^dag O V)/N = Tr(O)/N, exact for traceless O
        c.values[enc.spectrum == 0] = np.trace(O) / N
    return c


def reuploading_coeffs(enc: DiagonalEncoding, V1, V2, O) -> QuantumCoeffs:
    """``c_w = sum_{lambda_j - lambda_k = w} conj(a_j) (V2^dag O V2)_jk a_k`` with ``a = V1 e_0``."""
    N = enc.N
    V1 = _check_unitary(V1, N, "V1")
    V2 = _check_unitary(V2, N, "V2")
    a = V1[:, 0]
    A = V2.conj().T @ _check_observable(O, N) @ V2
    return _collect(enc, a.conj()[:, None] * A * a[None, :])


def coeff_feature_map(enc: DiagonalEncoding) -> FeatureMap:
    """Feature map over the positive spectrum plus the constant."""
    return FeatureMap(FrequencySet(1, enc.positive_spectrum.reshape(-1, 1), include_constant=True))


def coeffs_to_beta(coeffs: QuantumCoeffs, fm: FeatureMap | None = None) -> tuple[FeatureMap, np.ndarray]:
    """Real weights with ``beta^T phi(x) = sum_w c_w exp(i w x)``.

    ``beta_0 = sqrt(p) c_0``, ``beta_cos = 2 sqrt(p) Re c_w`` and
    ``beta_sin = -2 sqrt(p) Im c_w``.
    """
    hs, vals = coeffs.positive
    if fm is None:
        fm = FeatureMap(FrequencySet(1, hs.reshape(-1, 1), include_constant=True))
    if fm.d != 1 or not fm.frequencies.include_constant:
        raise DimensionError("coefficient feature map must be 1-D with a constant term")
    fm_hs = fm.frequencies.half_steps[:, 0]
    pos = {int(h): i for i, h in enumerate(fm_hs)}
    missing = [int(h) for h, v in zip(hs, vals) if int(h) not in pos and abs(v) > 1e-12]
    if missing:
        raise DimensionError(f"frequencies {missing[:5]} are not in the feature map")
    sp = np.sqrt(fm.p)
    beta = np.zeros(fm.p)
    beta[0] = sp * coeffs.c0.real
    for h, v in zip(hs, vals):
        i = pos.get(int(h))
        if i is not None:
            beta[1 + 2 * i] = 2 * sp * v.real
            beta[2 + 2 * i] = -2 * sp * v.imag
    return fm, beta


def beta_norm_sq(coeffs: QuantumCoeffs) -> float:
    """``||beta||^2 = p (|c_0|^2 + 4 sum_{w>0} |c_w|^2)`` with ``p = 2|spectrum_+| + 1``."""
    hs, vals = coeffs.positive
    p = 2 * len(hs) + 1
    return float(p * (abs(coeffs.c0) ** 2 + 4.0 * np.sum(np.abs(vals) ** 2)))


def _encoded_states(enc: DiagonalEncoding, x, amplitudes) -> np.ndarray:
    x = np.asarray(x, dtype=float).reshape(-1)
    return np.exp(-1j * np.outer(x, enc.slopes)) * amplitudes[None, :]


def _expect(states, O):
    return np.einsum("bi,ij,bj->b", states.conj(), O, states)


def eval_simple_model(enc: DiagonalEncoding, V, O, x) -> np.ndarray:
    """Statevector evaluation of the simple model at each x."""
    N = enc.N
    V = _check_unitary(V, N, "V")
    psi = _encoded_states(enc, x, np.full(N, 1.0 / np.sqrt(N))) @ V.T
    return _expect(psi, _check_observable(O, N)).real


def eval_reuploading_model(enc: DiagonalEncoding, V1, V2, O, x) -> np.ndarray:
    N = enc.N
    V1 = _check_unitary(V1, N, "V1")
    V2 = _check_unitary(V2, N, "V2")
    psi = _encoded_states(enc, x, V1[:, 0]) @ V2.T
    return _expect(psi, _check_observable(O, N)).real


def fft_grid_size(enc: DiagonalEncoding) -> int:
    need = max(4 * len(enc.spectrum), 2 * enc.max_half_step + 1)
    return 1 << (need - 1).bit_length()


def fft_coeffs_oracle(evaluate, enc: DiagonalEncoding, grid: int | None = None) -> tuple[QuantumCoeffs, float]:
    """Coefficients recovered by FFT of ``evaluate`` sampled on ``[0, 4 pi)``.

    Returns the coefficients on the encoding spectrum and the largest
    magnitude found on any frequency outside it.
    """
    G = fft_grid_size(enc) if grid is None else int(grid)
    if G <= 2 * enc.max_half_step:
        raise AliasingError(f"grid of {G} points aliases half-step {enc.max_half_step}")
    x = 4.0 * np.pi * np.arange(G) / G
    F = np.fft.fft(np.asarray(evaluate(x), dtype=float)) / G
    bins = np.mod(enc.spectrum, G)
    off = np.ones(G, dtype=bool)
    off[bins] = False
    leak = float(np.max(np.abs(F[off]))) if off.any() else 0.0
    return QuantumCoeffs(enc.spectrum, F[bins]), leak
