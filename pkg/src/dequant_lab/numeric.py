"""Random sampling and dense linear-algebra primitives shared across the lab."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


class DimensionError(ValueError):
    pass


class RankDeficientError(np.linalg.LinAlgError):
    """Raised when a matrix that must have full row rank does not."""

    def __init__(self, message: str, singular_value: float):
        super().__init__(message)
        self.singular_value = singular_value


@dataclass(frozen=True)
class SeededRng:
    """Counter-style random stream identified by ``(seed, stream)``.

    The same pair always yields the same draws. Independent trials use
    :meth:`child`, which derives a new stream id from the parent's, so a trial's
    randomness depends only on its index and never on execution order.
    """

    seed: int
    stream: int = 0

    def __post_init__(self):
        if not (0 <= self.seed < 2**64 and 0 <= self.stream < 2**64):
            raise ValueError("seed and stream must be unsigned 64-bit integers")

    def generator(self) -> np.random.Generator:
        ss = np.random.SeedSequence(entropy=self.seed, spawn_key=(self.stream,))
        return np.random.Generator(np.random.Philox(ss))

    def child(self, index: int) -> "SeededRng":
        ss = np.random.SeedSequence(entropy=self.seed, spawn_key=(self.stream, int(index)))
        return SeededRng(self.seed, int(ss.generate_state(1, np.uint64)[0]))


def as_generator(rng) -> np.random.Generator:
    if isinstance(rng, SeededRng):
        return rng.generator()
    if isinstance(rng, np.random.Generator):
        return rng
    return np.random.default_rng(rng)


def haar_unitary(N: int, rng) -> np.ndarray:
    """Draw an N x N unitary from the Haar measure.

    Ginibre matrix, QR, then each column of Q is multiplied by the phase of the
    matching diagonal entry of R; without that correction the result is not Haar.
    """
    if N < 1:
        raise DimensionError(f"dimension must be >= 1, got {N}")
    gen = as_generator(rng)
    z = (gen.standard_normal((N, N)) + 1j * gen.standard_normal((N, N))) / np.sqrt(2.0)
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))


def unitarity_defect(U: np.ndarray) -> float:
    U = np.asarray(U)
    return float(np.max(np.abs(U.conj().T @ U - np.eye(U.shape[1]))))


def sym_eig_min(S: np.ndarray, tol: float = 1e-10) -> float:
    S = np.asarray(S, dtype=float)
    if S.ndim != 2 or S.shape[0] != S.shape[1]:
        raise DimensionError(f"expected a square matrix, got shape {S.shape}")
    scale = max(1.0, float(np.max(np.abs(S)))) if S.size else 1.0
    if np.max(np.abs(S - S.T), initial=0.0) > tol * scale:
        raise ValueError("matrix is not symmetric")
    return float(np.linalg.eigvalsh(S)[0])


def min_norm_lstsq(A: np.ndarray, y: np.ndarray, rcond: float = 1e-10) -> np.ndarray:
    """Minimum-norm solution of ``A x = y`` for a wide, full-row-rank ``A``.

    The solution lives in the row space of ``A``; it is computed from the thin
    SVD, ``x = V diag(1/s) U^T y``.
    """
    A = np.asarray(A, dtype=float)
    y = np.asarray(y, dtype=float)
    if A.ndim != 2 or y.shape != (A.shape[0],):
        raise DimensionError(f"incompatible shapes {A.shape} and {y.shape}")
    M, p = A.shape
    if p < M:
        raise DimensionError(f"need p >= M, got M={M}, p={p}")
    u, s, vt = np.linalg.svd(A, full_matrices=False)
    if s[-1] <= rcond * s[0]:
        raise RankDeficientError(
            f"matrix is rank deficient: smallest singular value {s[-1]:.3e} "
            f"(largest {s[0]:.3e})",
            float(s[-1]),
        )
    return vt.T @ ((u.T @ y) / s)


def row_space_projector(A: np.ndarray) -> np.ndarray:
    """Orthogonal projector onto span of the rows of ``A``."""
    _, s, vt = np.linalg.svd(np.asarray(A, dtype=float), full_matrices=False)
    keep = s > 1e-12 * s[0]
    v = vt[keep]
    return v.T @ v


def null_space_basis(A: np.ndarray) -> np.ndarray:
    """Orthonormal basis (as columns) of the null space of ``A``."""
    A = np.asarray(A, dtype=float)
    _, s, vt = np.linalg.svd(A, full_matrices=True)
    rank = int(np.sum(s > 1e-12 * s[0]))
    return vt[rank:].T
