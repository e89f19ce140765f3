"""Diagonal data encodings ``S(x) = diag(exp(-i lambda_j x))`` and their spectra."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import cached_property

import numpy as np


@dataclass(frozen=True)
class GolombRuler:
    marks: tuple[int, ...]

    def __post_init__(self):
        marks = tuple(int(m) for m in self.marks)
        if len(marks) < 1 or marks[0] != 0:
            raise ValueError("a ruler starts at mark 0")
        if any(b <= a for a, b in zip(marks, marks[1:])):
            raise ValueError("marks must be strictly increasing")
        diffs = [b - a for i, a in enumerate(marks) for b in marks[i + 1:]]
        if len(set(diffs)) != len(diffs):
            raise ValueError(f"marks {marks} repeat a pairwise difference")
        object.__setattr__(self, "marks", marks)

    def __len__(self):
        return len(self.marks)

    @property
    def length(self) -> int:
        return self.marks[-1]


def greedy_golomb_ruler(m: int) -> GolombRuler:
    """Smallest-next-mark greedy construction (Mian-Chowla style)."""
    if m < 2:
        raise ValueError("a ruler needs at least 2 marks")
    marks, diffs = [0], set()
    candidate = 1
    while len(marks) < m:
        new = {candidate - a for a in marks}
        if not new & diffs:
            marks.append(candidate)
            diffs |= new
        candidate += 1
    return GolombRuler(tuple(marks))


@dataclass(frozen=True, eq=False)
class DiagonalEncoding:
    """Phase slopes of a diagonal encoding.

    Slopes are multiples of 1/4 and therefore exact in floating point; every
    pairwise difference ``lambda_j - lambda_k`` must be a multiple of 1/2 and is
    stored as the integer half-step ``2 (lambda_j - lambda_k)``.
    """

    slopes: np.ndarray
    name: str = "diagonal"

    def __post_init__(self):
        s = np.asarray(self.slopes, dtype=float).reshape(-1)
        s.setflags(write=False)
        object.__setattr__(self, "slopes", s)
        h = 2.0 * (s[:, None] - s[None, :])
        if not np.all(h == np.round(h)):
            raise ValueError("slope differences must be multiples of 1/2")

    @property
    def N(self) -> int:
        return len(self.slopes)

    @cached_property
    def pair_half_steps(self) -> np.ndarray:
        """``H[j, k] = 2 (lambda_j - lambda_k)`` as integers."""
        return np.rint(2.0 * (self.slopes[:, None] - self.slopes[None, :])).astype(np.int64)

    @cached_property
    def spectrum(self) -> np.ndarray:
        """Sorted distinct half-step frequencies (symmetric about 0)."""
        return np.unique(self.pair_half_steps)

    @cached_property
    def pair_index(self) -> np.ndarray:
        return np.searchsorted(self.spectrum, self.pair_half_steps)

    @cached_property
    def redundancies(self) -> np.ndarray:
        """``R`` aligned with :attr:`spectrum`."""
        return np.bincount(self.pair_index.ravel(), minlength=len(self.spectrum))

    @property
    def positive_spectrum(self) -> np.ndarray:
        return self.spectrum[self.spectrum > 0]

    @property
    def max_half_step(self) -> int:
        return int(self.spectrum[-1])

    @property
    def n_features(self) -> int:
        """Real feature count: a cos/sin pair per positive frequency plus the constant."""
        return 2 * len(self.positive_spectrum) + 1


def redundancy_map(enc: DiagonalEncoding) -> dict[int, int]:
    """``{half_step: R}`` by explicit enumeration of all ordered index pairs."""
    counts = Counter()
    s = enc.slopes
    for j in range(enc.N):
        for k in range(enc.N):
            counts[int(round(2 * (s[j] - s[k])))] += 1
    return dict(sorted(counts.items()))


def ternary_encoding(n: int) -> DiagonalEncoding:
    """Single-qubit Z rotations with angles ``x 3^k / 2`` on qubit k.

    Basis index j carries bits ``b_k = (j >> k) & 1`` and slope
    ``sum_k (2 b_k - 1) 3^k / 4``.
    """
    if not 1 <= n <= 10:
        raise ValueError(f"ternary encoding supports 1 <= n <= 10, got {n}")
    j = np.arange(2**n)
    bits = (j[:, None] >> np.arange(n)) & 1
    slopes = ((2 * bits - 1) * 3.0 ** np.arange(n)).sum(axis=1) / 4.0
    return DiagonalEncoding(slopes, name=f"ternary-{n}")


def golomb_encoding(ruler: GolombRuler) -> DiagonalEncoding:
    if not isinstance(ruler, GolombRuler):
        ruler = GolombRuler(tuple(ruler))
    if len(ruler) < 2:
        raise ValueError("Golomb encoding needs N >= 2 marks")
    return DiagonalEncoding(np.asarray(ruler.marks, dtype=float) / 2.0, name=f"golomb-{len(ruler)}")


def ternary_zero_digits(half_step: int, n: int) -> int:
    """Number of zero digits in the n-digit balanced-ternary expansion of ``half_step``."""
    zeros, v = 0, int(half_step)
    for _ in range(n):
        r = ((v + 1) % 3) - 1
        zeros += r == 0
        v = (v - r) // 3
    if v != 0:
        raise ValueError(f"{half_step} needs more than {n} balanced-ternary digits")
    return zeros
