"""Hermitian observables: Pauli strings and balanced diagonal sign patterns."""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce

import numpy as np

from dequant_lab.numeric import as_generator

_PAULI = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.diag([1.0, -1.0]).astype(complex),
}


@dataclass(frozen=True, eq=False)
class Observable:
    label: str
    matrix: np.ndarray

    def __post_init__(self):
        A = np.asarray(self.matrix, dtype=complex)
        if A.ndim != 2 or A.shape[0] != A.shape[1]:
            raise ValueError("observable must be a square matrix")
        if not np.allclose(A, A.conj().T, atol=1e-12):
            raise ValueError("observable must be Hermitian")
        A.setflags(write=False)
        object.__setattr__(self, "matrix", A)

    @classmethod
    def pauli(cls, string: str) -> "Observable":
        """Character k of ``string`` acts on qubit k (bit k of the basis index)."""
        s = string.upper()
        if not s or any(c not in _PAULI for c in s):
            raise ValueError(f"invalid Pauli string {string!r}")
        # qubit 0 is the least significant bit, so it is the rightmost factor
        return cls(s, reduce(np.kron, [_PAULI[c] for c in reversed(s)]))

    @classmethod
    def balanced_diagonal(cls, N: int, rng=None) -> "Observable":
        """Traceless diagonal with N/2 entries +1 and N/2 entries -1.

        Without ``rng`` the pattern is ``+1`` on even indices and ``-1`` on odd.
        """
        if N < 2 or N % 2:
            raise ValueError("a balanced +-1 diagonal needs even N >= 2")
        signs = np.where(np.arange(N) % 2 == 0, 1.0, -1.0)
        if rng is not None:
            signs = as_generator(rng).permutation(signs)
        return cls("diag", np.diag(signs).astype(complex))

    @property
    def N(self) -> int:
        return self.matrix.shape[0]

    @property
    def trace(self) -> float:
        return float(np.trace(self.matrix).real)

    @property
    def frobenius_sq(self) -> float:
        return float(np.sum(np.abs(self.matrix) ** 2))

    @property
    def abs_entry_sum(self) -> float:
        return float(np.sum(np.abs(self.matrix)))

    def is_diagonal(self) -> bool:
        return bool(np.all(self.matrix == np.diag(np.diag(self.matrix))))


def random_pauli(n: int, rng) -> Observable:
    """A uniformly random non-identity Pauli string on n qubits."""
    gen = as_generator(rng)
    while True:
        s = "".join(gen.choice(list("IXYZ"), size=n))
        if set(s) != {"I"}:
            return Observable.pauli(s)


def default_observable(N: int) -> Observable:
    """``Z`` on qubit 0 when N is a power of two, else the balanced diagonal."""
    if N >= 2 and N & (N - 1) == 0:
        n = N.bit_length() - 1
        return Observable.pauli("Z" + "I" * (n - 1))
    return Observable.balanced_diagonal(N)
