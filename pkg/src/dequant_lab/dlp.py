"""Discrete-logarithm quantum model on n qubits.

Labels ``1..N`` of the multiplicative group mod ``P = N + 1`` sit on basis
indices ``0..N-1``.  The unitary sends label i to ``log_g(i) + 1`` and the
observable is Z on one bit, so the model reduces to a fixed +-1 diagonal read
out on the product state ``RY(x_1) ... RY(x_n) |0>``.  Bitstring y maps to basis
index ``sum_i y_i 2^i``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from dequant_lab.numeric import as_generator


def is_prime(m: int) -> bool:
    if m < 2:
        return False
    f = 2
    while f * f <= m:
        if m % f == 0:
            return False
        f += 1
    return True


def multiplicative_order(g: int, P: int) -> int:
    x, k = g % P, 1
    while x != 1:
        x = x * g % P
        k += 1
    return k


@dataclass(frozen=True)
class DlpInstance:
    n: int
    P: int
    g: int
    b_idx: int = 0

    @property
    def N(self) -> int:
        return 2**self.n

    @cached_property
    def log_table(self) -> dict[int, int]:
        """``{i: log_g(i)}`` for labels ``1..N``."""
        table, x = {}, 1
        for k in range(self.N):
            table[x] = k
            x = x * self.g % self.P
        return table


def build_instance(n: int, b_idx: int = 0) -> DlpInstance:
    if n < 1:
        raise ValueError("n must be >= 1")
    P = 2**n + 1
    if not is_prime(P):
        raise ValueError(f"2^{n} + 1 = {P} is not prime")
    if not 0 <= b_idx < n:
        raise ValueError(f"b_idx must lie in [0, {n})")
    g = next(c for c in range(2, P) if multiplicative_order(c, P) == P - 1)
    return DlpInstance(n, P, g, b_idx)


def dlp_permutation(inst: DlpInstance) -> dict[int, int]:
    """``pi(i) = log_g(i) + 1`` on labels ``1..N``."""
    pi = {i: inst.log_table[i] + 1 for i in range(1, inst.N + 1)}
    if sorted(pi.values()) != list(range(1, inst.N + 1)):
        raise AssertionError("discrete-log map is not a bijection")
    for i, v in pi.items():
        if pow(inst.g, v - 1, inst.P) != i:
            raise AssertionError(f"g^(pi({i}) - 1) != {i} mod {inst.P}")
    return pi


def permutation_matrix(inst: DlpInstance) -> np.ndarray:
    """Unitary with ``U e_{i-1} = e_{pi(i)-1}``."""
    U = np.zeros((inst.N, inst.N))
    for i, v in dlp_permutation(inst).items():
        U[v - 1, i - 1] = 1.0
    return U


def dlp_observable_diag(inst: DlpInstance) -> np.ndarray:
    pi = dlp_permutation(inst)
    bits = np.array([(pi[i + 1] >> inst.b_idx) & 1 for i in range(inst.N)])
    return np.where(bits == 1, -1.0, 1.0)


def _bit_matrix(n: int) -> np.ndarray:
    """Row y holds the bits of basis index y, least significant first."""
    return (np.arange(2**n)[:, None] >> np.arange(n)) & 1


def product_state_probabilities(x) -> np.ndarray:
    """``|amp_y|^2`` for ``RY(x_1) ... RY(x_n) |0>``; batch of shape ``(m, n)`` allowed."""
    x = np.atleast_2d(np.asarray(x, dtype=float))
    n = x.shape[1]
    Y = _bit_matrix(n)
    c2, s2 = np.cos(x / 2) ** 2, np.sin(x / 2) ** 2
    # (m, N, n) -> product over qubits
    fac = np.where(Y[None, :, :] == 1, s2[:, None, :], c2[:, None, :])
    return fac.prod(axis=2)


def dlp_model_eval(inst: DlpInstance, x) -> np.ndarray | float:
    x = np.asarray(x, dtype=float)
    single = x.ndim == 1
    X = np.atleast_2d(x)
    if X.shape[1] != inst.n:
        raise ValueError(f"expected {inst.n} angles per input")
    out = product_state_probabilities(X) @ dlp_observable_diag(inst)
    return float(out[0]) if single else out


def dlp_model_eval_circuit(inst: DlpInstance, x) -> float:
    """Dense reference: ``<psi| U^dag Z_b U |psi>`` with U the permutation matrix."""
    x = np.asarray(x, dtype=float)
    ry = lambda t: np.array([[np.cos(t / 2), -np.sin(t / 2)], [np.sin(t / 2), np.cos(t / 2)]])
    psi = np.ones(1)
    for t in x:
        # qubit 0 is the least significant bit
        psi = np.kron(ry(t)[:, 0], psi)
    U = permutation_matrix(inst)
    # Z on bit b of the label (basis index + 1)
    z = np.array([1.0 - 2.0 * (((j + 1) >> inst.b_idx) & 1) for j in range(inst.N)])
    phi = U @ psi
    return float(phi @ (z * phi))


def dlp_feature(y, x) -> float:
    """``2^-n prod_i (1 + (-1)^{y_i} cos x_i)``; equals ``|amp_y(x)|^2``."""
    y, x = np.asarray(y), np.asarray(x, dtype=float)
    if y.shape != x.shape:
        raise ValueError("bitstring and input lengths differ")
    return float(np.prod(1.0 + np.where(y == 1, -1.0, 1.0) * np.cos(x)) / 2 ** len(x))


def dlp_expansion(inst: DlpInstance, x) -> float:
    d = dlp_observable_diag(inst)
    Y = _bit_matrix(inst.n)
    return float(sum(d[i] * dlp_feature(Y[i], x) for i in range(inst.N)))


def dlp_expansion_check(inst: DlpInstance, n_points: int, rng) -> float:
    X = as_generator(rng).uniform(0.0, 2 * np.pi, size=(n_points, inst.n))
    return float(max(abs(dlp_model_eval(inst, x) - dlp_expansion(inst, x)) for x in X))


@dataclass
class DlpVariance:
    corner_mean: float
    corner_variance: float
    continuous_variance: float
    continuous_stderr: float


def dlp_variance_exact(inst: DlpInstance, n_mc: int = 20000, rng=0) -> DlpVariance:
    """Exact variance over the corners ``{0, pi}^n`` and a Monte Carlo variance over uniform angles."""
    if inst.n > 16:
        raise ValueError("corner enumeration limited to n <= 16")
    corners = np.pi * _bit_matrix(inst.n)
    f = dlp_model_eval(inst, corners)
    X = as_generator(rng).uniform(0.0, 2 * np.pi, size=(n_mc, inst.n))
    fc = dlp_model_eval(inst, X)
    dev = (fc - fc.mean()) ** 2
    return DlpVariance(float(f.mean()), float(f.var()), float(dev.mean()),
                       float(dev.std(ddof=1) / np.sqrt(n_mc)))


def dlp_rff_obstruction(inst: DlpInstance) -> float:
    """``|beta_y| 2^n ||phi_y||`` with the norm taken over uniform corners.

    ``phi_y`` is the indicator of corner y, so ``||phi_y||^2 = 2^-n`` by
    enumeration, and every ``|beta_y| = 1``.
    """
    corners = np.pi * _bit_matrix(inst.n)
    Y = _bit_matrix(inst.n)
    d = dlp_observable_diag(inst)
    vals = []
    for i, y in enumerate(Y):
        sq = np.mean([dlp_feature(y, c) ** 2 for c in corners])
        vals.append(abs(d[i]) * inst.N * np.sqrt(sq))
    return float(max(vals))
