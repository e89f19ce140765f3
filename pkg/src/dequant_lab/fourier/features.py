"""Fourier feature maps, datasets and kernel matrices.

Frequencies are stored as integer "half-steps" (twice the angular frequency),
which keeps the half-integer spectra of the ternary encoding exact.  A feature
vector is laid out as ``[const?, cos w1, sin w1, cos w2, sin w2, ...]`` and every
entry carries the factor ``1/sqrt(p)`` where ``p`` counts real features.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from dequant_lab.numeric import DimensionError, as_generator

TWO_PI = 2.0 * np.pi


def _canonical(v) -> bool:
    """True when the first nonzero entry of ``v`` is positive."""
    for c in v:
        if c != 0:
            return c > 0
    return False


@dataclass(frozen=True)
class FrequencySet:
    d: int
    half_steps: np.ndarray = field(repr=False)
    include_constant: bool = False

    def __post_init__(self):
        hs = np.asarray(self.half_steps, dtype=np.int64).reshape(-1, self.d)
        seen = set()
        for row in map(tuple, hs):
            if not any(row):
                raise ValueError("zero frequency is represented by include_constant")
            neg = tuple(-c for c in row)
            if row in seen or neg in seen:
                raise ValueError(f"frequency {row} duplicated or paired with its negation")
            seen.add(row)
        hs.setflags(write=False)
        object.__setattr__(self, "half_steps", hs)

    @classmethod
    def from_integers(cls, freqs, include_constant: bool = False) -> "FrequencySet":
        arr = np.atleast_2d(np.asarray(freqs, dtype=np.int64))
        return cls(arr.shape[1], 2 * arr, include_constant)

    @classmethod
    def half_lattice(cls, d: int, L: int, include_constant: bool = False) -> "FrequencySet":
        """All integer vectors of ``[-L, L]^d`` in the canonical half-space."""
        rows = [v for v in itertools.product(range(-L, L + 1), repeat=d) if _canonical(v)]
        return cls.from_integers(rows, include_constant)

    @classmethod
    def random_subset(cls, d: int, L: int, count: int, rng,
                      include_constant: bool = False) -> "FrequencySet":
        full = cls.half_lattice(d, L).half_steps
        if count > len(full):
            raise ValueError(f"only {len(full)} frequencies available in box of size {L}")
        idx = np.sort(as_generator(rng).choice(len(full), size=count, replace=False))
        return cls(d, full[idx], include_constant)

    def __len__(self):
        return len(self.half_steps)

    @property
    def omegas(self) -> np.ndarray:
        return self.half_steps / 2.0

    @property
    def period(self) -> float:
        """Common period per coordinate: 2pi for integer spectra, 4pi otherwise."""
        return TWO_PI if np.all(self.half_steps % 2 == 0) else 2.0 * TWO_PI


@dataclass(frozen=True)
class FeatureMap:
    frequencies: FrequencySet

    @property
    def d(self) -> int:
        return self.frequencies.d

    @property
    def n_freq(self) -> int:
        return len(self.frequencies)

    @property
    def p(self) -> int:
        return 2 * self.n_freq + int(self.frequencies.include_constant)

    @property
    def period(self) -> float:
        return self.frequencies.period

    @property
    def offset(self) -> int:
        return int(self.frequencies.include_constant)

    def cos_slots(self) -> np.ndarray:
        return self.offset + 2 * np.arange(self.n_freq)

    def sin_slots(self) -> np.ndarray:
        return self.offset + 2 * np.arange(self.n_freq) + 1

    def feature_norms_mu(self) -> np.ndarray:
        """L2(mu) norm of every feature function under uniform inputs."""
        norms = np.full(self.p, 1.0 / np.sqrt(2.0 * self.p))
        if self.offset:
            norms[0] = 1.0 / np.sqrt(self.p)
        return norms

    def __call__(self, X) -> np.ndarray:
        return features(self, X)


def _as_batch(X, d: int) -> tuple[np.ndarray, bool]:
    """Normalize inputs to shape ``(n, d)``; a lone vector of length d is one input."""
    X = np.asarray(X, dtype=float)
    if X.ndim == 0:
        X, single = X.reshape(1, 1), True
    elif X.ndim == 1 and X.shape[0] == d:
        X, single = X.reshape(1, d), True
    elif X.ndim == 1 and d == 1:
        X, single = X.reshape(-1, 1), False
    else:
        single = False
    if X.ndim != 2 or X.shape[1] != d:
        raise DimensionError(f"expected inputs of dimension {d}, got shape {X.shape}")
    return X, single


def features(fm: FeatureMap, X) -> np.ndarray:
    """Feature vector(s) ``phi(x)``; a single input gives shape ``(p,)``."""
    X, single = _as_batch(X, fm.d)
    phase = X @ fm.frequencies.omegas.T
    out = np.empty((X.shape[0], fm.p))
    if fm.offset:
        out[:, 0] = 1.0
    out[:, fm.cos_slots()] = np.cos(phase)
    out[:, fm.sin_slots()] = np.sin(phase)
    out /= np.sqrt(fm.p)
    return out[0] if single else out


def _check_beta(fm: FeatureMap, beta) -> np.ndarray:
    beta = np.asarray(beta, dtype=float)
    if beta.shape != (fm.p,):
        raise DimensionError(f"weight vector of length {beta.shape} does not match p={fm.p}")
    return beta


def eval_linear(fm: FeatureMap, beta, X):
    beta = _check_beta(fm, beta)
    return features(fm, X) @ beta


@dataclass(frozen=True)
class LinearModel:
    """``x -> beta^T phi(x)``; callable on a batch of inputs."""

    fm: FeatureMap
    beta: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "beta", _check_beta(self.fm, self.beta))

    def __call__(self, X):
        return eval_linear(self.fm, self.beta, X)

    @property
    def d(self) -> int:
        return self.fm.d

    @property
    def period(self) -> float:
        return self.fm.period


def sample_uniform_inputs(M: int, d: int, rng, period: float = TWO_PI) -> np.ndarray:
    if M < 1 or d < 1:
        raise ValueError("M and d must be positive")
    X = as_generator(rng).uniform(0.0, period, size=(M, d))
    # uniform() can round up to the endpoint
    return np.where(X >= period, 0.0, X)


def _as_inputs(X) -> np.ndarray:
    X = np.asarray(X, dtype=float)
    return X.reshape(-1, 1) if X.ndim <= 1 else X


@dataclass(frozen=True)
class Dataset:
    inputs: np.ndarray
    targets: np.ndarray
    period: float = TWO_PI

    def __post_init__(self):
        X = _as_inputs(self.inputs)
        y = np.asarray(self.targets, dtype=float).reshape(-1)
        if X.shape[0] != y.shape[0] or X.shape[0] < 1:
            raise ValueError(f"{X.shape[0]} inputs but {y.shape[0]} targets")
        if np.any(X < 0) or np.any(X >= self.period):
            raise ValueError(f"inputs must lie in [0, {self.period:g})")
        if len(X) > 1:
            diff = X[:, None, :] - X[None, :, :]
            dist = np.sqrt((diff ** 2).sum(-1))
            np.fill_diagonal(dist, np.inf)
            if dist.min() <= 1e-9:
                raise ValueError("duplicate datapoints (pairwise distance <= 1e-9)")
        object.__setattr__(self, "inputs", X)
        object.__setattr__(self, "targets", y)

    @property
    def M(self) -> int:
        return len(self.targets)

    @property
    def d(self) -> int:
        return self.inputs.shape[1]

    @classmethod
    def from_function(cls, f, X, period: float = TWO_PI) -> "Dataset":
        X = _as_inputs(X)
        return cls(X, np.asarray(f(X), dtype=float), period)


def data_matrix(fm: FeatureMap, ds: Dataset | np.ndarray) -> np.ndarray:
    X = ds.inputs if isinstance(ds, Dataset) else _as_inputs(ds)
    return features(fm, X)


def gram(fm: FeatureMap, X) -> np.ndarray:
    """Kernel matrix ``K_ij = phi(x_i)^T phi(x_j)``."""
    Phi = data_matrix(fm, X)
    K = Phi @ Phi.T
    return 0.5 * (K + K.T)


def parseval_variance(fm: FeatureMap, beta) -> float:
    """Exact Var_x[beta^T phi(x)] for x uniform over one period."""
    beta = _check_beta(fm, beta)
    nonconst = beta[fm.offset:]
    return float(nonconst @ nonconst / (2.0 * fm.p))
