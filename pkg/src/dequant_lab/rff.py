"""Importance-sampled random-feature approximation of Fourier linear models.

A feature column ``phi_k`` of the map is viewed as ``sqrt(q_k) * b_k`` where
``b_k = phi_k / sqrt(q_k)`` is the basis function attached to sampling
probability ``q_k``.  The Monte Carlo estimator puts weight ``beta_k / sqrt(q_k)``
on ``b_k`` per draw and averages over the ``D`` draws, which makes it unbiased
for ``f = beta^T phi``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from dequant_lab.fourier.analysis import l2_mu_distance
from dequant_lab.fourier.features import Dataset, FeatureMap, LinearModel, data_matrix, features
from dequant_lab.numeric import SeededRng, as_generator

DELTA = 0.05


@dataclass(frozen=True)
class SamplingDistribution:
    q: np.ndarray

    def __post_init__(self):
        q = np.asarray(self.q, dtype=float)
        if q.ndim != 1 or np.any(q < 0) or abs(q.sum() - 1.0) > 1e-12:
            raise ValueError("q must be a nonnegative vector summing to 1")
        object.__setattr__(self, "q", q)

    @classmethod
    def uniform(cls, p: int) -> "SamplingDistribution":
        return cls(np.full(p, 1.0 / p))

    @classmethod
    def leverage(cls, beta) -> "SamplingDistribution":
        """``q_i`` proportional to ``|beta_i|``."""
        w = np.abs(np.asarray(beta, dtype=float))
        return cls(w / w.sum())

    @classmethod
    def point_mass(cls, p: int, index: int) -> "SamplingDistribution":
        q = np.zeros(p)
        q[index] = 1.0
        return cls(q)

    def __len__(self):
        return len(self.q)


@dataclass(frozen=True)
class RffEstimator:
    """``f_hat(x) = sum_k coeffs[k] * phi_{indices[k]}(x) / sqrt(q_{indices[k]})``.

    ``indices`` keeps every draw (with repetitions); ``coeffs`` are per draw.
    """

    indices: np.ndarray
    coeffs: np.ndarray
    q: np.ndarray
    fm: FeatureMap

    def __post_init__(self):
        if len(self.indices) < 1:
            raise ValueError("an estimator needs at least one sampled feature")

    @property
    def D(self) -> int:
        return len(self.indices)

    def feature_weights(self) -> np.ndarray:
        """Equivalent weight vector on the full feature map."""
        w = np.zeros(self.fm.p)
        np.add.at(w, self.indices, self.coeffs / np.sqrt(self.q[self.indices]))
        return w

    def __call__(self, X):
        return features(self.fm, X) @ self.feature_weights()

    @property
    def d(self) -> int:
        return self.fm.d

    @property
    def period(self) -> float:
        return self.fm.period


def sample_feature_indices(q: SamplingDistribution, D: int, rng) -> np.ndarray:
    if D < 1:
        raise ValueError("D must be >= 1")
    return as_generator(rng).choice(len(q), size=D, replace=True, p=q.q)


def mc_estimator(fm: FeatureMap, beta, q: SamplingDistribution, S) -> RffEstimator:
    beta = np.asarray(beta, dtype=float)
    S = np.asarray(S, dtype=np.int64)
    qs = q.q[S]
    if np.any(qs <= 0):
        raise ValueError(f"sampled feature(s) {S[qs <= 0].tolist()} have zero probability")
    return RffEstimator(S, beta[S] / np.sqrt(qs) / len(S), q.q, fm)


def refit_estimator(fm: FeatureMap, S, ds: Dataset, ridge: float = 1e-10,
                    q: SamplingDistribution | None = None) -> RffEstimator:
    """Least-squares refit on the sampled columns, ``min ||Phi_S c - y||^2 + ridge ||c||^2``.

    Duplicate draws share one column; the fitted coefficient is attached to the
    first occurrence.  With ``ridge == 0`` the minimum-norm solution is used.
    """
    if ridge < 0:
        raise ValueError("ridge must be >= 0")
    q = q or SamplingDistribution.uniform(fm.p)
    S = np.asarray(S, dtype=np.int64)
    uniq, first = np.unique(S, return_index=True)
    B = data_matrix(fm, ds)[:, uniq] / np.sqrt(q.q[uniq])
    y = ds.targets
    if ridge > 0:
        c_u = np.linalg.solve(B.T @ B + ridge * np.eye(len(uniq)), B.T @ y)
    else:
        c_u = np.linalg.lstsq(B, y, rcond=None)[0]
    coeffs = np.zeros(len(S))
    coeffs[first] = c_u
    return RffEstimator(S, coeffs, q.q, fm)


def error_radius(fm: FeatureMap, beta, q: SamplingDistribution, D: int, delta: float = DELTA) -> float:
    """High-probability error radius ``R / sqrt(D) * (1 + sqrt(2 log(1/delta)))``.

    ``R = max_i |beta_i| * ||b_i||_mu / sqrt(q_i)`` bounds the norm of a single
    draw ``(beta_i / sqrt(q_i)) b_i`` with ``b_i = phi_i / sqrt(q_i)``.
    """
    beta = np.asarray(beta, dtype=float)
    live = beta != 0
    if not np.any(live):
        return 0.0
    if np.any(q.q[live] <= 0):
        return float("inf")
    R = np.max(np.abs(beta[live]) * fm.feature_norms_mu()[live] / q.q[live])
    return float(R / np.sqrt(D) * (1.0 + np.sqrt(2.0 * np.log(1.0 / delta))))


@dataclass
class RffCurveRow:
    D: int
    mean_error: float
    stderr: float
    bound: float
    violation_rate: float


def rff_error_curve(fm: FeatureMap, target_beta, q: SamplingDistribution, D_list,
                    trials: int, n_mc: int, rng: SeededRng,
                    delta: float = DELTA) -> list[RffCurveRow]:
    """Mean L2(mu) error of the Monte Carlo estimator for every D in ``D_list``."""
    if not len(D_list):
        raise ValueError("D_list must be nonempty")
    target = LinearModel(fm, target_beta)
    rows = []
    for i, D in enumerate(D_list):
        bound = error_radius(fm, target_beta, q, D, delta)
        errs = np.empty(trials)
        for t in range(trials):
            r = rng.child(i).child(t)
            S = sample_feature_indices(q, D, r.child(0))
            est = mc_estimator(fm, target_beta, q, S)
            errs[t] = l2_mu_distance(est, target, n_mc, r.child(1)).distance
        rows.append(RffCurveRow(
            D=int(D),
            mean_error=float(errs.mean()),
            stderr=float(errs.std(ddof=1) / np.sqrt(trials)) if trials > 1 else 0.0,
            bound=bound,
            violation_rate=float(np.mean(errs > bound)),
        ))
    return rows


def loglog_slope(xs, ys) -> float:
    return float(np.polyfit(np.log(xs), np.log(ys), 1)[0])


def mnls_rff_bound(K: np.ndarray, M: int, D: int, max_phi_norm: float) -> float:
    """``M * max_i ||phi_i||_mu / (sqrt(D) * lambda_min(K))``."""
    lam = float(np.linalg.eigvalsh(0.5 * (K + K.T))[0])
    if lam <= 0:
        raise np.linalg.LinAlgError(f"kernel matrix is singular (lambda_min = {lam:.3e})")
    return M * max_phi_norm / (np.sqrt(D) * lam)
