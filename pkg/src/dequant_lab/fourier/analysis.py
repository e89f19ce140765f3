"""Function-space distances, kernel eigenvalue statistics and the
norm-gap / sup-distance separation bounds."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, NamedTuple

import numpy as np

from dequant_lab.fourier.features import (
    TWO_PI, Dataset, FeatureMap, LinearModel, data_matrix, gram, sample_uniform_inputs,
)
from dequant_lab.numeric import SeededRng

Evaluatable = Callable[[np.ndarray], np.ndarray]


def _domain(f, g, d, period):
    d = d if d is not None else getattr(f, "d", None) or getattr(g, "d", None)
    if d is None:
        raise ValueError("input dimension d is required for plain callables")
    if period is None:
        period = max(getattr(f, "period", TWO_PI), getattr(g, "period", TWO_PI))
    return d, period


class L2Estimate(NamedTuple):
    distance: float
    squared: float
    stderr_squared: float


def l2_mu_distance(f: Evaluatable, g: Evaluatable, n_mc: int, rng,
                   d: int | None = None, period: float | None = None) -> L2Estimate:
    """Monte Carlo estimate of ``sqrt(E_x (f - g)^2)`` with x uniform on the torus.

    The reported standard error refers to the squared distance.
    """
    if n_mc < 2:
        raise ValueError("n_mc must be >= 2")
    d, period = _domain(f, g, d, period)
    X = sample_uniform_inputs(n_mc, d, rng, period)
    sq = (np.asarray(f(X)) - np.asarray(g(X))) ** 2
    m = float(sq.mean())
    return L2Estimate(np.sqrt(m), m, float(sq.std(ddof=1) / np.sqrt(n_mc)))


def _grid(points_per_dim: int, d: int, period: float):
    axis = np.arange(points_per_dim) * (period / points_per_dim)
    if d == 1:
        yield axis.reshape(-1, 1)
        return
    # chunk over the first coordinate to bound memory
    rest = np.array(list(itertools.product(axis, repeat=d - 1)))
    for a in axis:
        yield np.column_stack([np.full(len(rest), a), rest])


def sup_distance_grid(f: Evaluatable, g: Evaluatable, grid_points_per_dim: int,
                      d: int | None = None, period: float | None = None,
                      seed: int = 0) -> float:
    """Lower bound on ``sup_x |f(x) - g(x)|``.

    Dense regular grid for ``d <= 3``.  Doubling the resolution refines the
    grid, so the estimate never decreases.  For ``d > 3`` a fixed random stream
    of ``256 * grid_points_per_dim`` points is scanned; larger resolutions see a
    superset of the same points.
    """
    d, period = _domain(f, g, d, period)
    best = 0.0
    if d <= 3:
        for X in _grid(grid_points_per_dim, d, period):
            best = max(best, float(np.max(np.abs(f(X) - g(X)))))
        return best
    gen = np.random.Generator(np.random.Philox(seed))
    remaining = 256 * grid_points_per_dim
    while remaining > 0:
        n = min(remaining, 65536)
        X = gen.uniform(0.0, period, size=(n, d))
        best = max(best, float(np.max(np.abs(f(X) - g(X)))))
        remaining -= n
    return best


def maximize_abs(h: Evaluatable, starts: np.ndarray, steps: int = 200,
                 init_step: float = 0.1, fd: float = 1e-6) -> tuple[float, np.ndarray]:
    """Batched finite-difference ascent of ``|h|`` from every row of ``starts``.

    Each start keeps its own step length, grown on success and halved on
    failure.  Returns the best value and where it was found.
    """
    X = np.array(starts, dtype=float, copy=True)
    n, d = X.shape
    val = np.abs(h(X))
    eta = np.full(n, init_step)
    eye = np.eye(d) * fd
    for _ in range(steps):
        grad = np.empty_like(X)
        for k in range(d):
            grad[:, k] = (np.abs(h(X + eye[k])) - np.abs(h(X - eye[k]))) / (2 * fd)
        gnorm = np.linalg.norm(grad, axis=1)
        gnorm[gnorm == 0] = 1.0
        trial = X + (eta / gnorm)[:, None] * grad
        tval = np.abs(h(trial))
        up = tval > val
        X[up], val[up] = trial[up], tval[up]
        eta = np.where(up, eta * 1.5, eta * 0.5)
        if np.all(eta < 1e-10):
            break
    i = int(np.argmax(val))
    return float(val[i]), X[i]


def refined_sup_distance(f: Evaluatable, g: Evaluatable, grid_points_per_dim: int,
                         n_starts: int = 32, d: int | None = None,
                         period: float | None = None, steps: int = 200) -> float:
    """Grid scan followed by local ascent from the best grid points."""
    d, period = _domain(f, g, d, period)
    h = lambda X: f(X) - g(X)
    pts, vals = [], []
    if d <= 3:
        batches = _grid(grid_points_per_dim, d, period)
    else:
        gen = np.random.Generator(np.random.Philox(0))
        batches = [gen.uniform(0.0, period, (256 * grid_points_per_dim, d))]
    for X in batches:
        v = np.abs(h(X))
        top = np.argsort(v)[-n_starts:]
        pts.append(X[top])
        vals.append(v[top])
    pts, vals = np.vstack(pts), np.concatenate(vals)
    starts = pts[np.argsort(vals)[-n_starts:]]
    best, _ = maximize_abs(h, starts, steps=steps, init_step=period / (4 * grid_points_per_dim))
    return max(best, float(vals.max()))


@dataclass
class KernelEigRecord:
    M: int
    trials: int
    n_freq: int
    fraction_above_half: float
    mean_lambda_min: float
    min_lambda_min: float
    mean_s2: float
    stderr_s2: float
    predicted_s2: float
    bound_factor: float
    measured_complement: float
    lambda_mins: np.ndarray = field(default=None, repr=False)
    s2_values: np.ndarray = field(default=None, repr=False)


def kernel_s2(K_unit: np.ndarray) -> float:
    """Spread statistic ``(1/M) sum_{i != j} k_ij^2`` of a unit-diagonal kernel."""
    M = len(K_unit)
    off = K_unit - np.diag(np.diag(K_unit))
    return float((off ** 2).sum() / M)


def kernel_min_eig_experiment(fm: FeatureMap, M: int, trials: int, rng: SeededRng) -> KernelEigRecord:
    """Smallest-eigenvalue statistics of the unit-diagonal kernel matrix.

    The raw kernel has constant diagonal ``||phi(x)||^2``; dividing by it gives
    the kernel with ``k(x, x) = 1`` on which the eigenvalue threshold 1/2 and the
    spread statistic are stated.
    """
    diag = (fm.n_freq + fm.offset) / fm.p
    lams, s2 = np.empty(trials), np.empty(trials)
    for t in range(trials):
        X = sample_uniform_inputs(M, fm.d, rng.child(t), fm.period)
        K = gram(fm, X) / diag
        lams[t] = np.linalg.eigvalsh(K)[0]
        s2[t] = kernel_s2(K)
    n, c = fm.n_freq, fm.offset
    e_k2 = (c + n / 2.0) / (c + n) ** 2
    q = n + c
    denom = q * (q - 8 * (M - 1) ** 2) ** 2
    bound_factor = 4 * (M - 1) ** 2 * q**2 / denom if denom > 0 else float("inf")
    frac = float(np.mean(lams > 0.5))
    return KernelEigRecord(
        M=M, trials=trials, n_freq=n,
        fraction_above_half=frac,
        mean_lambda_min=float(lams.mean()),
        min_lambda_min=float(lams.min()),
        mean_s2=float(s2.mean()),
        stderr_s2=float(s2.std(ddof=1) / np.sqrt(trials)) if trials > 1 else float("nan"),
        predicted_s2=(M - 1) * e_k2,
        bound_factor=bound_factor,
        measured_complement=1.0 - frac,
        lambda_mins=lams,
        s2_values=s2,
    )


class SeparationError(ValueError):
    pass


@dataclass
class SeparationRecord:
    lhs_sup: float
    rhs_norm_gap: float
    lipschitz_L: float
    reverse_c: float
    norm_difference: float
    lhs_sup_refined: float | None = None

    @property
    def forward_holds(self) -> bool:
        return self.lhs_sup <= self.lipschitz_L * self.rhs_norm_gap + 1e-6

    @property
    def reverse_holds(self) -> bool | None:
        if self.lhs_sup_refined is None:
            return None
        return self.norm_difference <= self.reverse_c * self.lhs_sup_refined + 1e-9


def reverse_lipschitz_constant(fm: FeatureMap, rng: SeededRng, attempts: int = 10,
                               eig_floor: float = 1e-12) -> float:
    """``sqrt(p) * lambda_min(K_{x_1..x_p})^{-1/2}`` for p distinct points.

    In one dimension the equispaced grid is tried first; it makes the feature
    matrix orthogonal.  Otherwise (or if that fails) p uniform points are drawn.
    """
    candidates = []
    if fm.d == 1:
        candidates.append(np.arange(fm.p).reshape(-1, 1) * (fm.period / fm.p))
    candidates += [lambda a=a: sample_uniform_inputs(fm.p, fm.d, rng.child(a), fm.period)
                   for a in range(attempts)]
    for X in candidates:
        X = X() if callable(X) else X
        lam = np.linalg.eigvalsh(gram(fm, X))[0]
        if lam > eig_floor:
            return float(np.sqrt(fm.p) / np.sqrt(lam))
    raise SeparationError(f"no {fm.p} independent points found in {attempts} attempts")


def separation_bounds(fm: FeatureMap, beta_q, beta_mnls, ds: Dataset, grid: int,
                      rng: SeededRng, refine: bool = False, tol: float = 1e-8) -> SeparationRecord:
    beta_q, beta_mnls = np.asarray(beta_q, float), np.asarray(beta_mnls, float)
    resid = np.max(np.abs(data_matrix(fm, ds) @ beta_q - ds.targets))
    if resid > tol:
        raise SeparationError(f"beta_Q does not interpolate the data (max residual {resid:.2e})")
    fq, fc = LinearModel(fm, beta_q), LinearModel(fm, beta_mnls)
    gap2 = float(beta_q @ beta_q - beta_mnls @ beta_mnls)
    lhs = sup_distance_grid(fq, fc, grid)
    # ||phi(x)||^2 is the same for every x
    L = float(np.sqrt((fm.n_freq + fm.offset) / fm.p))
    return SeparationRecord(
        lhs_sup=lhs,
        rhs_norm_gap=float(np.sqrt(max(gap2, 0.0))),
        lipschitz_L=L,
        reverse_c=reverse_lipschitz_constant(fm, rng),
        norm_difference=float(np.linalg.norm(beta_q) - np.linalg.norm(beta_mnls)),
        lhs_sup_refined=refined_sup_distance(fq, fc, grid) if refine else None,
    )
