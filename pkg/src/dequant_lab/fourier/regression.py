"""Least-squares estimators on a Fourier feature map: MNLS, gradient descent,
and the underparameterized normal-equations solution."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from dequant_lab.fourier.features import Dataset, FeatureMap, _check_beta, data_matrix
from dequant_lab.numeric import DimensionError


class SingularKernelError(np.linalg.LinAlgError):
    def __init__(self, message: str, lambda_min: float):
        super().__init__(message)
        self.lambda_min = lambda_min


def mnls(fm: FeatureMap, ds: Dataset, eig_floor: float = 1e-10) -> np.ndarray:
    """Minimum-norm interpolant ``Phi^T (Phi Phi^T)^{-1} y``."""
    Phi = data_matrix(fm, ds)
    M, p = Phi.shape
    if p <= M:
        raise DimensionError(f"MNLS needs p > M (overparameterized), got p={p}, M={M}")
    K = Phi @ Phi.T
    K = 0.5 * (K + K.T)
    lam = np.linalg.eigvalsh(K)[0]
    if lam <= eig_floor:
        raise SingularKernelError(f"kernel matrix is singular: lambda_min = {lam:.3e}", float(lam))
    return Phi.T @ np.linalg.solve(K, ds.targets)


def empirical_risk(fm: FeatureMap, beta, ds: Dataset) -> float:
    beta = _check_beta(fm, beta)
    r = data_matrix(fm, ds) @ beta - ds.targets
    return float(r @ r / ds.M)


def underparameterized_fit(fm: FeatureMap, ds: Dataset) -> np.ndarray:
    """Ordinary least squares ``(Phi^T Phi)^{-1} Phi^T y`` for ``p <= M``."""
    Phi = data_matrix(fm, ds)
    M, p = Phi.shape
    if p > M:
        raise DimensionError(f"normal equations need p <= M, got p={p}, M={M}")
    G = Phi.T @ Phi
    if np.linalg.eigvalsh(0.5 * (G + G.T))[0] <= 1e-12 * np.trace(G):
        raise np.linalg.LinAlgError("Phi^T Phi is not full rank")
    return np.linalg.solve(G, Phi.T @ ds.targets)


@dataclass
class GDResult:
    beta: np.ndarray
    iterations: int
    residual: float
    converged: bool
    step: float
    trajectory: list[np.ndarray] = field(default_factory=list, repr=False)
    steps: list[int] = field(default_factory=list, repr=False)


def max_step(fm: FeatureMap, ds: Dataset) -> float:
    """``1 / lambda_max(Phi^T Phi)``, the largest admissible GD step."""
    s = np.linalg.norm(data_matrix(fm, ds), 2)
    return 1.0 / s**2


def gd_train(fm: FeatureMap, ds: Dataset, step: float | None = None,
             iters: int | None = None, beta0=None, tol: float = 1e-10,
             max_iters: int = 10**6, record_every: int | None = 1) -> GDResult:
    """Full-batch gradient descent ``b <- b + step * Phi^T (y - Phi b)``.

    With ``iters`` given, exactly that many updates are made.  Otherwise the loop
    stops once ``||Phi b - y|| < tol`` or after ``max_iters`` updates.
    ``record_every=None`` keeps only the first and last iterate.
    """
    Phi = data_matrix(fm, ds)
    y = ds.targets
    gmax = max_step(fm, ds)
    if step is None:
        step = 0.9 * gmax
    if not 0.0 < step <= gmax * (1.0 + 1e-12):
        raise ValueError(f"step {step:g} outside (0, {gmax:g}]")
    beta = np.zeros(fm.p) if beta0 is None else _check_beta(fm, beta0).copy()

    traj, at = [beta.copy()], [0]
    limit = max_iters if iters is None else iters
    r = y - Phi @ beta
    res = float(np.linalg.norm(r))
    k = 0
    while k < limit and (iters is not None or res >= tol):
        beta += step * (Phi.T @ r)
        k += 1
        r = y - Phi @ beta
        res = float(np.linalg.norm(r))
        if record_every and k % record_every == 0:
            traj.append(beta.copy())
            at.append(k)
    if at[-1] != k:
        traj.append(beta.copy())
        at.append(k)
    return GDResult(beta, k, res, res < tol, step, traj, at)
