"""Extremal adjacency and Laplacian eigenvalues by power iteration.

lambda_1(A) comes from power iteration on A + (Delta/2) I, which keeps the
top eigenvalue dominant in magnitude even for bipartite graphs. lambda_N(L)
comes from power iteration on L = D - A, and lambda_2(L) from power
iteration on lambda_N I - L with the all-ones kernel projected out every
step. Iteration runs on a small block of vectors with Rayleigh-Ritz
extraction: nodes with equal radicals are twins, and twins put exact
eigenvalues (their degree, with multiplicity) right next to lambda_2. For N <= ``DENSE_CUTOFF`` the default path is a dense symmetric
eigensolve, which also serves as the oracle for the iterative path.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import Callable

import numpy as np

from .errors import ConvergenceError, DisconnectedError, DomainError
from .metrics import P_COPRIME, connected_components

DENSE_CUTOFF = 400
DEFAULT_TOL = 1e-9
DEFAULT_RESIDUAL_TOL = 1e-6
DEFAULT_MAX_ITER = 100_000
DEFAULT_BLOCK = 24
RNG_NAME = "numpy PCG64"


def _adj(graph) -> np.ndarray:
    return graph if isinstance(graph, np.ndarray) else graph.adjacency


@dataclass(frozen=True)
class EigenEstimate:
    value: float
    vector: np.ndarray
    iterations: int
    residual: float


def power_iteration(
    matvec: Callable[[np.ndarray], np.ndarray],
    size: int,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
    seed: int = 0,
    project: Callable[[np.ndarray], np.ndarray] | None = None,
    residual_tol: float = DEFAULT_RESIDUAL_TOL,
    block: int = 1,
    scale: float = 0.0,
) -> EigenEstimate:
    """Dominant eigenpair of a symmetric positive semidefinite operator.

    ``matvec`` must accept an ``(size, block)`` array. With ``block > 1`` this
    is simultaneous (block) power iteration: the block is re-orthonormalised
    every step and the top Ritz pair of the Rayleigh-Ritz projection is the
    estimate, so eigenvalues clustered just below the top one no longer stall
    convergence. Stops once successive Ritz values agree to ``tol`` relative
    and the residual ||Mv - theta v|| is at most ``residual_tol * max(1, theta)``.
    ``scale`` is an operator-norm floor for the relative test; without it a
    (numerically) zero operator would never settle.
    """
    if tol <= 0:
        raise DomainError("tol must be positive")
    block = max(1, min(block, size - (1 if project is not None else 0)))
    rng = np.random.Generator(np.random.PCG64(seed))
    basis = rng.standard_normal((size, block))
    if project is not None:
        basis = project(basis)
    basis, _ = np.linalg.qr(basis)
    theta_prev = math.inf
    theta, residual, vec = 0.0, math.inf, basis[:, 0]
    for it in range(1, max_iter + 1):
        image = matvec(basis)
        if project is not None:
            image = project(image)
        gram = basis.T @ image
        ritz_vals, ritz_vecs = np.linalg.eigh((gram + gram.T) / 2)
        s = ritz_vecs[:, -1]
        theta = float(ritz_vals[-1])
        vec = basis @ s
        residual = float(np.linalg.norm(image @ s - theta * vec))
        if abs(theta - theta_prev) < tol * max(abs(theta), scale) and residual <= residual_tol * max(1.0, abs(theta)):
            return EigenEstimate(theta, vec, it, residual)
        if not np.any(image):
            return EigenEstimate(0.0, vec, it, 0.0)
        basis, _ = np.linalg.qr(image @ ritz_vecs[:, ::-1])
        theta_prev = theta
    raise ConvergenceError(
        f"power iteration did not converge in {max_iter} steps (residual {residual:.3e})",
        theta, vec, residual, max_iter,
    )


def _project_ones(x: np.ndarray) -> np.ndarray:
    return x - x.mean(axis=0)


def adjacency_lambda1(graph, tol: float = DEFAULT_TOL, max_iter: int = DEFAULT_MAX_ITER, seed: int = 0,
                      block: int = 4) -> EigenEstimate:
    adj = _adj(graph)
    size = adj.shape[0]
    if size < 1:
        raise DomainError("empty graph")
    a = adj.astype(np.float64)
    shift = float(adj.sum(axis=1).max()) / 2.0
    est = power_iteration(lambda x: a @ x + shift * x, size, tol, max_iter, seed, block=block)
    residual = float(np.linalg.norm(a @ est.vector - (est.value - shift) * est.vector))
    return EigenEstimate(est.value - shift, est.vector, est.iterations, residual)


def lambda1_ratio(graph, **kwargs) -> float:
    """lambda_1 / (N * 6/pi^2)."""
    size = _adj(graph).shape[0]
    return adjacency_lambda1(graph, **kwargs).value / (size * P_COPRIME)


@dataclass(frozen=True)
class LaplacianExtremes:
    lambda2: float
    lambdaN: float
    solver: str
    iterations: int
    residual: float
    fiedler: np.ndarray | None = None

    @property
    def ratio(self) -> float:
        return self.lambdaN / self.lambda2


def laplacian(adj: np.ndarray) -> np.ndarray:
    a = adj.astype(np.float64)
    return np.diag(a.sum(axis=1)) - a


def dense_spectrum(graph) -> np.ndarray:
    """All Laplacian eigenvalues, ascending (LAPACK symmetric solver)."""
    return np.linalg.eigvalsh(laplacian(_adj(graph)))


def dense_adjacency_spectrum(graph) -> np.ndarray:
    return np.linalg.eigvalsh(_adj(graph).astype(np.float64))


def laplacian_extremes(
    graph,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
    seed: int = 0,
    method: str = "auto",
    residual_tol: float = DEFAULT_RESIDUAL_TOL,
    block: int = DEFAULT_BLOCK,
) -> LaplacianExtremes:
    adj = _adj(graph)
    size = adj.shape[0]
    comps = connected_components(adj)
    if comps != 1:
        raise DisconnectedError(f"graph has {comps} components; lambda_2 = 0", comps)
    if size < 2:
        raise DomainError("need at least 2 nodes")
    if method == "auto":
        method = "full" if size <= DENSE_CUTOFF else "iterative"
    if method == "full":
        vals = dense_spectrum(adj)
        return LaplacianExtremes(float(vals[1]), float(vals[-1]), "full", 0, 0.0)
    if method != "iterative":
        raise DomainError(f"unknown method {method!r}")

    a = adj.astype(np.float64)
    deg = a.sum(axis=1)

    def lap(x):
        return (deg * x.T).T - a @ x

    top = power_iteration(lap, size, tol, max_iter, seed, residual_tol=residual_tol, block=block)
    lam_n = top.value
    shifted = power_iteration(
        lambda x: lam_n * x - lap(x), size, tol, max_iter, seed + 1,
        project=_project_ones, residual_tol=residual_tol, block=block, scale=lam_n,
    )
    v = shifted.vector
    lam2 = float(v @ lap(v))
    residual = max(top.residual, float(np.linalg.norm(lap(v) - lam2 * v)))
    return LaplacianExtremes(lam2, lam_n, "iterative", top.iterations + shifted.iterations, residual, v)


@dataclass
class SpectralSummary:
    n: int | None
    N: int
    lambda1_adj: float
    lambda2_lap: float
    lambdaN_lap: float
    sync_ratio: float
    solver: str
    iterations: int
    residual_norm: float
    seed: int

    def to_dict(self) -> dict:
        return asdict(self)


def spectral_summary(graph, n: int | None = None, tol: float = DEFAULT_TOL, max_iter: int = DEFAULT_MAX_ITER,
                     seed: int = 0, method: str = "auto") -> SpectralSummary:
    adj = _adj(graph)
    lam1 = adjacency_lambda1(adj, tol, max_iter, seed)
    ext = laplacian_extremes(adj, tol, max_iter, seed, method)
    return SpectralSummary(
        n=n if n is not None else getattr(graph, "n", None),
        N=adj.shape[0],
        lambda1_adj=lam1.value,
        lambda2_lap=ext.lambda2,
        lambdaN_lap=ext.lambdaN,
        sync_ratio=ext.ratio,
        solver=ext.solver,
        iterations=lam1.iterations + ext.iterations,
        residual_norm=max(lam1.residual, ext.residual),
        seed=seed,
    )
