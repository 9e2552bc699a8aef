"""Codegree-deviation and eigenvalue diagnostics of weak pseudo-randomness.

Pair convention: sums over (x, y) run over all ordered pairs of nodes,
diagonal included, with codeg(x, x) = deg(x) = A^2[x, x]. This is the only
convention under which both sum codeg = sum deg^2 and sum codeg^2 = Tr(A^4)
hold exactly (see tests/test_pseudorandom.py for the brute-force check).
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np

from .errors import ResourceCapError
from .metrics import P_COPRIME, squared_blocks
from .spectral import adjacency_lambda1

PAIR_CONVENTION = "ordered pairs (x, y) over V x V including x = y, codeg(x, x) = deg(x)"
DEFAULT_MAX_PAIR_N = 12_000


def _adj(graph) -> np.ndarray:
    return graph if isinstance(graph, np.ndarray) else graph.adjacency


@dataclass(frozen=True)
class CodegreeSums:
    deviation: float
    normalized: float
    sum_codeg: int
    sum_codeg_sq: int


def codegree_sums(graph, p: float = P_COPRIME, max_n: int = DEFAULT_MAX_PAIR_N) -> CodegreeSums:
    """sum |codeg(x,y) - p^2 N|, its N^3 normalisation, and the exact first and
    second codegree moments, all under the ordered-with-diagonal convention.

    Block partial sums are combined with ``math.fsum`` in block order, so the
    result does not depend on how the blocks are scheduled.
    """
    adj = _adj(graph)
    size = adj.shape[0]
    if size > max_n:
        raise ResourceCapError(f"pair loop over N={size} exceeds cap {max_n}")
    if size == 0:
        return CodegreeSums(0.0, 0.0, 0, 0)
    target = p * p * size
    partial_dev, total, total_sq = [], 0, 0
    for _, _, block in squared_blocks(adj):
        partial_dev.append(float(np.abs(block.astype(np.float64) - target).sum()))
        ints = block.astype(np.int64)
        total += int(ints.sum())
        total_sq += int((ints * ints).sum())
    deviation = math.fsum(partial_dev)
    return CodegreeSums(deviation, deviation / size**3, total, total_sq)


def codegree_deviation(graph, **kwargs) -> tuple[float, float]:
    sums = codegree_sums(graph, **kwargs)
    return sums.deviation, sums.normalized


def cycle_length_threshold(N: int, p: float = P_COPRIME) -> int:
    """Largest r with N p (1 - p)^((r - 3)/2) >= 1; never below 3."""
    if N * p < 1:
        return 3
    r = 3 + math.floor(2 * math.log(N * p) / math.log(1 / (1 - p)))
    # guard the floor against rounding at exact equality
    while N * p * (1 - p) ** ((r + 1 - 3) / 2) >= 1:
        r += 1
    while r > 3 and N * p * (1 - p) ** ((r - 3) / 2) < 1:
        r -= 1
    return r


@dataclass
class WprReport:
    n: int | None
    N: int
    p: float
    codeg_deviation_sum: float
    normalized: float
    lambda1_ratio: float
    max_cycle_len_estimate: int
    r_over_log_n: float
    convention: str = PAIR_CONVENTION

    def to_dict(self) -> dict:
        return asdict(self)


def wpr_lambda1_check(graph, p: float = P_COPRIME, **kwargs) -> float:
    """lambda_1 / (N p); ``p = 1`` turns a complete graph into a sanity check."""
    return adjacency_lambda1(graph, **kwargs).value / (_adj(graph).shape[0] * p)


def wpr_report(graph, n: int | None = None, seed: int = 0, max_n: int = DEFAULT_MAX_PAIR_N) -> WprReport:
    adj = _adj(graph)
    n = n if n is not None else getattr(graph, "n", None)
    sums = codegree_sums(adj, max_n=max_n)
    r = cycle_length_threshold(adj.shape[0])
    return WprReport(
        n=n,
        N=adj.shape[0],
        p=P_COPRIME,
        codeg_deviation_sum=sums.deviation,
        normalized=sums.normalized,
        lambda1_ratio=wpr_lambda1_check(adj, seed=seed),
        max_cycle_len_estimate=r,
        r_over_log_n=r / math.log(n) if n and n > 1 else float("nan"),
    )
