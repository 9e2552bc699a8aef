"""Seeded comparison graphs: G(N, M) Erdos-Renyi and Barabasi-Albert.

All randomness comes from ``numpy.random.Generator(PCG64(seed))``, so a
(N, parameters, seed) triple always yields the same adjacency.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import DisconnectedError, DomainError
from .metrics import connected_components
from .network import CoprimeNetwork, pack_rows

RNG_ALGORITHM = "PCG64"


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


@dataclass(frozen=True, eq=False)
class RandomGraph:
    family: str
    N: int
    target_edges: int
    adjacency: np.ndarray
    seed: int
    params: dict

    @cached_property
    def degrees(self) -> np.ndarray:
        return self.adjacency.sum(axis=1, dtype=np.int64)

    @cached_property
    def achieved_edges(self) -> int:
        return int(self.degrees.sum()) // 2

    @property
    def edge_count(self) -> int:
        return self.achieved_edges

    @property
    def labels(self) -> np.ndarray:
        return np.arange(self.N, dtype=np.int64)

    @cached_property
    def bitsets(self) -> np.ndarray:
        return pack_rows(self.adjacency)


def _from_pairs(size: int, iu: np.ndarray, ju: np.ndarray) -> np.ndarray:
    adj = np.zeros((size, size), dtype=bool)
    adj[iu, ju] = True
    adj[ju, iu] = True
    adj.setflags(write=False)
    return adj


def gen_er(N: int, M: int, seed: int) -> RandomGraph:
    """Uniform G(N, M): M distinct unordered pairs drawn without replacement."""
    if N < 2:
        raise DomainError("ER generator needs N >= 2")
    pairs = N * (N - 1) // 2
    if not 0 <= M <= pairs:
        raise DomainError(f"M={M} outside [0, {pairs}] for N={N}")
    rng = make_rng(seed)
    chosen = np.sort(rng.choice(pairs, size=M, replace=False))
    iu, ju = np.triu_indices(N, k=1)
    return RandomGraph("ER", N, M, _from_pairs(N, iu[chosen], ju[chosen]), seed, {"M": M})


def ba_edge_count(N: int, m: int) -> int:
    return m * (N - m - 1) + m * (m + 1) // 2


def gen_ba(N: int, m: int, seed: int, target_edges: int | None = None) -> RandomGraph:
    """Preferential attachment from a complete seed graph on m + 1 nodes.

    Each arriving node picks m distinct existing nodes with probability
    proportional to current degree (successive weighted sampling without
    replacement, drawn with exponential race keys).
    """
    if N < 2 or not 1 <= m < N:
        raise DomainError(f"BA generator needs 1 <= m < N, got m={m}, N={N}")
    rng = make_rng(seed)
    adj = np.zeros((N, N), dtype=bool)
    m0 = m + 1
    adj[:m0, :m0] = True
    np.fill_diagonal(adj[:m0, :m0], False)
    deg = np.zeros(N, dtype=np.float64)
    deg[:m0] = m
    for v in range(m0, N):
        keys = rng.exponential(size=v) / deg[:v]
        targets = np.argpartition(keys, m - 1)[:m] if m < v else np.arange(v)
        adj[v, targets] = True
        adj[targets, v] = True
        deg[targets] += 1
        deg[v] = m
    adj.setflags(write=False)
    target = ba_edge_count(N, m) if target_edges is None else target_edges
    return RandomGraph("BA", N, target, adj, seed, {"m": m, "m0": m0})


@dataclass(frozen=True)
class ErParams:
    N: int
    M: int


@dataclass(frozen=True)
class BaParams:
    N: int
    m: int
    target_edges: int

    @property
    def achieved_edges(self) -> int:
        return ba_edge_count(self.N, self.m)


def match_parameters(net: CoprimeNetwork) -> tuple[ErParams, BaParams]:
    """ER gets (N, E) exactly; BA gets m = round(E / N), halves rounded up."""
    size, edges = net.N, net.edge_count
    if size < 2:
        raise DomainError("cannot match generators to a graph with fewer than 2 nodes")
    m = math.floor(edges / size + 0.5)
    m = min(max(m, 1), size - 1)
    return ErParams(size, edges), BaParams(size, m, edges)


def generate_connected(family: str, params: ErParams | BaParams, seed: int, retries: int = 10) -> RandomGraph:
    """Draw until connected, using seeds seed, seed + 1, ... up to ``retries`` extra draws."""
    for attempt in range(retries + 1):
        s = seed + attempt
        if family == "ER":
            g = gen_er(params.N, params.M, s)
        elif family == "BA":
            g = gen_ba(params.N, params.m, s, target_edges=params.target_edges)
        else:
            raise DomainError(f"unknown family {family!r}")
        comps = connected_components(g)
        if comps == 1:
            return g
    err = DisconnectedError(f"{family} stayed disconnected after {retries + 1} draws", comps)
    err.graph = g
    raise err
