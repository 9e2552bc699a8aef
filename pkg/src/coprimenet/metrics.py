"""Path, clustering and cycle statistics of a network.

Functions take any graph object with boolean ``adjacency`` (and, for
coprime-specific closed forms, a :class:`CoprimeNetwork`). Integer counts
that go through BLAS use float32 blocks whose entries stay below 2**24, so
the results are exact; everything is cast back to int64 or Python int.
"""

from __future__ import annotations

import math
import time
from collections import Counter
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .errors import DomainError, ResourceCapError
from .network import CoprimeNetwork, max_degree
from .numtheory import factor_signature

P_COPRIME = 6.0 / math.pi**2
_FLOAT32_EXACT = 1 << 24
_BLOCK_ELEMS = 1 << 23


def _adj(graph) -> np.ndarray:
    return graph if isinstance(graph, np.ndarray) else graph.adjacency


def _row_blocks(size: int):
    step = max(1, _BLOCK_ELEMS // max(size, 1))
    for start in range(0, size, step):
        yield start, min(size, start + step)


def squared_blocks(adj: np.ndarray):
    """Yield ``(start, stop, A[start:stop] @ A)`` as exact float32 blocks."""
    size = adj.shape[0]
    if size >= _FLOAT32_EXACT:
        raise ResourceCapError("graph too large for exact float32 products")
    a = adj.astype(np.float32)
    for start, stop in _row_blocks(size):
        yield start, stop, a[start:stop] @ a


# ---------------------------------------------------------------------------
# Density and degree


class Density(NamedTuple):
    value: float
    gap: float


def link_density(graph) -> Density:
    """2E / (N(N-1)) and its distance from 6/pi^2."""
    adj = _adj(graph)
    size = adj.shape[0]
    if size < 2:
        raise DomainError("link density undefined for fewer than 2 nodes")
    edges = int(adj.sum(dtype=np.int64)) // 2
    value = 2 * edges / (size * (size - 1))
    return Density(value, abs(value - P_COPRIME))


def average_degree(graph) -> float:
    adj = _adj(graph)
    if adj.shape[0] < 1:
        raise DomainError("average degree of an empty graph")
    return int(adj.sum(dtype=np.int64)) / adj.shape[0]


def loglog_slope(xs, ys) -> float:
    """Least-squares exponent of ``y ~ x**alpha``."""
    slope, _ = np.polyfit(np.log(np.asarray(xs, float)), np.log(np.asarray(ys, float)), 1)
    return float(slope)


def degree_histogram(graph) -> dict[int, int]:
    adj = _adj(graph)
    counts = Counter(adj.sum(axis=1, dtype=np.int64).tolist())
    return dict(sorted(counts.items()))


# ---------------------------------------------------------------------------
# Distances


def bfs_distances(graph, source: int) -> np.ndarray:
    """Unweighted distances from node index ``source``; -1 marks unreachable.

    Frontier expansion ORs the adjacency rows of the current frontier.
    """
    adj = _adj(graph)
    dist = np.full(adj.shape[0], -1, dtype=np.int64)
    dist[source] = 0
    seen = np.zeros(adj.shape[0], dtype=bool)
    seen[source] = True
    frontier = seen.copy()
    level = 0
    while frontier.any():
        level += 1
        reach = adj[frontier].any(axis=0) & ~seen
        dist[reach] = level
        seen |= reach
        frontier = reach
    return dist


def connected_components(graph) -> int:
    adj = _adj(graph)
    unseen = np.ones(adj.shape[0], dtype=bool)
    count = 0
    while unseen.any():
        count += 1
        src = int(np.argmax(unseen))
        unseen[bfs_distances(adj, src) >= 0] = False
    return count


@dataclass(frozen=True)
class DiameterResult:
    diameter: int | None
    components: int

    @property
    def connected(self) -> bool:
        return self.components == 1


def diameter(graph, max_n: int = 12_000) -> DiameterResult:
    """Diameter by all-sources BFS, advanced one level at a time.

    The level-k reach matrix R_k (pairs within distance k) grows by
    R_{k+1} = R_k | (R_k A > 0); the diameter is the first k with R_k full.
    """
    adj = _adj(graph)
    size = adj.shape[0]
    if size > max_n:
        raise ResourceCapError(f"all-pairs BFS on N={size} exceeds cap {max_n}")
    if size <= 1:
        return DiameterResult(0, size)
    reach = adj | np.eye(size, dtype=bool)
    level = 1
    a = adj.astype(np.float32)
    while not reach.all():
        grown = reach | ((reach.astype(np.float32) @ a) > 0)
        if np.array_equal(grown, reach):
            return DiameterResult(None, connected_components(adj))
        reach = grown
        level += 1
    return DiameterResult(level, 1)


# ---------------------------------------------------------------------------
# Triangles and clustering


def triangles_per_node(graph) -> np.ndarray:
    """T(k) = (1/2) sum over neighbours i, j of k of A[i, j] = diag(A^3)/2."""
    adj = _adj(graph)
    out = np.empty(adj.shape[0], dtype=np.int64)
    for start, stop, sq in squared_blocks(adj):
        walks = (sq * adj[start:stop]).sum(axis=1, dtype=np.float64)
        out[start:stop] = np.rint(walks).astype(np.int64) // 2
    return out


def triangle_count(graph) -> int:
    return int(triangles_per_node(graph).sum()) // 3


def asymptotic_clustering(k: int, sieve) -> float:
    """(6/pi^2) * prod over p | k of p^2 / (p^2 - 1)."""
    value = P_COPRIME
    for p in factor_signature(k, sieve).distinct_primes:
        value *= p * p / (p * p - 1)
    return value


@dataclass(frozen=True)
class ClusteringRecord:
    label: int
    degree: int
    triangles: int
    local_cc: float
    asymptotic_cc: float
    degenerate: bool = False


def local_clustering_values(graph) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Per node ``(cc, triangles, degenerate)``; nodes of degree < 2 get cc = 0."""
    adj = _adj(graph)
    deg = adj.sum(axis=1, dtype=np.int64)
    tri = triangles_per_node(adj)
    pairs = deg * (deg - 1) // 2
    degenerate = deg < 2
    cc = np.zeros(len(deg))
    np.divide(tri, pairs, out=cc, where=~degenerate)
    return cc, tri, degenerate


def clustering_table(net: CoprimeNetwork) -> list[ClusteringRecord]:
    cc, tri, degenerate = local_clustering_values(net)
    return [
        ClusteringRecord(int(k), int(d), int(t), float(c), asymptotic_clustering(int(k), net.sieve), bool(g))
        for k, d, t, c, g in zip(net.labels, net.degrees, tri, cc, degenerate)
    ]


def local_clustering(net: CoprimeNetwork, k: int) -> ClusteringRecord:
    i = net.index(k)
    row = net.adjacency[i]
    deg = int(row.sum())
    sub = net.adjacency[np.ix_(row, row)]
    tri = int(sub.sum(dtype=np.int64)) // 2
    degenerate = deg < 2
    cc = 0.0 if degenerate else tri / (deg * (deg - 1) // 2)
    return ClusteringRecord(int(k), deg, tri, cc, asymptotic_clustering(int(k), net.sieve), degenerate)


def average_local_clustering(graph) -> float:
    cc, _, _ = local_clustering_values(graph)
    return math.fsum(cc.tolist()) / len(cc) if len(cc) else 0.0


# ---------------------------------------------------------------------------
# Cycles and closed walks


def labeled_cycles_exact(graph, r: int, max_work: float = 5e7) -> int:
    """Ordered r-tuples of distinct nodes with consecutive and wrap-around adjacency.

    Depth-first over Python-int bitset rows; the last vertex is counted with a
    popcount instead of being enumerated.
    """
    if r < 3:
        raise DomainError("cycles need r >= 3")
    adj = _adj(graph)
    size = adj.shape[0]
    if r > size:
        return 0
    mean_deg = adj.sum() / max(size, 1)
    work = size * max(mean_deg, 1.0) ** (r - 2)
    if not (size <= 60 or r <= 5) or work > max_work:
        raise ResourceCapError(f"exact {r}-cycle enumeration on N={size} exceeds the work guard")
    rows = [int.from_bytes(np.packbits(row, bitorder="little").tobytes(), "little") for row in adj]

    def extend(start: int, cur: int, visited: int, depth: int) -> int:
        if depth == r - 1:
            return (rows[cur] & rows[start] & ~visited).bit_count()
        total = 0
        cand = rows[cur] & ~visited
        while cand:
            low = cand & -cand
            nxt = low.bit_length() - 1
            total += extend(start, nxt, visited | low, depth + 1)
            cand ^= low
        return total

    return sum(extend(s, s, 1 << s, 1) for s in range(size))


def matrix_power_exact(adj: np.ndarray, k: int) -> np.ndarray:
    """A^k with exact integer entries (int64, or Python ints past int64 range)."""
    size = adj.shape[0]
    bound = size ** max(k - 1, 0)
    if bound < 2**53:
        a = adj.astype(np.float64)
        out = np.eye(size)
        for _ in range(k):
            out = out @ a
        return np.rint(out).astype(np.int64)
    a = adj.astype(object)
    out = np.eye(size, dtype=np.int64).astype(object)
    for _ in range(k):
        out = out.dot(a)
    return out


def closed_walks(graph, r: int) -> int:
    """Tr(A^r) in exact arithmetic via Tr(A^h (A^(r-h))^T) with h = r // 2."""
    if r < 2:
        raise DomainError("closed walks need r >= 2")
    adj = _adj(graph)
    h = r // 2
    left = matrix_power_exact(adj, h)
    right = left if r - h == h else matrix_power_exact(adj, r - h)
    if left.dtype != object and right.dtype != object and float(adj.shape[0]) ** r < 2**62:
        return int((left * right).sum())
    return int(sum(int(x) for x in (left.astype(object) * right.astype(object)).ravel()))


@dataclass(frozen=True)
class CycleCountRecord:
    r: int
    exact_labeled: int | None
    closed_walks: int
    upper_bound: float
    wpr_estimate: float


def cycle_record(net: CoprimeNetwork, r: int, max_work: float = 5e7) -> CycleCountRecord:
    try:
        exact = labeled_cycles_exact(net, r, max_work=max_work)
    except ResourceCapError:
        exact = None
    p = P_COPRIME
    bound = (net.n * p) ** r
    wpr = float(net.N) ** r * p**r * (1 - p) ** (r * (r - 3) / 2)
    return CycleCountRecord(r, exact, closed_walks(net, r), bound, wpr)


# ---------------------------------------------------------------------------
# Summary row


@dataclass
class NetworkStats:
    n: int
    N: int
    E: int
    link_density: float
    avg_degree: float
    max_degree: int
    diameter: int | str
    avg_clustering: float
    config: dict = field(default_factory=dict)
    timestamp: float | None = None


def network_stats(net: CoprimeNetwork, with_diameter: bool = True, with_clustering: bool = True,
                  config: dict | None = None, stamp: bool = True) -> NetworkStats:
    if with_diameter:
        res = diameter(net)
        diam: int | str = res.diameter if res.connected else f"disconnected({res.components})"
    else:
        diam = "skipped"
    return NetworkStats(
        n=net.n,
        N=net.N,
        E=net.edge_count,
        link_density=link_density(net).value if net.N >= 2 else float("nan"),
        avg_degree=average_degree(net),
        max_degree=max_degree(net)[1],
        diameter=diam,
        avg_clustering=average_local_clustering(net) if with_clustering else float("nan"),
        config=dict(config or {}),
        timestamp=time.time() if stamp else None,
    )
