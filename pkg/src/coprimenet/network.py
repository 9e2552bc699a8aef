"""The coprime network of composite numbers.

Nodes are the composites in [4, n] in ascending order; two nodes are
adjacent iff their labels are coprime. The adjacency is held as a dense
boolean matrix (the BLAS-friendly form used by the heavy kernels) and is
also exposed as packed 64-bit bitset rows for popcount queries.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Iterable

import numpy as np

from .errors import ConsistencyError, DomainError, ResourceCapError
from .numtheory import FactorSignature, SieveTable, build_sieve, factor_signature, partial_totient

DEFAULT_MAX_N = 100_000
_GCD_BLOCK_ELEMS = 1 << 22


def pack_rows(adjacency: np.ndarray) -> np.ndarray:
    """Pack a boolean matrix into little-endian uint64 bitset rows."""
    n_rows, n_cols = adjacency.shape
    words = max(1, -(-n_cols // 64))
    padded = np.zeros((n_rows, words * 64), dtype=bool)
    padded[:, :n_cols] = adjacency
    packed = np.packbits(padded, axis=1, bitorder="little")
    return np.ascontiguousarray(packed).view(np.uint64)


def popcount(words: np.ndarray) -> int:
    return int(np.bitwise_count(words).sum())


def _freeze(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class CoprimeNetwork:
    n: int
    labels: np.ndarray
    adjacency: np.ndarray
    sieve: SieveTable = field(repr=False)

    @property
    def N(self) -> int:
        return len(self.labels)

    @cached_property
    def degrees(self) -> np.ndarray:
        return _freeze(self.adjacency.sum(axis=1, dtype=np.int64))

    @cached_property
    def edge_count(self) -> int:
        return int(self.degrees.sum()) // 2

    @cached_property
    def index_of(self) -> dict[int, int]:
        return {int(k): i for i, k in enumerate(self.labels)}

    @cached_property
    def bitsets(self) -> np.ndarray:
        return _freeze(pack_rows(self.adjacency))

    @cached_property
    def radicals(self) -> np.ndarray:
        return self.sieve.radical[self.labels]

    def index(self, label: int) -> int:
        try:
            return self.index_of[int(label)]
        except KeyError:
            raise DomainError(f"{label} is not a node of the network for n={self.n}") from None

    def neighbors(self, label: int) -> np.ndarray:
        return self.labels[self.adjacency[self.index(label)]]

    def prefix(self, m: int) -> CoprimeNetwork:
        """Network for the smaller bound ``m``: the induced subgraph on labels <= m.

        Composites enter in ascending order, so this is exactly the growing
        network at step ``m``.
        """
        if not 4 <= m <= self.n:
            raise DomainError(f"prefix bound {m} outside [4, {self.n}]")
        size = m - self.sieve.pi(m) - 1
        return CoprimeNetwork(m, self.labels[:size], self.adjacency[:size, :size], self.sieve)


def _ensure_sieve(n: int, sieve: SieveTable | None) -> SieveTable:
    if sieve is None:
        return build_sieve(max(n, 2))
    if sieve.limit < n:
        raise DomainError(f"sieve limit {sieve.limit} below n={n}")
    return sieve


def build_network(n: int, sieve: SieveTable | None = None, max_n: int = DEFAULT_MAX_N) -> CoprimeNetwork:
    """Batch construction: gcd of radicals over all pairs, row block by row block."""
    if n < 4:
        raise DomainError(f"the network needs n >= 4, got {n}")
    if n > max_n:
        raise ResourceCapError(f"n={n} exceeds the cap max_n={max_n}")
    sieve = _ensure_sieve(n, sieve)
    labels = sieve.composites[sieve.composites <= n]
    rad = sieve.radical[labels]
    size = len(labels)
    adjacency = np.empty((size, size), dtype=bool)
    step = max(1, _GCD_BLOCK_ELEMS // size)
    for start in range(0, size, step):
        stop = min(size, start + step)
        np.equal(np.gcd(rad[start:stop, None], rad[None, :]), 1, out=adjacency[start:stop])
    return CoprimeNetwork(n, _freeze(labels.copy()), _freeze(adjacency), sieve)


class NetworkBuilder:
    """Growing construction: composites are appended one at a time.

    ``add_next`` returns the number of edges the new node brings, which is
    what the telescoping edge-count recurrence predicts.
    """

    def __init__(self, sieve: SieveTable):
        self.sieve = sieve
        self.n = 3
        self.labels: list[int] = []
        self.rows: list[int] = []
        self.edge_count = 0

    def add_next(self) -> tuple[int, int]:
        """Advance to the next composite; returns ``(label, new_edges)``."""
        k = self.n + 1
        while k <= self.sieve.limit and self.sieve.is_prime(k):
            k += 1
        if k > self.sieve.limit:
            raise DomainError(f"next composite beyond sieve limit {self.sieve.limit}")
        idx = len(self.labels)
        row = 0
        for j, other in enumerate(self.labels):
            if math.gcd(k, other) == 1:
                row |= 1 << j
                self.rows[j] |= 1 << idx
        self.labels.append(k)
        self.rows.append(row)
        added = row.bit_count()
        self.edge_count += added
        self.n = k
        return k, added

    def grow_to(self, n: int) -> None:
        while True:
            k = self.n + 1
            while k <= n and self.sieve.is_prime(k):
                k += 1
            if k > n:
                self.n = max(self.n, n)
                return
            self.add_next()

    def to_network(self) -> CoprimeNetwork:
        size = len(self.labels)
        adjacency = np.zeros((size, size), dtype=bool)
        for i, row in enumerate(self.rows):
            for j in range(size):
                if row >> j & 1:
                    adjacency[i, j] = True
        labels = np.array(self.labels, dtype=np.int64)
        return CoprimeNetwork(self.n, _freeze(labels), _freeze(adjacency), self.sieve)


# ---------------------------------------------------------------------------
# Counts and their closed forms


def node_count(n: int, sieve: SieveTable | None = None) -> int:
    """Number of composites in [4, n], checked against n - pi(n) - 1."""
    if n < 4:
        raise DomainError(f"n must be >= 4, got {n}")
    sieve = _ensure_sieve(n, sieve)
    counted = int(np.count_nonzero(sieve.composites <= n))
    formula = n - sieve.pi(n) - 1
    if counted != formula:
        raise ConsistencyError(f"node count {counted} != n - pi(n) - 1 = {formula} at n={n}")
    return counted


def edge_increment(k: int, sieve: SieveTable) -> int:
    """Edges gained when composite ``k`` joins: phi(k) - pi(k) + w(k) - 1."""
    return int(sieve.phi[k]) - sieve.pi(k) + int(sieve.omega[k]) - 1


def edge_count_recurrence(n: int, sieve: SieveTable) -> int:
    ks = sieve.composites[sieve.composites <= n]
    return int((sieve.phi[ks] - sieve.pi_prefix[ks] + sieve.omega[ks] - 1).sum())


def edge_count_exact(net: CoprimeNetwork) -> int:
    """Popcount edge total, checked against the telescoping sum."""
    total = popcount(net.bitsets) // 2
    expected = edge_count_recurrence(net.n, net.sieve)
    if total != expected:
        raise ConsistencyError(f"edge count {total} != telescoping sum {expected} at n={net.n}")
    return total


def edge_count_asymptotic(n: int, sieve: SieveTable | None = None) -> float:
    """Main terms 3n^2/pi^2 + n log log n - n pi(n) + pi(n)(pi(n)+1)/2."""
    if n < 4:
        raise DomainError(f"n must be >= 4, got {n}")
    sieve = _ensure_sieve(n, sieve)
    m = sieve.pi(n)
    return 3.0 * n * n / math.pi**2 + n * math.log(math.log(n)) - n * m + m * (m + 1) / 2


def degree_formula(n: int, k: int | FactorSignature, sieve: SieveTable) -> int:
    """phi(n, k) - pi(n) + w(k) - 1: composites in [4, n] coprime to k."""
    sig = k if isinstance(k, FactorSignature) else factor_signature(k, sieve)
    return partial_totient(n, sig) - sieve.pi(n) + sig.omega - 1


def degree_of(net: CoprimeNetwork, k: int) -> int:
    i = net.index(k)
    deg = popcount(net.bitsets[i])
    expected = degree_formula(net.n, k, net.sieve)
    if deg != expected:
        raise ConsistencyError(f"degree of {k} is {deg}, formula gives {expected} (n={net.n})")
    return deg


def max_degree_closed_form(n: int, sieve: SieveTable) -> tuple[int, int]:
    """``(p_r^2, n - n // p_r - pi(n))`` with p_r the largest prime with p_r^2 <= n."""
    p_r = int(sieve.primes[sieve.pi(math.isqrt(n)) - 1])
    return p_r * p_r, n - n // p_r - sieve.pi(n)


def max_degree(net: CoprimeNetwork) -> tuple[int, int]:
    i = int(np.argmax(net.degrees))
    label, deg = int(net.labels[i]), int(net.degrees[i])
    node, closed = max_degree_closed_form(net.n, net.sieve)
    if deg != closed or int(net.degrees[net.index(node)]) != deg:
        raise ConsistencyError(f"max degree {deg} at {label}; closed form {closed} at {node} (n={net.n})")
    if deg > net.n - math.isqrt(net.n) - net.sieve.pi(net.n):
        raise ConsistencyError(f"max degree {deg} exceeds n - floor(sqrt n) - pi(n) at n={net.n}")
    return label, deg


def codegree_formula(n: int, k: int, l: int, sieve: SieveTable) -> int:
    sig = factor_signature(k, sieve) * factor_signature(l, sieve)
    return degree_formula(n, sig, sieve)


def codegree(net: CoprimeNetwork, k: int, l: int) -> int:
    if k == l:
        raise DomainError("codegree needs two distinct nodes")
    i, j = net.index(k), net.index(l)
    common = popcount(net.bitsets[i] & net.bitsets[j])
    expected = codegree_formula(net.n, k, l, net.sieve)
    if common != expected:
        raise ConsistencyError(f"codeg({k},{l}) = {common}, formula gives {expected} (n={net.n})")
    return common


def isolated_nodes(net: CoprimeNetwork) -> list[int]:
    return net.labels[net.degrees == 0].tolist()


def isolated_sweep(net: CoprimeNetwork) -> dict[int, list[int]]:
    """Isolated labels of every prefix network ``4 <= m <= net.n``.

    A node k is isolated at bound m exactly while k <= m < (its smallest
    neighbor label), so one pass over first-neighbor labels covers every m.
    Only bounds with at least one isolated node appear in the result.
    """
    adj = net.adjacency
    has_nb = adj.any(axis=1)
    first = np.where(has_nb, net.labels[np.argmax(adj, axis=1)], net.n + 1)
    out: dict[int, list[int]] = {}
    for k, f in zip(net.labels.tolist(), first.tolist()):
        for m in range(k, min(f, net.n + 1)):
            out.setdefault(m, []).append(k)
    return out


# ---------------------------------------------------------------------------
# Export


def write_edge_list(path: str | Path, labels: np.ndarray, adjacency: np.ndarray, header: Iterable[str] = ()) -> int:
    """Write ``u v`` lines (labels, u < v). Returns the number of edges written."""
    iu, ju = np.nonzero(np.triu(adjacency, k=1))
    u, v = labels[iu], labels[ju]
    with open(path, "w") as fh:
        for line in header:
            fh.write(f"# {line}\n")
        for a, b in zip(u.tolist(), v.tolist()):
            fh.write(f"{min(a, b)} {max(a, b)}\n")
    return len(iu)


def read_edge_list(path: str | Path) -> list[tuple[int, int]]:
    edges = []
    with open(path) as fh:
        for line in fh:
            if line.startswith("#") or not line.strip():
                continue
            a, b = line.split()
            edges.append((int(a), int(b)))
    return edges


def node_table(net: CoprimeNetwork) -> list[dict[str, int]]:
    om = net.sieve.omega[net.labels]
    return [
        {"label": int(k), "degree": int(d), "radical": int(r), "omega": int(w)}
        for k, d, r, w in zip(net.labels, net.degrees, net.radicals, om)
    ]
