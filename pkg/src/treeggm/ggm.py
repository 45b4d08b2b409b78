"""Tree-structured Gaussian graphical models and sampling from them.

Variables are zero mean and unit variance, so the covariance is also the
correlation matrix. For a tree model the correlation of any pair equals the
product of the edge weights along the path joining them.
"""
from __future__ import annotations

import heapq
from collections import deque
from dataclasses import dataclass

import numpy as np

from .errors import DataError, NumericError, ParameterError

Edge = tuple[int, int, float]

# Added to the diagonal once when Cholesky fails at machine precision.
CHOLESKY_JITTER = 1e-12


@dataclass(frozen=True)
class WeightedTree:
    """Ground-truth tree: ``d`` nodes and ``d - 1`` weighted edges ``(u, v, rho)``."""

    d: int
    edges: tuple[Edge, ...]

    def __post_init__(self):
        edges = tuple((int(u), int(v), float(rho)) for u, v, rho in self.edges)
        object.__setattr__(self, "edges", edges)
        if self.d < 2:
            raise ParameterError(f"a tree needs at least 2 nodes, got d={self.d}")
        if len(edges) != self.d - 1:
            raise ParameterError(f"expected {self.d - 1} edges, got {len(edges)}")
        for u, v, rho in edges:
            if u == v:
                raise ParameterError(f"self loop on node {u}")
            if not (0 <= u < self.d and 0 <= v < self.d):
                raise ParameterError(f"edge ({u}, {v}) out of range for d={self.d}")
            if not 0 < abs(rho) < 1:
                raise ParameterError(f"edge ({u}, {v}) weight {rho} not in 0 < |rho| < 1")
        if not is_spanning_tree(self.d, [(u, v) for u, v, _ in edges]):
            raise ParameterError("edges do not form a spanning tree")

    def edge_set(self) -> frozenset[tuple[int, int]]:
        return frozenset((min(u, v), max(u, v)) for u, v, _ in self.edges)

    def weights(self) -> dict[tuple[int, int], float]:
        return {(min(u, v), max(u, v)): rho for u, v, rho in self.edges}

    def adjacency(self) -> list[list[tuple[int, float]]]:
        adj: list[list[tuple[int, float]]] = [[] for _ in range(self.d)]
        for u, v, rho in self.edges:
            adj[u].append((v, rho))
            adj[v].append((u, rho))
        return adj

    def flip_signs(self, nodes) -> WeightedTree:
        """Tree of the model with ``x_j -> -x_j`` for every ``j`` in ``nodes``."""
        flipped = set(nodes)
        return WeightedTree(
            self.d,
            tuple(
                (u, v, -rho if (u in flipped) != (v in flipped) else rho)
                for u, v, rho in self.edges
            ),
        )


def is_spanning_tree(d: int, edges) -> bool:
    """True iff ``edges`` (pairs) form a spanning tree on ``range(d)``."""
    edges = list(edges)
    if len(edges) != d - 1:
        return False
    parent = list(range(d))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for u, v in edges:
        if not (0 <= u < d and 0 <= v < d) or u == v:
            return False
        ru, rv = find(u), find(v)
        if ru == rv:
            return False
        parent[ru] = rv
    return True


def prufer_decode(seq, d: int) -> list[tuple[int, int]]:
    """Decode a Prüfer sequence of length ``d - 2`` into the edges of a labeled tree."""
    seq = [int(s) for s in seq]
    if len(seq) != d - 2:
        raise ParameterError(f"Prüfer sequence for d={d} must have length {d - 2}")
    degree = [1] * d
    for s in seq:
        degree[s] += 1
    leaves = [i for i in range(d) if degree[i] == 1]
    heapq.heapify(leaves)
    edges = []
    for s in seq:
        leaf = heapq.heappop(leaves)
        edges.append((min(leaf, s), max(leaf, s)))
        degree[s] -= 1
        if degree[s] == 1:
            heapq.heappush(leaves, s)
    u, v = heapq.heappop(leaves), heapq.heappop(leaves)
    edges.append((u, v))
    return edges


def random_tree(d: int, weight_low: float = 0.1, weight_high: float = 0.9, seed=None) -> WeightedTree:
    """Uniformly random labeled tree (random Prüfer sequence) with uniform edge weights."""
    if d < 2:
        raise ParameterError(f"d must be >= 2, got {d}")
    if not 0 < weight_low <= weight_high < 1:
        raise ParameterError(
            f"need 0 < weight_low <= weight_high < 1, got [{weight_low}, {weight_high}]"
        )
    rng = np.random.default_rng(seed)
    seq = rng.integers(0, d, size=d - 2)
    pairs = prufer_decode(seq, d)
    rhos = rng.uniform(weight_low, weight_high, size=d - 1)
    return WeightedTree(d, tuple((u, v, float(r)) for (u, v), r in zip(pairs, rhos)))


def star_tree(d: int, rho: float) -> WeightedTree:
    """Star with hub 0 and every edge weight equal to ``rho``."""
    if d < 2:
        raise ParameterError(f"d must be >= 2, got {d}")
    return WeightedTree(d, tuple((0, j, float(rho)) for j in range(1, d)))


def chain_tree(rhos) -> WeightedTree:
    """Path 0-1-...-k with the given consecutive edge weights."""
    rhos = list(rhos)
    return WeightedTree(len(rhos) + 1, tuple((i, i + 1, float(r)) for i, r in enumerate(rhos)))


def covariance_from_tree(tree: WeightedTree) -> np.ndarray:
    """Correlation matrix with entry (r, s) equal to the product of weights on Path(r, s)."""
    d = tree.d
    adj = tree.adjacency()
    Q = np.eye(d)
    for root in range(d):
        # BFS carrying the running product from root
        prod = {root: 1.0}
        queue = deque([root])
        while queue:
            a = queue.popleft()
            for b, rho in adj[a]:
                if b not in prod:
                    prod[b] = prod[a] * rho
                    queue.append(b)
        for s, p in prod.items():
            Q[root, s] = p
    # products are computed independently per root; force exact symmetry
    Q = np.triu(Q) + np.triu(Q, 1).T
    return Q


def check_covariance(cov: np.ndarray, atol: float = 1e-12) -> np.ndarray:
    cov = np.asarray(cov, dtype=float)
    if cov.ndim != 2 or cov.shape[0] != cov.shape[1]:
        raise ParameterError(f"covariance must be square, got shape {cov.shape}")
    if not np.allclose(cov, cov.T, atol=atol, rtol=0):
        raise ParameterError("covariance is not symmetric")
    if not np.allclose(np.diag(cov), 1.0, atol=atol, rtol=0):
        raise ParameterError("covariance must have unit diagonal")
    return cov


def cholesky_factor(cov: np.ndarray) -> np.ndarray:
    cov = check_covariance(cov)
    try:
        return np.linalg.cholesky(cov)
    except np.linalg.LinAlgError:
        pass
    try:
        return np.linalg.cholesky(cov + CHOLESKY_JITTER * np.eye(len(cov)))
    except np.linalg.LinAlgError as exc:
        raise NumericError("covariance is not positive semi-definite") from exc


def sample_gaussian(cov: np.ndarray, n: int, seed=None) -> np.ndarray:
    """Draw an ``n x d`` matrix whose rows are i.i.d. N(0, cov)."""
    if n < 1:
        raise ParameterError(f"n must be >= 1, got {n}")
    L = cholesky_factor(cov)
    rng = np.random.default_rng(seed)
    z = rng.standard_normal((n, L.shape[0]))
    return z @ L.T


@dataclass(frozen=True)
class ShardSet:
    """Vertically partitioned samples: machine ``j`` holds column ``j``."""

    columns: tuple[np.ndarray, ...]

    def __post_init__(self):
        cols = tuple(np.asarray(c, dtype=float) for c in self.columns)
        if len(cols) == 0:
            raise DataError("a shard set needs at least one machine")
        n = len(cols[0])
        if any(c.ndim != 1 or len(c) != n for c in cols):
            raise DataError("all shards must be 1-D with the same length")
        object.__setattr__(self, "columns", cols)

    @property
    def d(self) -> int:
        return len(self.columns)

    @property
    def n(self) -> int:
        return len(self.columns[0])

    def __getitem__(self, j: int) -> np.ndarray:
        return self.columns[j]

    def __iter__(self):
        return iter(self.columns)

    def to_matrix(self) -> np.ndarray:
        return np.column_stack(self.columns)


def shard(samples: np.ndarray) -> ShardSet:
    samples = np.asarray(samples, dtype=float)
    if samples.ndim != 2:
        raise DataError(f"samples must be a 2-D matrix, got shape {samples.shape}")
    if not np.all(np.isfinite(samples)):
        raise DataError("samples contain non-finite values")
    return ShardSet(tuple(samples[:, j].copy() for j in range(samples.shape[1])))
