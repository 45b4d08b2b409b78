"""Chow-Liu tree recovery: Kruskal MWST plus the sign, per-symbol and raw-data pipelines."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DataError, ParameterError
from .estimators import unbiased_rho_sq
from .ggm import ShardSet, is_spanning_tree
from .quantizers import Codebook, QuantizedShard, build_codebook, persym_encode, sign_encode

RAW_CLAMP = 1 - 1e-12


@dataclass(frozen=True)
class EstimatedTree:
    d: int
    edges: frozenset[tuple[int, int]]

    def __post_init__(self):
        edges = frozenset((min(u, v), max(u, v)) for u, v in self.edges)
        object.__setattr__(self, "edges", edges)
        if not is_spanning_tree(self.d, edges):
            raise DataError("edge set is not a spanning tree")

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def disagreements(self, reference) -> int:
        """Number of reference edges missing from this tree."""
        return len(_edge_set(reference) - self.edges)

    def edge_f1(self, reference) -> float:
        ref = _edge_set(reference)
        tp = len(self.edges & ref)
        if tp == 0:
            return 0.0
        precision = tp / len(self.edges)
        recall = tp / len(ref)
        return 2 * precision * recall / (precision + recall)


def _edge_set(tree) -> frozenset[tuple[int, int]]:
    if hasattr(tree, "edge_set"):
        return tree.edge_set()
    if hasattr(tree, "edges"):
        tree = tree.edges
    return frozenset((min(e[0], e[1]), max(e[0], e[1])) for e in tree)


def check_weights(w) -> np.ndarray:
    w = np.asarray(w, dtype=float)
    if w.ndim != 2 or w.shape[0] != w.shape[1]:
        raise ParameterError(f"weights must be a square matrix, got shape {w.shape}")
    if w.shape[0] < 2:
        raise ParameterError("need at least 2 nodes")
    iu = np.triu_indices(len(w), 1)
    if not np.all(np.isfinite(w[iu])):
        raise DataError("off-diagonal weights must be finite")
    if not np.array_equal(w[iu], w.T[iu]):
        raise DataError("weight matrix is not symmetric")
    return w


def kruskal_order(w: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Upper-triangle pairs sorted by descending weight, then by (u, v)."""
    u, v = np.triu_indices(len(w), 1)
    order = np.lexsort((v, u, -w[u, v]))
    return u[order], v[order]


def kruskal_mwst(w) -> EstimatedTree:
    w = check_weights(w)
    d = len(w)
    parent = list(range(d))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    chosen = []
    for a, b in zip(*kruskal_order(w)):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
            chosen.append((int(a), int(b)))
            if len(chosen) == d - 1:
                break
    return EstimatedTree(d, frozenset(chosen))


def _check_shards(shards: list[QuantizedShard]) -> tuple[list[QuantizedShard], int]:
    shards = list(shards)
    if len(shards) < 2:
        raise ParameterError("need at least 2 shards")
    n = shards[0].n
    if any(s.n != n for s in shards):
        raise DataError("all shards must have the same length")
    return shards, n


def _symmetric_gram(X: np.ndarray) -> np.ndarray:
    G = X.T @ X
    return 0.5 * (G + G.T)


def weights_from_signs(shards: list[QuantizedShard]) -> np.ndarray:
    """|theta_hat - 1/2| for every pair, computed exactly from integer agreement counts."""
    shards, n = _check_shards(shards)
    U = np.column_stack([s.signs for s in shards]).astype(float)
    # +-1 entries: float sums are exact integers well below 2**53
    S = U.T @ U
    return np.abs(S) / (2.0 * n)


def weights_from_persym(shards: list[QuantizedShard], cb: Codebook) -> np.ndarray:
    """Unbiased rho^2 estimates from decoded centroids."""
    shards, n = _check_shards(shards)
    for s in shards:
        if s.R != cb.R:
            raise DataError(f"machine {s.machine_id} encoded at R={s.R}, codebook has R={cb.R}")
    V = np.column_stack([cb.centroids[s.indices - 1] for s in shards])
    return unbiased_rho_sq(_symmetric_gram(V) / n, n)


def weights_from_raw(shards) -> np.ndarray:
    """Gaussian mutual information of the (clamped) raw sample correlations."""
    X = shards.to_matrix() if isinstance(shards, ShardSet) else np.column_stack(list(shards))
    n = X.shape[0]
    C = np.clip(_symmetric_gram(X) / n, -RAW_CLAMP, RAW_CLAMP)
    return -0.5 * np.log1p(-C * C)


def parse_method(method) -> str | int:
    """Normalize ``'sign'``, ``'raw'``, ``4``, ``'4'`` or ``'R4'``."""
    if isinstance(method, (int, np.integer)):
        build_codebook(int(method))
        return int(method)
    m = str(method).strip().lower()
    if m in ("sign", "raw"):
        return m
    if m.startswith("r"):
        m = m[1:]
    try:
        R = int(m)
    except ValueError:
        raise ParameterError(f"unknown method {method!r}; use sign, raw or a bit rate") from None
    build_codebook(R)
    return R


def method_label(method) -> str:
    m = parse_method(method)
    return m if isinstance(m, str) else f"R{m}"


def edge_weights(samples, method) -> np.ndarray:
    """Encode every column of ``samples`` with ``method`` and return the central weights."""
    m = parse_method(method)
    X = samples.to_matrix() if isinstance(samples, ShardSet) else np.asarray(samples, dtype=float)
    if m == "raw":
        return weights_from_raw(ShardSet(tuple(X.T)))
    if m == "sign":
        return weights_from_signs([sign_encode(X[:, j], j) for j in range(X.shape[1])])
    cb = build_codebook(m)
    return weights_from_persym([persym_encode(X[:, j], cb, j) for j in range(X.shape[1])], cb)


def recover_tree(samples, method) -> EstimatedTree:
    return kruskal_mwst(edge_weights(samples, method))
