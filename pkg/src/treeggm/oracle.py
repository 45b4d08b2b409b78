"""Brute-force references for the closed forms and for Kruskal."""
from __future__ import annotations

import itertools
import math
from functools import lru_cache

import numpy as np
from scipy import integrate
from scipy.special import logsumexp

from .bounds import CrossoverParams
from .chowliu import EstimatedTree, check_weights
from .errors import ParameterError
from .ggm import prufer_decode

MAX_EXACT_N = 5000
MAX_BRUTE_D = 8


@lru_cache(maxsize=4)
def _log_factorials(n: int) -> np.ndarray:
    return np.concatenate([[0.0], np.cumsum(np.log(np.arange(1, n + 1)))])


def log_exact_crossover(params: CrossoverParams, n: int) -> float:
    """log Pr(sum of n i.i.d. T >= 0), T in {0, +1, -1} w.p. (p0, p1, p2).

    Sums the multinomial terms with ``n1 >= n2`` (ties count as crossover).
    """
    if not 1 <= n <= MAX_EXACT_N:
        raise ParameterError(f"n must be in [1, {MAX_EXACT_N}], got {n}")
    lf = _log_factorials(n)
    with np.errstate(divide="ignore"):
        lp0, lp1, lp2 = np.log([params.p0, params.p1, params.p2])
    chunks = []
    for n1 in range(n + 1):
        n2 = np.arange(0, min(n1, n - n1) + 1)
        n0 = n - n1 - n2
        terms = lf[n] - lf[n0] - lf[n1] - lf[n2]
        # 0 * log(0) = 0 for empty categories
        terms = terms + _xlogp(n0, lp0) + _xlogp(n1, lp1) + _xlogp(n2, lp2)
        chunks.append(terms)
    return float(logsumexp(np.concatenate(chunks)))


def _xlogp(k, logp):
    k = np.asarray(k, dtype=float)
    if np.isneginf(logp):
        return np.where(k == 0, 0.0, -np.inf)
    return k * logp


def exact_crossover(params: CrossoverParams, n: int) -> float:
    return min(1.0, math.exp(log_exact_crossover(params, n)))


@lru_cache(maxsize=None)
def all_labeled_trees(d: int) -> np.ndarray:
    """Every labeled tree on ``d`` nodes as an array ``(d**(d-2), d-1, 2)`` of sorted edges."""
    if not 2 <= d <= MAX_BRUTE_D:
        raise ParameterError(f"brute-force enumeration needs 2 <= d <= {MAX_BRUTE_D}, got {d}")
    trees = [
        sorted(prufer_decode(seq, d)) for seq in itertools.product(range(d), repeat=d - 2)
    ]
    out = np.array(trees, dtype=np.int64).reshape(len(trees), d - 1, 2)
    out.setflags(write=False)
    return out


def brute_mwst(w) -> EstimatedTree:
    """Maximum total weight over all labeled trees.

    Among tied trees, the winner has the smallest edge list when each list is
    sorted by (-weight, u, v), which is the order Kruskal scans edges in.
    """
    w = check_weights(w)
    d = len(w)
    trees = all_labeled_trees(d)
    ew = w[trees[..., 0], trees[..., 1]]
    totals = ew.sum(axis=1)
    best = np.flatnonzero(totals == totals.max())

    def key(t):
        return sorted((-w[u, v], u, v) for u, v in trees[t])

    winner = min(best, key=key)
    return EstimatedTree(d, frozenset((int(u), int(v)) for u, v in trees[winner]))


def numeric_orthant_check(rho: float) -> float:
    """Pr(x > 0, y > 0) for a standard bivariate normal pair, by adaptive quadrature.

    Integrates the density in polar coordinates over the first quadrant; the
    mass concentrates along the diagonal as |rho| -> 1, so that angle is a
    breakpoint for the outer integral.
    """
    if not abs(rho) < 1:
        raise ParameterError(f"|rho| must be < 1, got {rho}")
    s = 1.0 - rho * rho
    c = 1.0 / (2 * math.pi * math.sqrt(s))

    def density_r(r, phi):
        return c * r * math.exp(-r * r * (1 - rho * math.sin(2 * phi)) / (2 * s))

    inner = {"limit": 200, "epsabs": 1e-13, "epsrel": 1e-12}
    outer = {"limit": 200, "epsabs": 1e-12, "epsrel": 1e-12, "points": [math.pi / 4]}
    val, _ = integrate.nquad(density_r, [[0, math.inf], [0, math.pi / 2]], opts=[inner, outer])
    return float(val)


def rival_gap_grid(alpha: float, beta: float, points: int = 1000) -> float:
    """Grid minimum of (asin(rho_e) - asin(eta * rho_e)) / pi over rho_e, eta in [alpha, beta]."""
    if not 0 < alpha <= beta < 1:
        raise ParameterError(f"need 0 < alpha <= beta < 1, got alpha={alpha}, beta={beta}")
    rho_e = np.linspace(alpha, beta, points)[:, None]
    eta = np.linspace(alpha, beta, points)[None, :]
    return float(np.min(np.arcsin(rho_e) - np.arcsin(eta * rho_e)) / math.pi)
