"""Pairwise statistics used as Chow-Liu edge scores.

Gaussian mutual information is in nats; binary mutual information is in bits,
since ``1 - h(theta)`` only reaches 1 at ``theta in {0, 1}`` with base-2 entropy.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DataError, ParameterError
from .quantizers import QuantizedShard


@dataclass(frozen=True)
class PairStats:
    theta_hat: float
    rho_bar: float
    n: int


def gaussian_mi(rho: float) -> float:
    if not abs(rho) < 1:
        raise ParameterError(f"|rho| must be < 1, got {rho}")
    return -0.5 * np.log1p(-rho * rho)


def theta_of_rho(rho):
    """Probability that the signs of a unit-variance normal pair agree."""
    return 0.5 + np.arcsin(rho) / np.pi


def binary_entropy(theta):
    theta = np.asarray(theta, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        h = -theta * np.log2(theta) - (1 - theta) * np.log2(1 - theta)
    return np.where((theta <= 0) | (theta >= 1), 0.0, h)


def binary_mi(theta):
    out = 1.0 - binary_entropy(theta)
    return float(out) if np.ndim(out) == 0 else out


def _check_pair(a, b):
    if len(a) != len(b):
        raise DataError(f"length mismatch: {len(a)} vs {len(b)}")
    if len(a) == 0:
        raise DataError("need at least one sample")


def estimate_theta(qa: QuantizedShard, qb: QuantizedShard) -> PairStats:
    """Fraction of samples whose signs agree, plus the sign-data correlation."""
    _check_pair(qa.indices, qb.indices)
    n = qa.n
    s = int(np.dot(qa.signs.astype(np.int64), qb.signs.astype(np.int64)))
    agree = (s + n) // 2
    return PairStats(agree / n, s / n, n)


def sample_corr(a, b) -> float:
    """Mean of products; inputs are taken to be zero mean and unit variance already."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    _check_pair(a, b)
    return float(np.dot(a, b) / len(a))


def unbiased_rho_sq(rho_bar, n: int):
    """Unbiased estimate of rho^2 from a sample correlation of ``n`` pairs (not clamped)."""
    if n < 1:
        raise ParameterError(f"n must be >= 1, got {n}")
    return n / (n + 1) * (np.square(rho_bar) - 1.0 / n)
