"""Per-machine rate-R encoders: the sign function and the equiprobable scalar quantizer.

Bin indices are 1-based throughout (``1 .. 2**R``); for the sign encoder index 1
means -1 and index 2 means +1, which is the same partition as the R=1 quantizer.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.special import ndtri

from .errors import DataError, ParameterError

MAX_RATE = 16
_INV_SQRT_2PI = 1.0 / np.sqrt(2.0 * np.pi)


def _frozen(a) -> np.ndarray:
    a = np.array(a)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class Codebook:
    """Equiprobable-bin quantizer for a standard normal input.

    ``boundaries`` has ``2**R + 1`` entries starting at -inf and ending at +inf;
    bin ``i`` is the half-open interval ``[boundaries[i-1], boundaries[i])`` and
    reconstructs to ``centroids[i-1]``.
    """

    R: int
    boundaries: np.ndarray
    centroids: np.ndarray
    sigma_u_sq: float

    @property
    def levels(self) -> int:
        return 2**self.R

    def dump(self) -> str:
        lines = [
            f"{i} {self.boundaries[i - 1]:.15g} {self.centroids[i - 1]:.15g}"
            for i in range(1, self.levels + 1)
        ]
        lines.append(f"sigma_u_sq={self.sigma_u_sq:.15g}")
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class QuantizedShard:
    """What machine ``machine_id`` transmits: one bin index per sample."""

    machine_id: int
    R: int
    indices: np.ndarray
    scheme: str = "persym"

    def __post_init__(self):
        idx = np.asarray(self.indices)
        if idx.ndim != 1:
            raise DataError("indices must be 1-D")
        if idx.size and (idx.min() < 1 or idx.max() > 2**self.R):
            raise DataError(f"indices out of range [1, {2**self.R}]")
        object.__setattr__(self, "indices", _frozen(idx.astype(np.int64)))

    @property
    def n(self) -> int:
        return len(self.indices)

    @property
    def signs(self) -> np.ndarray:
        if self.R != 1:
            raise DataError(f"sign view needs a 1-bit shard, got R={self.R}")
        return np.where(self.indices == 2, 1, -1).astype(np.int8)


def sign_encode(shard, machine_id: int = 0) -> QuantizedShard:
    """Element-wise sign with sign(0) = +1."""
    x = np.asarray(shard, dtype=float)
    return QuantizedShard(machine_id, 1, np.where(x >= 0, 2, 1), scheme="sign")


@lru_cache(maxsize=None)
def build_codebook(R: int) -> Codebook:
    if not isinstance(R, (int, np.integer)) or not 1 <= R <= MAX_RATE:
        raise ParameterError(f"bit rate R must be an integer in [1, {MAX_RATE}], got {R!r}")
    R = int(R)
    half = 2 ** (R - 1)
    # lower half from the left tail, mirrored, so the codebook is exactly symmetric
    lower = ndtri(np.arange(1, half) / 2**R)
    boundaries = np.concatenate([[-np.inf], lower, [0.0], -lower[::-1], [np.inf]])

    pdf = np.exp(-0.5 * boundaries[: half + 1] ** 2) * _INV_SQRT_2PI
    pdf[0] = 0.0
    lower_c = 2**R * (pdf[:-1] - pdf[1:])
    centroids = np.concatenate([lower_c, -lower_c[::-1]])
    sigma_u_sq = float(np.sum(centroids**2) / 2**R)
    return Codebook(R, _frozen(boundaries), _frozen(centroids), sigma_u_sq)


def persym_encode(shard, cb: Codebook, machine_id: int = 0) -> QuantizedShard:
    """Index ``i`` with ``a_i <= x < a_{i+1}``."""
    x = np.asarray(shard, dtype=float)
    idx = np.searchsorted(cb.boundaries[1:-1], x, side="right") + 1
    return QuantizedShard(machine_id, cb.R, idx, scheme="persym")


def decode(q: QuantizedShard, cb: Codebook) -> np.ndarray:
    if q.R != cb.R:
        raise DataError(f"shard was encoded at R={q.R} but codebook has R={cb.R}")
    return cb.centroids[q.indices - 1]


def reconstruction_distortion(cb: Codebook) -> float:
    """Mean squared reconstruction error E[(x - u)^2] for x ~ N(0, 1)."""
    return 1.0 - cb.sigma_u_sq
