"""Per-trial seeding and an optional process pool for Monte Carlo loops."""
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor

import numpy as np


def trial_seed(seed: int, trial: int, *keys: int) -> np.random.SeedSequence:
    """Seed for one trial (optionally per grid point); independent of scheduling."""
    return np.random.SeedSequence([int(seed), int(trial), *map(int, keys)])


def map_trials(fn, args, workers: int = 1) -> list:
    """``[fn(a) for a in args]``, optionally across processes; order is preserved."""
    args = list(args)
    if workers <= 1 or len(args) < 2:
        return [fn(a) for a in args]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, args, chunksize=max(1, len(args) // (4 * workers))))
