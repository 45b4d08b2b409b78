"""Reading skeleton-style CSV recordings and scoring recovered trees against a reference.

A skeleton CSV has one row per time sample. Either every column is one variable,
or columns come in (x, y, z) triples per joint and one coordinate is selected.
"""
from __future__ import annotations

import csv
from pathlib import Path

import numpy as np

from .chowliu import EstimatedTree, method_label, recover_tree
from .errors import IngestionError
from .ggm import WeightedTree, covariance_from_tree, sample_gaussian

# 20-joint Kinect skeleton: 0 hip center, 1 spine, 2 shoulder center, 3 head,
# 4-7 left shoulder/elbow/wrist/hand, 8-11 right arm, 12-15 left hip/knee/ankle/foot,
# 16-19 right leg.
KINECT_SKELETON_EDGES = (
    (0, 1), (1, 2), (2, 3),
    (2, 4), (4, 5), (5, 6), (6, 7),
    (2, 8), (8, 9), (9, 10), (10, 11),
    (0, 12), (12, 13), (13, 14), (14, 15),
    (0, 16), (16, 17), (17, 18), (18, 19),
)
AXES = {"x": 0, "y": 1, "z": 2}


def skeleton_tree(rho_low: float = 0.3, rho_high: float = 0.9, seed=None) -> WeightedTree:
    """Kinect skeleton structure with edge weights drawn uniformly from [rho_low, rho_high]."""
    rng = np.random.default_rng(seed)
    rhos = rng.uniform(rho_low, rho_high, size=len(KINECT_SKELETON_EDGES))
    return WeightedTree(20, tuple((u, v, float(r)) for (u, v), r in zip(KINECT_SKELETON_EDGES, rhos)))


def _is_number(cell: str) -> bool:
    try:
        float(cell)
    except ValueError:
        return False
    return True


def load_csv_matrix(path) -> np.ndarray:
    """Numeric matrix from a CSV; a first row with no numeric cells is taken as a header."""
    path = Path(path)
    rows = []
    with path.open(newline="") as fh:
        for lineno, row in enumerate(csv.reader(fh), 1):
            if not row or all(not c.strip() for c in row):
                continue
            if lineno == 1 and not any(_is_number(c) for c in row):
                continue
            values = []
            for col, cell in enumerate(row, 1):
                try:
                    values.append(float(cell))
                except ValueError:
                    raise IngestionError(
                        f"{path}: row {lineno}, column {col}: non-numeric cell {cell!r}"
                    ) from None
            if rows and len(values) != len(rows[0]):
                raise IngestionError(
                    f"{path}: row {lineno} has {len(values)} columns, expected {len(rows[0])}"
                )
            rows.append(values)
    if not rows:
        raise IngestionError(f"{path}: no data rows")
    X = np.array(rows)
    bad = np.argwhere(~np.isfinite(X))
    if len(bad):
        r, c = bad[0]
        raise IngestionError(f"{path}: data row {r + 1}, column {c + 1}: non-finite value")
    return X


def select_dims(X: np.ndarray, dims: str | None) -> np.ndarray:
    """All columns, or one coordinate from interleaved (x, y, z) joint triples."""
    if dims is None:
        out = X
    else:
        if dims not in AXES:
            raise IngestionError(f"dims must be one of x, y, z, got {dims!r}")
        if X.shape[1] % 3:
            raise IngestionError(f"{X.shape[1]} columns cannot be split into (x, y, z) triples")
        out = X[:, AXES[dims]::3]
    if out.shape[1] < 2:
        raise IngestionError(f"need at least 2 variables, got {out.shape[1]}")
    return out


def standardize(X: np.ndarray) -> np.ndarray:
    """Subtract each column's sample mean and divide by its sample standard deviation."""
    sd = X.std(axis=0)
    zero = np.flatnonzero(sd == 0)
    if len(zero):
        raise IngestionError(f"column {zero[0] + 1} has zero variance")
    return (X - X.mean(axis=0)) / sd


def recover_skeleton(X: np.ndarray, methods, reference=None) -> list[dict]:
    """Run each pipeline on standardized data; score against ``reference`` if given."""
    Z = standardize(np.asarray(X, dtype=float))
    if reference is not None and reference.d != Z.shape[1]:
        raise IngestionError(f"reference has {reference.d} nodes but data has {Z.shape[1]} variables")
    out = []
    for m in methods:
        est: EstimatedTree = recover_tree(Z, m)
        rec = {"method": method_label(m), "tree": est}
        if reference is not None:
            rec["disagreements"] = est.disagreements(reference)
            rec["edge_f1"] = est.edge_f1(reference)
        out.append(rec)
    return out


def synthetic_skeleton_data(n: int, seed=None, rho_low: float = 0.3, rho_high: float = 0.9):
    """Stand-in for real skeleton data: (tree, samples) from a skeleton-shaped tree GGM."""
    ss = np.random.SeedSequence(seed)
    tree_ss, data_ss = ss.spawn(2)
    tree = skeleton_tree(rho_low, rho_high, tree_ss)
    return tree, sample_gaussian(covariance_from_tree(tree), n, data_ss)

