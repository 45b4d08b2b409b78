"""Edge-list text format shared by ground-truth and estimated trees.

::

    d=4
    0 1 0.5
    1 2 -0.3
    1 3 0.8

Estimated trees omit the weight column. Blank lines and ``#`` comments are ignored.
"""
from __future__ import annotations

from pathlib import Path

from .chowliu import EstimatedTree
from .errors import IngestionError, ParameterError
from .ggm import WeightedTree, is_spanning_tree


def format_tree(tree) -> str:
    lines = [f"d={tree.d}"]
    if isinstance(tree, WeightedTree):
        lines += [f"{u} {v} {rho:.15g}" for u, v, rho in tree.edges]
    else:
        lines += [f"{u} {v}" for u, v in sorted(tree.edges)]
    return "\n".join(lines) + "\n"


def parse_edge_list(text: str, source: str = "<text>") -> tuple[int, list[tuple]]:
    d = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if d is None:
            if not line.startswith("d="):
                raise IngestionError(f"{source}:{lineno}: expected header 'd=<n>', got {line!r}")
            try:
                d = int(line[2:])
            except ValueError:
                raise IngestionError(f"{source}:{lineno}: bad node count {line[2:]!r}") from None
            continue
        parts = line.split()
        if len(parts) not in (2, 3):
            raise IngestionError(f"{source}:{lineno}: expected 'u v [rho]', got {line!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
            rho = float(parts[2]) if len(parts) == 3 else None
        except ValueError:
            raise IngestionError(f"{source}:{lineno}: non-numeric field in {line!r}") from None
        edges.append((u, v, rho))
    if d is None:
        raise IngestionError(f"{source}: missing 'd=<n>' header")
    if not is_spanning_tree(d, [(u, v) for u, v, _ in edges]):
        raise IngestionError(f"{source}: edges do not form a spanning tree on {d} nodes")
    return d, edges


def read_weighted_tree(path) -> WeightedTree:
    d, edges = parse_edge_list(Path(path).read_text(), str(path))
    if any(rho is None for *_, rho in edges):
        raise IngestionError(f"{path}: every edge needs a weight")
    try:
        return WeightedTree(d, tuple(edges))
    except ParameterError as exc:
        raise IngestionError(f"{path}: {exc}") from None


def read_tree_edges(path) -> EstimatedTree:
    """Structure only; weights, if present, are ignored."""
    d, edges = parse_edge_list(Path(path).read_text(), str(path))
    return EstimatedTree(d, frozenset((u, v) for u, v, _ in edges))


def write_tree(tree, path) -> None:
    Path(path).write_text(format_tree(tree))
