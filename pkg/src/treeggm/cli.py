"""Command-line experiment harness.

Every subcommand writes CSV (header row, data rows, then a ``# invocation:``
comment) to ``--out`` or stdout. Exit codes: 0 ok, 2 parameter error,
3 ingestion/data error, 4 numeric error.
"""
from __future__ import annotations

import argparse
import csv
import io
import shlex
import sys
from pathlib import Path

from . import experiments as ex
from .chowliu import parse_method
from .errors import ParameterError, TreeGGMError
from .ggm import random_tree, star_tree
from .skeleton import load_csv_matrix, recover_skeleton, select_dims, skeleton_tree
from .treeio import format_tree, read_tree_edges, read_weighted_tree

FULL = {
    "trials": 1000,
    "sweep_n": [500, 1000, 2000, 4000, 8000, 16000],
    "sweep_methods": ["sign", "1", "2", "4", "raw"],
    "crossover_n": [10, 50, 100, 200, 500, 1000, 2000],
    "star_n": [500, 1000, 2000, 4000],
    "R": list(range(1, 9)),
}
FAST = {
    "trials": 100,
    "sweep_n": [500, 2000, 8000],
    "sweep_methods": ["sign", "1", "4", "raw"],
    "crossover_n": [10, 100, 500, 2000],
    "star_n": [500, 2000],
    "R": [1, 2, 4, 8],
}


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _str_list(text: str) -> list[str]:
    return [t.strip() for t in text.split(",") if t.strip()]


def _fmt(v) -> str:
    return repr(v) if isinstance(v, float) else str(v)


def render_csv(rows: list[dict], invocation: list[str]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    if rows:
        w.writerow(rows[0].keys())
        for r in rows:
            w.writerow(_fmt(v) for v in r.values())
    buf.write("# invocation: treeggm " + shlex.join(invocation) + "\n")
    return buf.getvalue()


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _profile(args) -> dict:
    return FAST if getattr(args, "fast", False) else FULL


def _trials(args) -> int:
    trials = args.trials if args.trials is not None else _profile(args)["trials"]
    if trials < 1:
        raise ParameterError(f"--trials must be >= 1, got {trials}")
    return trials


def cmd_gen_tree(args) -> str:
    if args.kind == "star":
        tree = star_tree(args.d, args.rho)
    elif args.kind == "skeleton":
        tree = skeleton_tree(args.weight_low, args.weight_high, args.seed)
    else:
        tree = random_tree(args.d, args.weight_low, args.weight_high, args.seed)
    return format_tree(tree)


def cmd_bounds(args) -> list[dict]:
    return ex.bounds_summary(args.d, args.n, args.alpha, args.beta, args.rho1, args.rho2,
                             args.R, args.rho)


def cmd_sweep(args) -> list[dict]:
    prof = _profile(args)
    if args.tree:
        tree = read_weighted_tree(args.tree)
    else:
        tree = random_tree(args.d, args.weight_low, args.weight_high, args.tree_seed)
    methods = [parse_method(m) for m in (args.R or prof["sweep_methods"])]
    cfg = ex.SweepConfig(tree, args.n or prof["sweep_n"], methods, _trials(args), args.seed,
                         args.workers)
    return ex.sweep_n_R(cfg)


def cmd_crossover(args) -> list[dict]:
    n_list = args.n or _profile(args)["crossover_n"]
    return ex.crossover_table(ex.CrossoverConfig(args.rho1, args.rho2, n_list, _trials(args), args.seed))


def cmd_star_bound(args) -> list[dict]:
    n_list = args.n or _profile(args)["star_n"]
    return ex.star_bound_table(ex.StarConfig(args.d, args.rho, n_list, _trials(args), args.seed,
                                             args.workers))


def cmd_rel_err(args) -> list[dict]:
    R_list = args.R or _profile(args)["R"]
    return ex.rel_err_table(ex.RelErrConfig(R_list, args.rho, args.n, _trials(args), args.seed))


def cmd_budget(args) -> list[dict]:
    R_list = args.R or _profile(args)["R"]
    return ex.budget_table(ex.BudgetConfig(args.budget_bits, args.n, args.rho, R_list,
                                           _trials(args), args.seed))


def cmd_skeleton(args) -> str:
    X = select_dims(load_csv_matrix(args.data_csv), args.dims)
    reference = read_tree_edges(args.reference) if args.reference else None
    methods = args.methods or ["raw", "sign", "1", "3", "6"]
    lines = [f"# data: {args.data_csv} n={X.shape[0]} d={X.shape[1]} dims={args.dims or 'all'}"]
    for rec in recover_skeleton(X, methods, reference):
        header = f"[{rec['method']}]"
        if reference is not None:
            header += f" disagreements={rec['disagreements']} edge_f1={rec['edge_f1']:.4f}"
        lines.append(header)
        lines.append(format_tree(rec["tree"]).rstrip("\n"))
    return "\n".join(lines) + "\n"


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="treeggm", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, trials=True):
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--out", help="output file (default: stdout)")
        if trials:
            sp.add_argument("--trials", type=int)
            sp.add_argument("--fast", action="store_true", help="100 trials and reduced grids")

    sp = sub.add_parser("gen-tree", help="write a tree in edge-list format")
    sp.add_argument("--kind", choices=["random", "star", "skeleton"], default="random")
    sp.add_argument("--d", type=int, default=20)
    sp.add_argument("--rho", type=float, default=0.5, help="star edge weight")
    sp.add_argument("--weight-low", type=float, default=0.1)
    sp.add_argument("--weight-high", type=float, default=0.9)
    common(sp, trials=False)
    sp.set_defaults(func=cmd_gen_tree)

    sp = sub.add_parser("bounds", help="evaluate every closed-form bound")
    sp.add_argument("--d", type=int, default=20)
    sp.add_argument("--n", type=int, default=1000)
    sp.add_argument("--alpha", type=float, default=0.5)
    sp.add_argument("--beta", type=float, default=0.5)
    sp.add_argument("--rho1", type=float, default=0.9)
    sp.add_argument("--rho2", type=float, default=0.1)
    sp.add_argument("--R", type=int, default=4)
    sp.add_argument("--rho", type=float, default=0.5)
    common(sp, trials=False)
    sp.set_defaults(func=cmd_bounds)

    sp = sub.add_parser("sweep", help="tree error rate over n and encoding method")
    sp.add_argument("--tree", help="ground-truth tree file (default: random tree)")
    sp.add_argument("--d", type=int, default=20)
    sp.add_argument("--tree-seed", type=int, default=0)
    sp.add_argument("--weight-low", type=float, default=0.1)
    sp.add_argument("--weight-high", type=float, default=0.9)
    sp.add_argument("--n", type=_int_list)
    sp.add_argument("--R", type=_str_list, help="methods, e.g. sign,1,2,4,raw")
    sp.add_argument("--workers", type=int, default=1)
    common(sp)
    sp.set_defaults(func=cmd_sweep)

    sp = sub.add_parser("crossover", help="crossover probability on a 3-node chain")
    sp.add_argument("--rho1", type=float, default=0.9)
    sp.add_argument("--rho2", type=float, default=0.1)
    sp.add_argument("--n", type=_int_list)
    common(sp)
    sp.set_defaults(func=cmd_crossover)

    sp = sub.add_parser("star-bound", help="star-tree error against the tree error bound")
    sp.add_argument("--d", type=int, default=20)
    sp.add_argument("--rho", type=float, default=0.5)
    sp.add_argument("--n", type=_int_list)
    sp.add_argument("--workers", type=int, default=1)
    common(sp)
    sp.set_defaults(func=cmd_star_bound)

    sp = sub.add_parser("rel-err", help="quantization-induced correlation error per bit rate")
    sp.add_argument("--R", type=_int_list)
    sp.add_argument("--rho", type=float, default=0.5)
    sp.add_argument("--n", type=int, default=1000)
    common(sp)
    sp.set_defaults(func=cmd_rel_err)

    sp = sub.add_parser("budget", help="fixed bit budget: quality versus quantity")
    sp.add_argument("--budget-bits", type=int, default=1000)
    sp.add_argument("--n", type=int, default=1000)
    sp.add_argument("--rho", type=float, default=0.5)
    sp.add_argument("--R", type=_int_list)
    common(sp)
    sp.set_defaults(func=cmd_budget)

    sp = sub.add_parser("skeleton", help="recover a tree from a CSV of real data")
    sp.add_argument("data_csv")
    sp.add_argument("--dims", choices=["x", "y", "z"], help="coordinate of (x, y, z) column triples")
    sp.add_argument("--methods", type=_str_list, help="e.g. raw,sign,1,3,6")
    sp.add_argument("--reference", help="reference tree in edge-list format")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_skeleton)
    return p


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(argv)
    try:
        result = args.func(args)
        text = result if isinstance(result, str) else render_csv(result, argv)
        _emit(text, args.out)
    except TreeGGMError as exc:
        print(f"treeggm: error: {exc}", file=sys.stderr)
        return exc.exit_code
    except OSError as exc:
        print(f"treeggm: error: {exc}", file=sys.stderr)
        return 3
    return 0


if __name__ == "__main__":
    sys.exit(main())
