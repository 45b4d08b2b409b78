"""Monte Carlo experiments behind the CLI subcommands and the scripts/ drivers.

Each experiment takes a dataclass config and returns a list of row dicts whose
keys are the CSV columns, in order.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import bounds
from .chowliu import kruskal_mwst, parse_method, recover_tree
from .estimators import sample_corr, theta_of_rho
from .ggm import WeightedTree, chain_tree, covariance_from_tree, sample_gaussian, shard, star_tree
from .oracle import MAX_EXACT_N, log_exact_crossover
from .quantizers import build_codebook, decode, persym_encode, reconstruction_distortion
from .simnet import ProtocolConfig, budget_sweep, run_protocol
from .trials import map_trials, trial_seed


@dataclass
class SweepConfig:
    tree: WeightedTree
    n_list: list[int]
    methods: list = field(default_factory=lambda: ["sign", 1, 2, 4, "raw"])
    trials: int = 1000
    seed: int = 0
    workers: int = 1


def _sweep_trial(args):
    cov, truth, n, methods, ss = args
    x = sample_gaussian(cov, n, ss)
    return [recover_tree(x, m).edges != truth for m in methods]


def sweep_n_R(cfg: SweepConfig) -> list[dict]:
    """Exact-match tree error rate for every (method, n)."""
    methods = [parse_method(m) for m in cfg.methods]
    cov = covariance_from_tree(cfg.tree)
    truth = cfg.tree.edge_set()
    rows = []
    for n in cfg.n_list:
        jobs = [(cov, truth, n, methods, trial_seed(cfg.seed, t, n)) for t in range(cfg.trials)]
        wrong = np.array(map_trials(_sweep_trial, jobs, cfg.workers), dtype=bool)
        for c, m in enumerate(methods):
            rows.append({
                "method": "persym" if isinstance(m, int) else m,
                "R": m if isinstance(m, int) else (1 if m == "sign" else ""),
                "n": n,
                "error_rate": float(wrong[:, c].mean()),
                "trials": cfg.trials,
            })
    return rows


def error_rates(rows: list[dict]) -> dict[tuple[str, int], float]:
    """``{(method_label, n): error_rate}`` from :func:`sweep_n_R` rows."""
    out = {}
    for r in rows:
        label = f"R{r['R']}" if r["method"] == "persym" else r["method"]
        out[(label, r["n"])] = r["error_rate"]
    return out


@dataclass
class CrossoverConfig:
    rho1: float = 0.9
    rho2: float = 0.1
    n_list: list[int] = field(default_factory=lambda: [10, 50, 100, 200, 500, 1000, 2000])
    trials: int = 1000
    seed: int = 0


def crossover_table(cfg: CrossoverConfig) -> list[dict]:
    """Monte Carlo and exact crossover probability on the chain 0 - 1 - 2, next to both bounds.

    Pair e = (0, 1) has weight rho1 and e' = (1, 2) has weight rho2; the event is
    theta_hat_e <= theta_hat_e'.
    """
    cov = covariance_from_tree(chain_tree([cfg.rho1, cfg.rho2]))
    rows = []
    for n in cfg.n_list:
        hits = 0
        for t in range(cfg.trials):
            s = np.where(sample_gaussian(cov, n, trial_seed(cfg.seed, t, n)) >= 0, 1, -1)
            agree_e = np.count_nonzero(s[:, 0] == s[:, 1])
            agree_e2 = np.count_nonzero(s[:, 1] == s[:, 2])
            hits += agree_e <= agree_e2
        rep = bounds.crossover_report(cfg.rho1, cfg.rho2, n)
        log_p = log_exact_crossover(rep.params, n) if n <= MAX_EXACT_N else math.nan
        rows.append({
            "n": n,
            "empirical_p": hits / cfg.trials,
            "exact_p": math.exp(log_p),
            "chernoff": rep.chernoff_bound,
            "hoeffding": rep.hoeffding_bound,
            "exact_exponent": -log_p / n,
            "E": rep.chernoff_exponent,
        })
    return rows


@dataclass
class StarConfig:
    d: int = 20
    rho: float = 0.5
    n_list: list[int] = field(default_factory=lambda: [500, 1000, 2000, 4000])
    trials: int = 1000
    seed: int = 0
    workers: int = 1


def _star_trial(args):
    cov, truth, n, ss = args
    est, _ = run_protocol(shard(sample_gaussian(cov, n, ss)), ProtocolConfig("sign"))
    return est.edges != truth


def star_bound_table(cfg: StarConfig) -> list[dict]:
    tree = star_tree(cfg.d, cfg.rho)
    cov = covariance_from_tree(tree)
    truth = tree.edge_set()
    rows = []
    for n in cfg.n_list:
        jobs = [(cov, truth, n, trial_seed(cfg.seed, t, n)) for t in range(cfg.trials)]
        wrong = map_trials(_star_trial, jobs, cfg.workers)
        rows.append({
            "n": n,
            "empirical_tree_error": float(np.mean(wrong)),
            "theorem1_bound": bounds.tree_error_bound(cfg.d, n, abs(cfg.rho), abs(cfg.rho)),
        })
    return rows


@dataclass
class RelErrConfig:
    R_list: list[int] = field(default_factory=lambda: list(range(1, 9)))
    rho: float = 0.5
    n: int = 1000
    trials: int = 1000
    seed: int = 0


def _neg_log_over(x: float, scale: float) -> float:
    return -math.log(x) / scale if x > 0 else math.inf


def rel_err_table(cfg: RelErrConfig) -> list[dict]:
    """E|rho_bar - rho_bar_q| per bit rate against the distortion bound."""
    cov = np.array([[1.0, cfg.rho], [cfg.rho, 1.0]])
    cbs = [build_codebook(R) for R in cfg.R_list]
    errs = np.empty((cfg.trials, len(cbs)))
    for t in range(cfg.trials):
        x = sample_gaussian(cov, cfg.n, trial_seed(cfg.seed, t))
        rho_bar = sample_corr(x[:, 0], x[:, 1])
        for c, cb in enumerate(cbs):
            u = decode(persym_encode(x[:, 0], cb), cb)
            v = decode(persym_encode(x[:, 1], cb), cb)
            errs[t, c] = abs(rho_bar - sample_corr(u, v))
    rows = []
    for c, cb in enumerate(cbs):
        D = reconstruction_distortion(cb)
        emp = float(errs[:, c].mean())
        bound = bounds.relative_error_bound(D, D)
        rows.append({
            "R": cb.R,
            "empirical_err_rel": emp,
            "bound": bound,
            "empirical_exponent": _neg_log_over(emp, cb.R),
            "bound_exponent": _neg_log_over(bound, cb.R),
        })
    return rows


@dataclass
class BudgetConfig:
    K: int = 1000
    n: int = 1000
    rho: float = 0.5
    R_list: list[int] = field(default_factory=lambda: list(range(1, 9)))
    trials: int = 1000
    seed: int = 0


def budget_table(cfg: BudgetConfig) -> list[dict]:
    cov = np.array([[1.0, cfg.rho], [cfg.rho, 1.0]])
    rows = []
    for r in budget_sweep(cov, cfg.n, cfg.K, cfg.R_list, cfg.trials, cfg.seed):
        rows.append({
            "R": r.R,
            "m": r.m,
            "err_est": r.err_est,
            "stderr": r.stderr,
            "bound": bounds.estimation_error_bound(r.R, r.m, cfg.rho),
        })
    return rows


def bounds_summary(d: int, n: int, alpha: float, beta: float, rho1: float, rho2: float,
                   R: int, rho: float) -> list[dict]:
    """Every closed-form bound for one configuration, as (quantity, value) rows."""
    rep = bounds.crossover_report(rho1, rho2, n)
    D = reconstruction_distortion(build_codebook(R))
    items = [
        ("p0", rep.params.p0),
        ("p1", rep.params.p1),
        ("p2", rep.params.p2),
        ("chernoff_exponent", rep.chernoff_exponent),
        ("chernoff_bound", rep.chernoff_bound),
        ("hoeffding_bound", rep.hoeffding_bound),
        ("rival_gap", bounds.rival_gap(alpha, beta)),
        ("tree_error_bound", bounds.tree_error_bound(d, n, alpha, beta)),
        ("distortion", D),
        ("relative_error_bound", bounds.relative_error_bound(D, D)),
        ("estimation_error_bound", bounds.estimation_error_bound(R, n, rho)),
    ]
    return [{"quantity": k, "value": v} for k, v in items]


def true_theta_weights(tree: WeightedTree) -> np.ndarray:
    """Infinite-sample sign weights |theta - 1/2| from the exact covariance."""
    return np.abs(theta_of_rho(covariance_from_tree(tree)) - 0.5)


def infinite_sample_tree(tree: WeightedTree):
    return kruskal_mwst(true_theta_weights(tree))

