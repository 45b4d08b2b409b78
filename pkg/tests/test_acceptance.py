"""Acceptance criteria, one test each; every test prints a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py`` (the lines are also repeated in the
terminal summary).
"""
import math
import os

import mpmath
import numpy as np
import pytest

from treeggm import experiments as ex
from treeggm.bounds import crossover_report, rival_gap
from treeggm.chowliu import kruskal_mwst, recover_tree
from treeggm.estimators import estimate_theta, sample_corr, theta_of_rho, unbiased_rho_sq
from treeggm.ggm import covariance_from_tree, random_tree, sample_gaussian
from treeggm.oracle import brute_mwst, log_exact_crossover, rival_gap_grid
from treeggm.quantizers import MAX_RATE, build_codebook, sign_encode
from treeggm.trials import trial_seed

WORKERS = min(4, os.cpu_count() or 1)
CROSSOVER_N = [10, 50, 100, 200, 500, 1000, 2000]


def test_c1_crossover_oracle_domination(criterion):
    worst = 0.0
    ok = True
    gaps = {}
    for n in CROSSOVER_N:
        rep = crossover_report(0.9, 0.1, n)
        log_p = log_exact_crossover(rep.params, n)
        ok &= log_p <= math.log(rep.chernoff_bound) and log_p <= math.log(rep.hoeffding_bound)
        worst = max(worst, math.exp(log_p) / rep.chernoff_bound)
        gaps[n] = abs(-log_p / n - rep.chernoff_exponent)
    ratio = gaps[2000] / gaps[200]
    ok &= ratio < 0.5
    criterion("C1 crossover", ok,
              f"exact <= Chernoff and Hoeffding at all n (max exact/Chernoff {worst:.3g}); "
              f"exponent gap n=200 {gaps[200]:.5f}, n=2000 {gaps[2000]:.5f}, ratio {ratio:.3f} < 0.5")


def test_c2_star_tree_bound(criterion):
    rows = ex.star_bound_table(ex.StarConfig(20, 0.5, [500, 1000, 2000, 4000], 1000, 0, WORKERS))
    h, h_grid = rival_gap(0.5, 0.5), rival_gap_grid(0.5, 0.5)
    ok = round(h, 3) == round(h_grid, 3)
    ok &= all(r["empirical_tree_error"] <= r["theorem1_bound"] for r in rows)
    table = ", ".join(f"n={r['n']}: {r['empirical_tree_error']:.3f} <= {r['theorem1_bound']:.3g}" for r in rows)
    criterion("C2 star bound", ok, f"h={h:.5f} grid={h_grid:.5f}; {table}")


def test_c3_sweep_behaviour(criterion):
    tree = random_tree(20, 0.1, 0.9, seed=0)
    n_list = [500, 1000, 2000, 4000, 8000, 16000]
    rows = ex.sweep_n_R(ex.SweepConfig(tree, n_list, ["sign", 1, 4, "raw"], 1000, 0, WORKERS))
    err = ex.error_rates(rows)
    a = err[("sign", 4000)] < err[("sign", 500)]
    n_star = next((n for n in n_list if err[("raw", n)] <= 0.10), None)
    b = n_star is not None and abs(err[("R4", n_star)] - err[("raw", n_star)]) <= 0.05
    c = err[("sign", 2000)] <= err[("R1", 2000)] + 0.05
    b_txt = ("raw never <= 0.10" if n_star is None else
             f"n={n_star} R4 {err[('R4', n_star)]:.3f} vs raw {err[('raw', n_star)]:.3f}")
    criterion("C3 sweep", a and b and c,
              f"(a) sign {err[('sign', 500)]:.3f} -> {err[('sign', 4000)]:.3f} [{a}]; (b) {b_txt} [{b}]; "
              f"(c) n=2000 sign {err[('sign', 2000)]:.3f} vs R1 {err[('R1', 2000)]:.3f} [{c}]")


def test_c4_quality_versus_quantity(criterion):
    rows = ex.budget_table(ex.BudgetConfig(1000, 1000, 0.5, list(range(1, 9)), 1000, 0))
    err = {r["R"]: r["err_est"] for r in rows}
    best = min(err, key=err.get)
    ok = best in (3, 4, 5) and err[1] > err[best] and err[8] > err[best]
    ok &= all(r["err_est"] <= r["bound"] for r in rows)
    curve = " ".join(f"{R}:{e:.4f}" for R, e in err.items())
    criterion("C4 budget", ok, f"argmin R={best}; err_est {curve}; bound column dominates")


def test_c5_relative_error_bound(criterion):
    rows = ex.rel_err_table(ex.RelErrConfig(list(range(1, 9)), 0.5, 1000, 1000, 0))
    ok = all(r["empirical_err_rel"] <= r["bound"] for r in rows)
    ok &= all(r["bound_exponent"] < r["empirical_exponent"] for r in rows)
    worst = max(r["empirical_err_rel"] / r["bound"] for r in rows)
    criterion("C5 relative error", ok,
              f"err_rel <= bound at R=1..8 (max ratio {worst:.3f}); bound exponent below empirical at every R")


def test_c6_estimators_and_codebook(criterion):
    rho, n, reps = 0.5, 1000, 10_000
    cov = np.array([[1.0, rho], [rho, 1.0]])
    th = np.empty(reps)
    r2 = np.empty(reps)
    for t in range(reps):
        x = sample_gaussian(cov, n, trial_seed(6, t))
        th[t] = estimate_theta(sign_encode(x[:, 0]), sign_encode(x[:, 1])).theta_hat
        r2[t] = unbiased_rho_sq(sample_corr(x[:, 0], x[:, 1]), n)
    z_theta = (th.mean() - theta_of_rho(rho)) / (th.std(ddof=1) / math.sqrt(reps))
    z_rho = (r2.mean() - rho**2) / (r2.std(ddof=1) / math.sqrt(reps))
    sig_err = abs(build_codebook(1).sigma_u_sq - 2 / math.pi)
    mpmath.mp.dps = 30
    phi_err = 0.0
    for R in range(1, MAX_RATE + 1):
        a = build_codebook(R).boundaries
        target = np.arange(1, 2**R) / 2**R
        vals = np.array([float(mpmath.ncdf(v)) for v in a[1:-1]])
        phi_err = max(phi_err, float(np.max(np.abs(vals - target))))
    ok = abs(z_theta) <= 4 and abs(z_rho) <= 4 and sig_err <= 1e-10 and phi_err <= 1e-12
    criterion("C6 estimators", ok,
              f"theta_hat z={z_theta:+.2f}, rho^2 z={z_rho:+.2f}; |sigma_u^2(1)-2/pi|={sig_err:.1e}; "
              f"max |Phi(a_i)-(i-1)/2^R| over R=1..{MAX_RATE} = {phi_err:.1e}")


def test_c7_structural_oracles(criterion):
    rng = np.random.default_rng(7)
    mismatch = 0
    for t in range(10_000):
        d = int(rng.integers(3, 8))
        # every fifth instance uses a coarse integer grid so ties are exercised
        w = rng.integers(0, 4, (d, d)).astype(float) if t % 5 == 0 else rng.random((d, d))
        w = np.triu(w, 1)
        w = w + w.T
        mismatch += kruskal_mwst(w) != brute_mwst(w)
    transform_fail = 0
    for _ in range(1000):
        d = int(rng.integers(3, 16))
        w = np.triu(rng.normal(size=(d, d)), 1)
        w = w + w.T
        a, b, c = rng.uniform(0.1, 3, size=3)
        f = [lambda x: np.exp(a * x), lambda x: a * x + b * x**3, lambda x: np.arctan(c * x),
             lambda x: np.sinh(b * x) + c][int(rng.integers(4))]
        transform_fail += kruskal_mwst(f(w)) != kruskal_mwst(w)
    inf_fail = 0
    for t in range(1000):
        tree = random_tree(int(rng.integers(2, 13)), 0.05, 0.95, seed=trial_seed(7, t))
        inf_fail += ex.infinite_sample_tree(tree).edges != tree.edge_set()
    ok = mismatch == 0 and transform_fail == 0 and inf_fail == 0
    criterion("C7 structure", ok,
              f"Kruskal vs brute force mismatches {mismatch}/10000; transform changes {transform_fail}/1000; "
              f"infinite-sample misses {inf_fail}/1000")


def test_c8_sign_flip_invariance(criterion):
    rng = np.random.default_rng(8)
    changed = 0
    for t in range(100):
        d = int(rng.integers(3, 21))
        tree = random_tree(d, seed=trial_seed(8, t))
        x = sample_gaussian(covariance_from_tree(tree), 500, trial_seed(8, t, 1))
        flip = np.where(rng.random(d) < 0.5, -1.0, 1.0)
        R = int(rng.integers(1, 9))
        for method in ("sign", R):
            changed += recover_tree(x * flip, method) != recover_tree(x, method)
    criterion("C8 sign flips", changed == 0, f"{changed} of 200 recovered trees changed after random sign flips")
