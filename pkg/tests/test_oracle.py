import math

import numpy as np
import pytest

from treeggm.bounds import CrossoverParams, shared_node_probs
from treeggm.chowliu import kruskal_mwst
from treeggm.errors import ParameterError
from treeggm.oracle import (
    all_labeled_trees,
    brute_mwst,
    exact_crossover,
    log_exact_crossover,
    numeric_orthant_check,
)


def test_exact_n1():
    p = CrossoverParams(0.2, 0.3, 0.5)
    assert exact_crossover(p, 1) == pytest.approx(0.5, abs=1e-15)


def test_exact_n2_hand_enumeration():
    assert exact_crossover(CrossoverParams(0.5, 0.25, 0.25), 2) == pytest.approx(0.6875, abs=1e-15)


def test_exact_matches_monte_carlo_n100():
    p = CrossoverParams(0.45, 0.25, 0.30)
    rng = np.random.default_rng(0)
    trials = 1_000_000
    # multinomial counts (n0, n1, n2) per trial; crossover when n1 >= n2
    counts = rng.multinomial(100, [p.p0, p.p1, p.p2], size=trials)
    freq = np.mean(counts[:, 1] >= counts[:, 2])
    exact = exact_crossover(p, 100)
    assert abs(freq - exact) <= 4 * math.sqrt(exact * (1 - exact) / trials)


def test_exact_matches_direct_convolution():
    """Independent oracle: convolve the pmf of T n times."""
    p = shared_node_probs(0.9, 0.1)
    pmf = np.array([1.0])
    for n in range(1, 41):
        pmf = np.convolve(pmf, [p.p2, p.p0, p.p1])  # support -n..n
        assert exact_crossover(p, n) == pytest.approx(pmf[n:].sum(), rel=1e-12)


def test_even_n_nonincreasing_and_stable():
    p = shared_node_probs(0.9, 0.1)
    vals = [log_exact_crossover(p, n) for n in range(2, 5001, 166)]
    assert all(np.isfinite(vals))
    assert all(b <= a for a, b in zip(vals, vals[1:]))
    assert 0 <= exact_crossover(p, 5000) <= 1


def test_exact_known_values():
    p = shared_node_probs(0.9, 0.1)
    assert exact_crossover(p, 10) == pytest.approx(0.0761, abs=5e-5)


def test_exact_range():
    with pytest.raises(ParameterError):
        exact_crossover(CrossoverParams(0.5, 0.25, 0.25), 5001)


def test_cayley_counts():
    for d in range(2, 8):
        t = all_labeled_trees(d)
        assert len(t) == d ** (d - 2)
        assert len({frozenset(map(tuple, x)) for x in t}) == len(t)


def test_brute_examples():
    assert brute_mwst(np.ones((3, 3))).edges == {(0, 1), (0, 2)}
    assert brute_mwst(np.zeros((2, 2))).edges == {(0, 1)}
    with pytest.raises(ParameterError):
        brute_mwst(np.zeros((9, 9)))


def test_brute_agrees_with_kruskal_under_heavy_ties():
    rng = np.random.default_rng(4)
    for _ in range(300):
        d = int(rng.integers(3, 7))
        w = np.triu(rng.integers(0, 2, (d, d)).astype(float), 1)
        w = w + w.T
        assert brute_mwst(w) == kruskal_mwst(w)


@pytest.mark.parametrize("rho,expected", [(0.0, 0.25), (0.5, 1 / 3), (-0.5, 1 / 6)])
def test_orthant_probabilities(rho, expected):
    assert numeric_orthant_check(rho) == pytest.approx(expected, abs=1e-8)


@pytest.mark.parametrize("rho", [-0.999, -0.95, -0.3, 0.2, 0.7, 0.99, 0.9999])
def test_orthant_is_half_theta(rho):
    assert numeric_orthant_check(rho) == pytest.approx((0.5 + math.asin(rho) / math.pi) / 2, abs=1e-8)
