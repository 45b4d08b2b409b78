"""Closed-form error bounds for sign-based and quantized Chow-Liu learning.

Crossover bounds concern two pairs ``e`` and ``e'`` with ``theta_e > theta_e'``
and the event ``theta_hat_e <= theta_hat_e'``. Probability bounds are clamped
to [0, 1]; exponents are reported as computed.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import NumericError, ParameterError
from .estimators import theta_of_rho
from .quantizers import build_codebook, reconstruction_distortion

PROB_TOL = 1e-12


@dataclass(frozen=True)
class CrossoverParams:
    """Distribution of T = 1[u_r u_s = 1] - 1[u_j u_k = 1] over {0, +1, -1}."""

    p0: float
    p1: float
    p2: float

    def __post_init__(self):
        for name in ("p0", "p1", "p2"):
            p = getattr(self, name)
            if not -PROB_TOL <= p <= 1 + PROB_TOL:
                raise NumericError(f"{name}={p} is not a probability")
            object.__setattr__(self, name, min(max(float(p), 0.0), 1.0))
        if abs(self.p0 + self.p1 + self.p2 - 1) > PROB_TOL:
            raise NumericError(f"p0 + p1 + p2 = {self.p0 + self.p1 + self.p2} != 1")


@dataclass(frozen=True)
class BoundReport:
    n: int
    params: CrossoverParams
    theta_e: float
    theta_e2: float
    chernoff_exponent: float
    chernoff_bound: float
    hoeffding_bound: float


def _check_corr(rho, name):
    if not -1 <= rho <= 1:
        raise ParameterError(f"{name} must lie in [-1, 1], got {rho}")


def shared_node_probs(rho_jk: float, rho_ks: float) -> CrossoverParams:
    """Crossover parameters for e=(j,k), e'=(k,s) on a chain j - k - s.

    The correlation of the outer pair is taken to be ``rho_jk * rho_ks``.
    """
    _check_corr(rho_jk, "rho_jk")
    _check_corr(rho_ks, "rho_ks")
    a_jk = math.asin(rho_jk)
    a_ks = math.asin(rho_ks)
    a_js = math.asin(rho_jk * rho_ks)
    p0 = 0.5 + a_js / math.pi
    p1 = 0.25 + (-a_jk + a_ks - a_js) / (2 * math.pi)
    p2 = 0.25 + (a_jk - a_ks - a_js) / (2 * math.pi)
    return CrossoverParams(p0, p1, p2)


def chernoff_crossover(params: CrossoverParams, n: int) -> tuple[float, float]:
    """Return ``(E, min(1, exp(-n E)))`` with ``E = -ln(p0 + 2 sqrt(p1 p2))``."""
    if n < 0:
        raise ParameterError(f"n must be >= 0, got {n}")
    base = params.p0 + 2.0 * math.sqrt(params.p1 * params.p2)
    E = -math.log(base) if base > 0 else math.inf
    if E <= 0 or n == 0:
        return E, 1.0
    return E, math.exp(-n * E)


def hoeffding_crossover(theta_e: float, theta_e2: float, n: int) -> float:
    if not (0 <= theta_e2 < theta_e <= 1):
        raise ParameterError(
            f"need 0 <= theta_e2 < theta_e <= 1, got theta_e={theta_e}, theta_e2={theta_e2}"
        )
    return min(1.0, math.exp(-0.5 * n * (theta_e - theta_e2) ** 2))


def crossover_report(rho_jk: float, rho_ks: float, n: int) -> BoundReport:
    """Chernoff and Hoeffding bounds for the chain j - k - s (strong pair first)."""
    params = shared_node_probs(rho_jk, rho_ks)
    E, chern = chernoff_crossover(params, n)
    t1 = float(theta_of_rho(rho_jk))
    t2 = float(theta_of_rho(rho_ks))
    return BoundReport(n, params, t1, t2, E, chern, hoeffding_crossover(t1, t2, n))


def _check_alpha_beta(alpha, beta):
    if not 0 < alpha <= beta < 1:
        raise ParameterError(f"need 0 < alpha <= beta < 1, got alpha={alpha}, beta={beta}")


def rival_gap(alpha: float, beta: float) -> float:
    """Smallest theta gap between a true edge and its strongest rival when edge weights lie in [alpha, beta]."""
    _check_alpha_beta(alpha, beta)
    return (math.asin(alpha) - math.asin(alpha * beta)) / math.pi


def tree_error_bound(d: int, n: int, alpha: float, beta: float) -> float:
    """Upper bound on Pr(sign-method tree != true tree): ``min(1, d^3 exp(-n h^2 / 2))``."""
    if d < 2:
        raise ParameterError(f"d must be >= 2, got {d}")
    if n < 0:
        raise ParameterError(f"n must be >= 0, got {n}")
    h = rival_gap(alpha, beta)
    log_bound = 3 * math.log(d) - 0.5 * n * h * h
    return 1.0 if log_bound >= 0 else math.exp(log_bound)


def relative_error_bound(D1: float, D2: float) -> float:
    """Bound on E|rho_bar - rho_bar_q| for quantizers with distortions D1, D2."""
    if D1 < 0 or D2 < 0:
        raise ParameterError(f"distortions must be >= 0, got D1={D1}, D2={D2}")
    return math.sqrt(D1) + math.sqrt(D2) + math.sqrt(D1 * D2)


def estimation_error_bound(R: int, n: int, rho: float) -> float:
    """Bound on E|rho - rho_bar_q| for the R-bit equiprobable quantizer with ``n`` samples."""
    if n < 1:
        raise ParameterError(f"n must be >= 1, got {n}")
    _check_corr(rho, "rho")
    D = reconstruction_distortion(build_codebook(R))
    return relative_error_bound(D, D) + math.sqrt((1 + rho * rho) / n)
