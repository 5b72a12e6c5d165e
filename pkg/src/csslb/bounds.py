"""Mutual-information upper bounds, Fano's inequality and sample thresholds.

All logarithms are natural, so every information quantity is in nats.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np

from .ensembles import DEFAULT_EPS_F1, RecoveryConstants
from .errors import ParameterError
from .graph_model import SupportModel, log_cardinality_lower_bound

LN2 = math.log(2)
SETTINGS = ("std_noisy", "std_noiseless", "onebit_exact", "onebit_approx")


def _noisy_log_arg(s, d, k1, k2):
    return 1 + s / 2 * k1**2 + s / 2 * k2**2 - s**2 / d * (k1**2 / 4 + k2**2 / 4 + k1 * k2 / 2)


def mi_bound_std_noisy(n, s, d, k1, k2) -> float:
    """(n/2) log(1 + s k1^2/2 + s k2^2/2 - (s^2/d)(k1 + k2)^2/4)."""
    arg = _noisy_log_arg(s, d, k1, k2)
    if arg <= 0:
        raise ParameterError(f"log argument {arg} is not positive")
    return n / 2 * math.log(arg)


def mi_bound_std_noiseless(n, s) -> float:
    """n log(e^3 s^3 / 27) = 3n log(es/3), valid for Bernoulli designs and +-1 signals."""
    if s < 2:
        raise ParameterError(f"noiseless bound needs s >= 2, got s={s}")
    return 3 * n * math.log(math.e * s / 3)


def count_noiseless_outputs(s: int) -> int:
    """Number of ways to split s non-zeros into (+a, +b, -a, -b) counts."""
    if s < 1:
        raise ParameterError("s must be positive")
    return math.comb(s + 3, 3)


def mi_bound_onebit(n) -> float:
    if n < 0:
        raise ParameterError("n must be non-negative")
    return 2 * n * LN2


def fano_lower_bound(mi_upper: float, log_card: float) -> float:
    """max(0, 1 - (I + log 2) / log|F|)."""
    if log_card <= 0:
        raise ParameterError(f"log-cardinality must be positive, got {log_card}")
    if mi_upper < 0:
        raise ParameterError("mutual information bound must be non-negative")
    return max(0.0, 1 - (mi_upper + LN2) / log_card)


def noise_concentration_bound(n, eps) -> float:
    """Claimed lower bound 1 - exp(-eps^2 n / 4) on P(||e||^2 <= sigma^2 n / (1 - eps))."""
    if not 0 < eps < 1:
        raise ParameterError(f"eps must lie in (0, 1), got {eps}")
    return 1 - math.exp(-(eps**2) * n / 4)


# --- per-setting slopes -----------------------------------------------------


def mi_per_sample(setting: str, s: int, d: int, C0: float = 1.0, eps: float = DEFAULT_EPS_F1) -> float:
    """The MI bound of ``setting`` divided by n (every bound is linear in n)."""
    if setting == "std_noisy":
        c = RecoveryConstants.from_params(C0, eps)
        return mi_bound_std_noisy(1, s, d, c.k1, c.k2)
    if setting == "std_noiseless":
        return mi_bound_std_noiseless(1, s)
    if setting in ("onebit_exact", "onebit_approx"):
        return mi_bound_onebit(1)
    raise ParameterError(f"unknown setting {setting!r}")


def variant_for(setting: str) -> str:
    return "onebit" if setting.startswith("onebit") else "standard"


@dataclass(frozen=True)
class Threshold:
    n: float
    vacuous: bool


def sample_threshold(
    setting: str,
    model: SupportModel,
    log_card: float | None = None,
    C0: float = 1.0,
    eps: float = DEFAULT_EPS_F1,
) -> Threshold:
    """Largest n at which Fano still forces error probability >= 1/2.

    Solves ``fano_lower_bound(slope * n, log_card) == 1/2``; ``log_card``
    defaults to the cardinality lower bound for the setting's ensemble.
    """
    if log_card is None:
        log_card = log_cardinality_lower_bound(model, variant_for(setting))
    slope = mi_per_sample(setting, model.s, model.d, C0, eps)
    if slope <= 0:
        return Threshold(math.inf, False)
    n_star = (log_card / 2 - LN2) / slope
    return Threshold(n_star, n_star < 1)


@dataclass(frozen=True)
class BoundReport:
    setting: str
    n: int
    log_card: float
    mi: float
    fano: float
    threshold_n: float
    vacuous: bool

    def to_dict(self) -> dict:
        return asdict(self)


def bound_report(setting, model, n, log_card=None, C0=1.0, eps=DEFAULT_EPS_F1) -> BoundReport:
    if log_card is None:
        log_card = log_cardinality_lower_bound(model, variant_for(setting))
    mi = n * mi_per_sample(setting, model.s, model.d, C0, eps)
    th = sample_threshold(setting, model, log_card, C0, eps)
    return BoundReport(setting, n, log_card, mi, fano_lower_bound(mi, log_card), th.n, th.vacuous)


# --- joint Gaussian covariance route for the noisy linear bound -------------


def joint_covariance(beta, n: int, sigma: float) -> np.ndarray:
    """Covariance of one row (X_i, y_i) given beta, for X_ij ~ N(0, 1/n)."""
    beta = np.asarray(beta, dtype=float)
    d = beta.size
    S = np.zeros((d + 1, d + 1))
    S[:d, :d] = np.eye(d) / n
    S[:d, d] = S[d, :d] = beta / n
    S[d, d] = beta @ beta / n + sigma**2
    return S


def averaged_covariance(members: np.ndarray, n: int, sigma: float) -> np.ndarray:
    """Mean of joint_covariance over the members; the KL-optimal Gaussian reference."""
    members = np.asarray(members, dtype=float)
    d = members.shape[1]
    mean = members.mean(axis=0)
    S = np.zeros((d + 1, d + 1))
    S[:d, :d] = np.eye(d) / n
    S[:d, d] = S[d, :d] = mean / n
    S[d, d] = np.mean(np.sum(members**2, axis=1)) / n + sigma**2
    return S


def kl_objective(members: np.ndarray, n: int, sigma: float, ref_cov: np.ndarray) -> float:
    """n/2 * mean over beta of [log det(ref)/det(S_b) - (d+1) + tr(ref^-1 S_b)].

    This is n times the average KL divergence from N(0, S_b) to N(0, ref).
    """
    members = np.asarray(members, dtype=float)
    k = members.shape[1] + 1
    ref_inv = np.linalg.inv(ref_cov)
    _, logdet_ref = np.linalg.slogdet(ref_cov)
    total = 0.0
    for b in members:
        Sb = joint_covariance(b, n, sigma)
        _, logdet_b = np.linalg.slogdet(Sb)
        total += logdet_ref - logdet_b - k + np.trace(ref_inv @ Sb)
    return n / 2 * total / len(members)


def mi_bound_via_covariance(members: np.ndarray, n: int, sigma: float) -> float:
    """n/2 [log det(mean S_b) - mean log det S_b], evaluated numerically."""
    members = np.asarray(members, dtype=float)
    _, logdet_avg = np.linalg.slogdet(averaged_covariance(members, n, sigma))
    logdets = [np.linalg.slogdet(joint_covariance(b, n, sigma))[1] for b in members]
    return n / 2 * (logdet_avg - float(np.mean(logdets)))
