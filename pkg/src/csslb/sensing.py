"""Random designs and the two measurement channels."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ParameterError

DESIGNS = ("gaussian", "bernoulli")
CHANNELS = ("linear", "onebit")


def make_design(kind: str, n: int, d: int, rng: np.random.Generator) -> np.ndarray:
    """n x d design with i.i.d. entries of variance 1/n.

    ``gaussian``: N(0, 1/n). ``bernoulli``: +-1/sqrt(n) with equal probability.
    """
    if n < 1 or d < 1:
        raise ParameterError(f"design dimensions must be positive, got {n}x{d}")
    if kind == "gaussian":
        return rng.standard_normal((n, d)) / np.sqrt(n)
    if kind == "bernoulli":
        signs = rng.integers(0, 2, size=(n, d)) * 2 - 1
        return signs / np.sqrt(n)
    raise ParameterError(f"unknown design kind {kind!r}")


def sign(x) -> np.ndarray:
    """Elementwise sign with sign(0) = +1."""
    return np.where(np.asarray(x) >= 0, 1, -1).astype(np.int8)


@dataclass(frozen=True)
class MeasurementSet:
    y: np.ndarray
    sigma: float
    channel: str
    noise: np.ndarray


def measure(X: np.ndarray, beta, sigma: float, channel: str, rng: np.random.Generator) -> MeasurementSet:
    """y = X beta + e (linear) or sign(X beta + e) (one-bit), e ~ N(0, sigma^2 I)."""
    beta = np.asarray(getattr(beta, "values", beta), dtype=float)
    if X.shape[1] != beta.shape[0]:
        raise ParameterError(f"design has {X.shape[1]} columns, signal has length {beta.shape[0]}")
    if sigma < 0:
        raise ParameterError("sigma must be non-negative")
    n = X.shape[0]
    e = sigma * rng.standard_normal(n) if sigma > 0 else np.zeros(n)
    z = X @ beta + e
    if channel == "linear":
        return MeasurementSet(z, sigma, channel, e)
    if channel == "onebit":
        return MeasurementSet(sign(z), sigma, channel, e)
    raise ParameterError(f"unknown channel {channel!r}")


def rip_expectation_check(kind: str, beta, n: int, trials: int, rng: np.random.Generator) -> tuple[float, float]:
    """Monte Carlo mean of ||X beta||^2 over fresh designs, with its standard error."""
    if trials < 100:
        raise ParameterError("need at least 100 trials")
    beta = np.asarray(beta, dtype=float)
    vals = np.empty(trials)
    for t in range(trials):
        X = make_design(kind, n, beta.size, rng)
        vals[t] = np.sum((X @ beta) ** 2)
    return float(vals.mean()), float(vals.std(ddof=1) / np.sqrt(trials))
