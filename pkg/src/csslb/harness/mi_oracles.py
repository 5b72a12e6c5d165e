"""Exact (conditional on X) mutual information for tiny ensembles.

Both oracles use I(b; (X, y)) = E_X[I(b; y | X)], which holds because the
design is drawn independently of the signal. The inner term is computed by
enumerating every output y.
"""
from __future__ import annotations

import itertools

import numpy as np
from scipy.special import log_ndtr, rel_entr, xlogy

from ..errors import ParameterError, TooLargeError
from ..sensing import make_design, sign

MAX_MEMBERS = 10**3
MAX_ONEBIT_N = 10
EXACT_ND_LIMIT = 20
_CHUNK = 4096


def _members(e) -> np.ndarray:
    return e.members() if hasattr(e, "members") else np.atleast_2d(np.asarray(e, dtype=float))


def _mi_from_channel(P: np.ndarray) -> float:
    """I(b; y) for a uniform prior over the rows of P = p(y | b)."""
    marginal = P.mean(axis=0)
    return float(rel_entr(P, marginal[None, :]).sum(axis=1).mean())


def empirical_mi_onebit(e, n: int, sigma: float, x_samples: int, rng: np.random.Generator) -> float:
    """Average over Gaussian designs of the exact MI between b and sign(X b + e)."""
    M = _members(e)
    if M.shape[0] > MAX_MEMBERS or n > MAX_ONEBIT_N:
        raise TooLargeError(f"one-bit oracle limited to {MAX_MEMBERS} members and n <= {MAX_ONEBIT_N}")
    if x_samples < 1:
        raise ParameterError("x_samples must be positive")
    if M.shape[0] == 1:
        return 0.0
    Y = np.array(list(itertools.product((-1, 1), repeat=n)), dtype=float)  # (2^n, n)
    weights = 2 ** np.arange(n - 1, -1, -1)
    total = 0.0
    for _ in range(x_samples):
        X = make_design("gaussian", n, M.shape[1], rng)
        Z = M @ X.T  # (|F|, n)
        if sigma > 0:
            logp = log_ndtr(Y[None, :, :] * Z[:, None, :] / sigma).sum(axis=2)
            P = np.exp(logp)
        else:
            code = ((sign(Z) > 0).astype(int) * weights).sum(axis=1)
            P = np.zeros((M.shape[0], len(Y)))
            P[np.arange(M.shape[0]), code] = 1.0
        total += _mi_from_channel(P)
    return total / x_samples


def _output_entropies(M: np.ndarray, signs: np.ndarray) -> np.ndarray:
    """H(y | X) for each sign matrix in ``signs`` (shape (C, n, d)), uniform prior over M."""
    C, n, _ = signs.shape
    F = M.shape[0]
    Yv = np.einsum("cnd,fd->cfn", signs, M)
    # identify equal outputs exactly up to float noise
    _, inv = np.unique(np.round(Yv, 9).ravel(), return_inverse=True)
    inv = inv.reshape(C, F, n).astype(np.int64)
    radix = int(inv.max()) + 1
    if radix**n >= 2**62:
        out = np.empty(C)
        for c in range(C):
            _, counts = np.unique(inv[c], axis=0, return_counts=True)
            out[c] = np.log(F) - xlogy(counts, counts).sum() / F
        return out
    keys = np.zeros((C, F), dtype=np.int64)
    for i in range(n):
        keys = keys * radix + inv[:, :, i]
    keys.sort(axis=1)
    start = np.ones((C, F), dtype=bool)
    start[:, 1:] = keys[:, 1:] != keys[:, :-1]
    run = np.cumsum(start, axis=1) - 1
    flat = (np.arange(C)[:, None] * F + run).ravel()
    counts = np.bincount(flat, minlength=C * F).reshape(C, F).astype(float)
    return np.log(F) - xlogy(counts, counts).sum(axis=1) / F


def empirical_mi_noiseless_std(e, n: int, x_samples: int | None = None, rng: np.random.Generator | None = None) -> float:
    """MI between b and (X, X b) for Bernoulli designs.

    When n*d <= 20 every one of the 2^(n d) sign matrices is enumerated and
    the result is exact; otherwise ``x_samples`` random designs are averaged.
    The 1/sqrt(n) scaling is dropped since it does not change entropies.
    """
    M = _members(e)
    F, d = M.shape
    if F > MAX_MEMBERS:
        raise TooLargeError(f"noiseless oracle limited to {MAX_MEMBERS} members")
    if F == 1:
        return 0.0
    if n * d <= EXACT_ND_LIMIT:
        total, count = 0.0, 0
        n_mats = 2 ** (n * d)
        bits = np.arange(n * d)
        for lo in range(0, n_mats, _CHUNK):
            codes = np.arange(lo, min(lo + _CHUNK, n_mats))
            signs = ((codes[:, None] >> bits) & 1) * 2.0 - 1.0
            H = _output_entropies(M, signs.reshape(-1, n, d))
            total += H.sum()
            count += len(H)
        return float(total / count)
    if not x_samples or rng is None:
        raise TooLargeError(f"n*d = {n * d} > {EXACT_ND_LIMIT}; pass x_samples and rng to sample designs")
    total = 0.0
    for lo in range(0, x_samples, _CHUNK):
        c = min(_CHUNK, x_samples - lo)
        signs = rng.integers(0, 2, size=(c, n, d)) * 2.0 - 1.0
        total += _output_entropies(M, signs).sum()
    return float(total / x_samples)
