"""Exhaustive maximum-likelihood decoders and a model-projected IHT baseline."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.special import log_ndtr

from .errors import DivergenceError, ParameterError
from .graph_model import SupportModel, enumerate_supports
from .sensing import sign

# scores within this relative distance of the optimum count as ties
TIE_RTOL = 1e-12


@dataclass(frozen=True)
class DecodeResult:
    index: int
    estimate: np.ndarray
    score: float
    ties: int
    scores: np.ndarray


def _candidates(e):
    M = e.members() if hasattr(e, "members") else np.asarray(e, dtype=float)
    if M.shape[0] == 0:
        raise ParameterError("empty ensemble")
    return M


def _pick(scores: np.ndarray, M: np.ndarray, maximize: bool) -> DecodeResult:
    best = scores.max() if maximize else scores.min()
    tol = TIE_RTOL * max(1.0, abs(best))
    tied = np.abs(scores - best) <= tol
    i = int(np.argmax(tied))
    return DecodeResult(i, M[i].copy(), float(scores[i]), int(tied.sum()), scores)


def ml_decode_linear(X, y, e) -> DecodeResult:
    """Minimum residual ||y - X b|| over the ensemble; first in canonical order wins ties."""
    M = _candidates(e)
    R = np.asarray(y, dtype=float)[None, :] - M @ np.asarray(X).T
    return _pick(np.linalg.norm(R, axis=1), M, maximize=False)


def ml_decode_onebit(X, y, e, sigma: float, method: str = "likelihood") -> DecodeResult:
    """Maximum likelihood under y = sign(X b + e).

    With ``sigma > 0`` and ``method="likelihood"`` the score is the
    log-likelihood sum_i log Phi(y_i (X b)_i / sigma). With ``sigma == 0`` or
    ``method="agreement"`` it is the number of sign agreements.
    """
    M = _candidates(e)
    Z = M @ np.asarray(X).T
    y = np.asarray(y)
    if sigma > 0 and method == "likelihood":
        scores = log_ndtr(y[None, :] * Z / sigma).sum(axis=1)
    elif method in ("likelihood", "agreement"):
        scores = (sign(Z) == y[None, :]).sum(axis=1).astype(float)
    else:
        raise ParameterError(f"unknown method {method!r}")
    return _pick(scores, M, maximize=True)


def model_project(v, model: SupportModel, supports=None) -> np.ndarray:
    """Best approximation of ``v`` by a vector supported on some S in the model."""
    v = np.asarray(v, dtype=float)
    if supports is None:
        supports = enumerate_supports(model)
    idx = np.asarray(supports, dtype=np.intp) - 1
    energy = (v**2)[idx].sum(axis=1)
    best = idx[int(np.argmax(energy))]
    out = np.zeros_like(v)
    out[best] = v[best]
    return out


def model_iht(X, y, model: SupportModel, iterations: int = 50, step: float = 1.0, beta0=None) -> np.ndarray:
    """Iterative hard thresholding with exact model projection."""
    if step <= 0:
        raise ParameterError("step must be positive")
    X = np.asarray(X, dtype=float)
    y = np.asarray(y, dtype=float)
    supports = enumerate_supports(model)
    beta = np.zeros(X.shape[1]) if beta0 is None else np.asarray(beta0, dtype=float).copy()
    limit = 1e6 * np.linalg.norm(y)
    for _ in range(iterations):
        beta = model_project(beta + step * X.T @ (y - X @ beta), model, supports)
        if np.linalg.norm(beta) > limit:
            raise DivergenceError(f"iterate norm {np.linalg.norm(beta):.3g} exceeds 1e6 * ||y||")
    return beta
