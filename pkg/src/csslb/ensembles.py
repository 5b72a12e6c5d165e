"""Restricted signal ensembles over a support model.

Three families are built on top of an enumerated support model:

``F1``  two positive levels per non-zero, scaled with sigma*sqrt(n) (noisy linear),
``F2``  signs +-1 on the support (noiseless linear),
``F3``  balanced split of the support into -eps and sqrt(2/s)+eps (one-bit).

Members are indexed canonically: supports in lexicographic order, then value
patterns in the order produced by ``Ensemble.patterns``.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Union

import numpy as np
from scipy.spatial.distance import cdist, pdist

from .errors import ParameterError, TooLargeError
from .graph_model import Support, SupportModel, enumerate_supports

DEFAULT_EPS_F1 = 0.9448


@dataclass(frozen=True)
class RecoveryConstants:
    k1: float
    k2: float
    v1: float
    v2: float
    sep: float

    @classmethod
    def from_params(cls, C0: float, eps: float, sigma: float = 1.0, n: int = 1) -> "RecoveryConstants":
        if not 0 < eps < 1:
            raise ParameterError(f"eps must lie in (0, 1), got {eps}")
        k1 = C0 / math.sqrt(2 * (1 - eps))
        k2 = C0 * (1 / math.sqrt(2 * (1 - eps)) + 1 / math.sqrt(1 - eps))
        scale = sigma * math.sqrt(n)
        v1, v2 = k1 * scale, k2 * scale
        return cls(k1, k2, v1, v2, v2 - v1)


@dataclass(frozen=True)
class F1:
    n: int
    sigma: float
    C0: float = 1.0
    eps: float = DEFAULT_EPS_F1

    @property
    def constants(self) -> RecoveryConstants:
        return RecoveryConstants.from_params(self.C0, self.eps, self.sigma, self.n)


@dataclass(frozen=True)
class F2:
    pass


@dataclass(frozen=True)
class F3:
    eps: float


Family = Union[F1, F2, F3]


@dataclass(frozen=True)
class Signal:
    values: np.ndarray
    support: Support

    @classmethod
    def from_values(cls, values) -> "Signal":
        values = np.asarray(values, dtype=float)
        return cls(values, tuple(int(i) + 1 for i in np.flatnonzero(values)))


class Ensemble:
    """A finite signal family; enumerated lazily.

    The support list is computed at construction; the dense member matrix is
    only materialised on first call to :meth:`members`.
    """

    def __init__(self, family: Family, model: SupportModel, cap: int | None = None):
        self.family = family
        self.model = model
        self.d = model.d
        self.s = model.s
        kw = {} if cap is None else {"cap": cap}
        self.supports = enumerate_supports(model, **kw)
        if not self.supports:
            raise ParameterError("support model is empty")
        self._support_idx = np.array(self.supports, dtype=np.intp) - 1
        self.patterns = self._make_patterns()
        self._members = None

    def _make_patterns(self) -> np.ndarray:
        fam, s = self.family, self.s
        if isinstance(fam, F1):
            c = fam.constants
            levels = (c.v1, c.v2)
            return np.array(list(itertools.product(levels, repeat=s)), dtype=float)
        if isinstance(fam, F2):
            return np.array(list(itertools.product((-1.0, 1.0), repeat=s)))
        if isinstance(fam, F3):
            if s % 2:
                raise ParameterError(f"F3 needs even sparsity, got s={s}")
            if fam.eps <= 0:
                raise ParameterError("F3 offset eps must be positive")
            hi = math.sqrt(2 / s) + fam.eps
            rows = []
            for A in itertools.combinations(range(s), s // 2):
                row = np.full(s, hi)
                row[list(A)] = -fam.eps
                rows.append(row)
            return np.array(rows)
        raise ParameterError(f"unknown family {fam!r}")

    @property
    def n_patterns(self) -> int:
        return len(self.patterns)

    @property
    def size(self) -> int:
        return len(self.supports) * self.n_patterns

    def __len__(self) -> int:
        return self.size

    def member(self, index: int) -> np.ndarray:
        si, pi = divmod(int(index), self.n_patterns)
        out = np.zeros(self.d)
        out[self._support_idx[si]] = self.patterns[pi]
        return out

    def members(self) -> np.ndarray:
        if self._members is None:
            M = np.zeros((self.size, self.d))
            P = self.n_patterns
            for si, idx in enumerate(self._support_idx):
                M[si * P:(si + 1) * P][:, idx] = self.patterns
            M.setflags(write=False)
            self._members = M
        return self._members

    def sample_index(self, rng: np.random.Generator) -> int:
        si = int(rng.integers(len(self.supports)))
        pi = int(rng.integers(self.n_patterns))
        return si * self.n_patterns + pi

    def norms(self) -> np.ndarray:
        return np.linalg.norm(self.members(), axis=1)


def build_ensemble(family: Family, model: SupportModel, cap: int | None = None) -> Ensemble:
    return Ensemble(family, model, cap)


def sample_uniform(e: Ensemble, rng: np.random.Generator) -> Signal:
    """Draw a support uniformly, then a value pattern uniformly."""
    index = e.sample_index(rng)
    return Signal(e.member(index), e.supports[index // e.n_patterns])


BRUTE_FORCE_LIMIT = 10**3
PAIR_CAP = 10**4


def min_pairwise_distance(e: Ensemble, cap: int = PAIR_CAP) -> float:
    """Smallest l2 distance between two distinct members.

    Up to 10^3 members every pair is scanned. Larger ensembles (up to ``cap``)
    are scanned block by block over support pairs, skipping pairs whose
    symmetric-difference lower bound cannot beat the running minimum.
    """
    if e.size < 2:
        raise ParameterError("need at least two members")
    if e.size > cap:
        raise TooLargeError(f"{e.size} members exceed pairwise cap {cap}")
    if e.size <= BRUTE_FORCE_LIMIT:
        return float(pdist(e.members()).min())

    P = e.patterns
    best = float(pdist(P).min()) if len(P) > 1 else math.inf
    vmin = float(np.abs(P).min())
    sets = [frozenset(S) for S in e.supports]
    pairs = []
    for a, b in itertools.combinations(range(len(sets)), 2):
        pairs.append((len(sets[a] ^ sets[b]), a, b))
    pairs.sort()
    for sym, a, b in pairs:
        if math.sqrt(sym) * vmin >= best:
            break
        Xa = np.zeros((len(P), e.d))
        Xb = np.zeros((len(P), e.d))
        Xa[:, e._support_idx[a]] = P
        Xb[:, e._support_idx[b]] = P
        best = min(best, float(cdist(Xa, Xb).min()))
    return best
