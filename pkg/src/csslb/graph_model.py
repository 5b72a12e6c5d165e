"""Weighted graph sparsity models and their support families.

Four support families are provided:

* ``WgmModel``: supports certified by a low-weight forest in a weighted graph,
* ``TreeModel``: rooted, parent-closed subsets of a complete k-ary tree,
* ``BlockModel``: unions of K full columns of a J x N grid,
* ``RegularModel``: every size-s subset.

Vertices are labelled 1..d throughout; a support is a sorted tuple of labels.
"""
from __future__ import annotations

import itertools
import json
import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence, Union

from .errors import ParameterError, TooLargeError

Support = tuple[int, ...]
Edge = tuple[int, int, int]

DEFAULT_CAP = 10**7
# exhaustive per-component forest search; beyond this we refuse
FOREST_SEARCH_CAP = 10**6


class WeakBoundWarning(UserWarning):
    """The cardinality bound has a per-edge factor below one."""


# ---------------------------------------------------------------------------
# graphs
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class WeightedGraph:
    """Undirected graph on vertices 1..d with positive integer edge weights.

    Edges are stored as ``(u, v, w)`` with ``u < v``. Parallel edges with
    different weights are allowed, identical triples are not.
    """

    d: int
    edges: frozenset
    group_size: int | None = None

    def __post_init__(self):
        if self.d < 1:
            raise ParameterError(f"d must be positive, got {self.d}")
        for u, v, w in self.edges:
            if not (1 <= u < v <= self.d):
                raise ParameterError(f"bad edge ({u}, {v}, {w}) for d={self.d}")
            if w < 1:
                raise ParameterError(f"edge ({u}, {v}) has weight {w} < 1")
        if self.group_size is not None and self.d % self.group_size:
            raise ParameterError("d must be divisible by group_size")

    @classmethod
    def from_edges(cls, d: int, edges: Iterable[Sequence[int]], group_size=None):
        seen = set()
        for u, v, w in edges:
            u, v, w = int(u), int(v), int(w)
            if u == v:
                raise ParameterError(f"self-loop at vertex {u}")
            e = (min(u, v), max(u, v), w)
            if e in seen:
                raise ParameterError(f"duplicate edge {e}")
            seen.add(e)
        return cls(d, frozenset(seen), group_size)

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)

    def to_json(self) -> str:
        doc = {"d": self.d, "edges": [list(e) for e in self.sorted_edges()]}
        return json.dumps(doc, sort_keys=True) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "WeightedGraph":
        doc = json.loads(text)
        return cls.from_edges(doc["d"], doc["edges"])


@dataclass(frozen=True)
class Forest:
    vertices: frozenset
    edges: tuple

    @property
    def n_components(self) -> int:
        return len(self.vertices) - len(self.edges)

    @property
    def weight(self) -> int:
        return sum(w for _, _, w in self.edges)


@dataclass(frozen=True)
class WgmParams:
    d: int
    s: int
    g: int
    B: int
    rho: int


@dataclass(frozen=True)
class ValidationReport:
    r1: bool
    r2: bool
    r3: bool
    integral: bool
    reasons: tuple

    @property
    def ok(self) -> bool:
        return self.r1 and self.r2 and self.r3 and self.integral

    def to_dict(self) -> dict:
        return {
            "R1": self.r1,
            "R2": self.r2,
            "R3": self.r3,
            "integral": self.integral,
            "feasible": self.ok,
            "reasons": list(self.reasons),
        }


def validate_requirements(p: WgmParams) -> ValidationReport:
    """Check R1-R3 plus the integrality the graph construction relies on.

    Never raises; degenerate inputs (e.g. ``g >= s``) come back as failed
    requirements with a reason attached.
    """
    reasons = []
    d, s, g, B, rho = p.d, p.s, p.g, p.B, p.rho
    if min(d, s, g, B, rho) < 1:
        reasons.append("all parameters must be positive")
        return ValidationReport(False, False, False, False, tuple(reasons))
    if not (g < s < d):
        reasons.append(f"need 0 < g < s < d, got g={g}, s={s}, d={d}")
        return ValidationReport(False, False, False, False, tuple(reasons))

    sg = s - g
    r1 = Fraction(d, g) >= Fraction(rho * B, sg) + 1
    if not r1:
        reasons.append(f"R1 fails: d/g = {Fraction(d, g)} < rho*B/(s-g) + 1 = {Fraction(rho * B, sg) + 1}")
    r2 = Fraction(rho * B, 2 * sg) >= Fraction(s, g) - 1
    if not r2:
        reasons.append(f"R2 fails: rho*B/(2(s-g)) = {Fraction(rho * B, 2 * sg)} < s/g - 1 = {Fraction(s, g) - 1}")
    r3 = B >= sg
    if not r3:
        reasons.append(f"R3 fails: B = {B} < s-g = {sg}")

    integral = True
    if rho % 2:
        integral = False
        reasons.append(f"rho must be even, got {rho}")
    if d % g:
        integral = False
        reasons.append(f"g = {g} must divide d = {d}")
    if B % sg:
        integral = False
        reasons.append(f"s-g = {sg} must divide B = {B}")
    return ValidationReport(r1, r2, r3, integral, tuple(reasons))


def build_construction_graph(p: WgmParams) -> WeightedGraph:
    """Circulant band graph: g groups of d/g nodes, weight-p bands of rho/2 neighbours.

    Node i of a group links forward to nodes i+(p-1)rho/2+1 .. i+p*rho/2
    (indices wrap inside the group) with weight p, for p = 1..B/(s-g).
    No edges run between groups.
    """
    report = validate_requirements(p)
    if not report.ok:
        raise ParameterError("rejected parameters: " + "; ".join(report.reasons))
    size = p.d // p.g
    half = p.rho // 2
    edges = set()
    for j in range(p.g):
        base = j * size
        for i in range(1, size + 1):
            for band in range(1, p.B // (p.s - p.g) + 1):
                for t in range(i + (band - 1) * half + 1, i + band * half + 1):
                    k = (t - 1) % size + 1
                    u, v = base + i, base + k
                    edges.add((min(u, v), max(u, v), band))
    return WeightedGraph(p.d, frozenset(edges), group_size=size)


def weight_degree(G: WeightedGraph) -> int:
    """Largest number of same-weight edges meeting at a single vertex."""
    counts: dict[tuple[int, int], int] = {}
    for u, v, w in G.edges:
        counts[(u, w)] = counts.get((u, w), 0) + 1
        counts[(v, w)] = counts.get((v, w), 0) + 1
    return max(counts.values(), default=0)


def feasible_parameters(s: int, g: int, B: int, d_max: int = 200, rho_max: int = 20) -> list[WgmParams]:
    """All (d, rho) with g | d, rho even, up to the given limits, passing R1-R3."""
    out = []
    for rho in range(2, rho_max + 1, 2):
        for d in range(g, d_max + 1, g):
            p = WgmParams(d=d, s=s, g=g, B=B, rho=rho)
            r = validate_requirements(p)
            if r.r1 and r.r2 and r.r3:
                out.append(p)
    return out


# ---------------------------------------------------------------------------
# forests
# ---------------------------------------------------------------------------


class _DSU:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[max(ra, rb)] = min(ra, rb)
        return True


def _components(vertices, edges) -> list[list[int]]:
    dsu = _DSU(vertices)
    for u, v, _ in edges:
        dsu.union(u, v)
    groups: dict[int, list[int]] = {}
    for x in sorted(vertices):
        groups.setdefault(dsu.find(x), []).append(x)
    return list(groups.values())


def _kruskal(vertices, edges) -> list[Edge]:
    dsu = _DSU(vertices)
    chosen = []
    for e in sorted(edges, key=lambda e: (e[2], e[0], e[1])):
        if dsu.union(e[0], e[1]):
            chosen.append(e)
    return chosen


def _lightest_parallel(edges) -> list[Edge]:
    best: dict[tuple[int, int], int] = {}
    for u, v, w in edges:
        if (u, v) not in best or w < best[(u, v)]:
            best[(u, v)] = w
    return sorted(((u, v, w) for (u, v), w in best.items()), key=lambda e: (e[2], e[0], e[1]))


def _covering_forests(vertices, edges, max_trees):
    """Minimum weight forest on a connected vertex set for each tree count.

    Every tree must contain at least one edge. Returns {t: (weight, edges)}.
    """
    m = len(vertices)
    table = {}
    mst = _kruskal(vertices, edges)
    table[1] = (sum(e[2] for e in mst), tuple(mst))
    if max_trees < 2:
        return table
    cand = _lightest_parallel(edges)
    for t in range(2, max_trees + 1):
        k = m - t
        if math.comb(len(cand), k) > FOREST_SEARCH_CAP:
            raise TooLargeError(f"forest search over C({len(cand)}, {k}) edge sets exceeds cap")
        best = None
        for combo in itertools.combinations(cand, k):
            w = sum(e[2] for e in combo)
            if best is not None and w >= best[0]:
                continue
            touched = set()
            for u, v, _ in combo:
                touched.add(u)
                touched.add(v)
            if len(touched) != m:
                continue
            dsu = _DSU(vertices)
            if all(dsu.union(u, v) for u, v, _ in combo):
                best = (w, combo)
        if best is not None:
            table[t] = best
    return table


def min_weight_forest(G: WeightedGraph, S: Iterable[int], g: int, isolated_vertices: bool = False):
    """Cheapest forest in G with vertex set S and exactly g components.

    Returns ``(Forest, weight)`` or ``None`` when no such forest exists.

    With ``isolated_vertices=False`` (the default) every component must hold
    at least one edge, i.e. the forest is an edge set whose endpoints are
    exactly S. With ``isolated_vertices=True`` single vertices count as
    components, and the answer is a minimum spanning forest of G[S] with its
    heaviest edges dropped until g components remain.
    """
    S = sorted(set(int(x) for x in S))
    Sset = set(S)
    if g < 1 or g > len(S):
        return None
    sub = [e for e in G.edges if e[0] in Sset and e[1] in Sset]
    comps = _components(S, sub)
    if len(comps) > g:
        return None

    if isolated_vertices:
        msf = _kruskal(S, sub)
        keep = msf[: len(S) - g]
        edges = tuple(sorted(keep))
        forest = Forest(frozenset(S), edges)
        return forest, forest.weight

    if any(len(c) == 1 for c in comps):
        return None
    # knapsack over components: choose a tree count per component summing to g
    dp: dict[int, tuple[int, tuple]] = {0: (0, ())}
    for comp in comps:
        cset = set(comp)
        cedges = [e for e in sub if e[0] in cset]
        table = _covering_forests(comp, cedges, min(len(comp) // 2, g))
        nxt: dict[int, tuple[int, tuple]] = {}
        for used, (w0, e0) in dp.items():
            for t, (w1, e1) in table.items():
                tot = used + t
                if tot > g:
                    continue
                cand = (w0 + w1, e0 + tuple(e1))
                if tot not in nxt or cand[0] < nxt[tot][0]:
                    nxt[tot] = cand
        dp = nxt
    if g not in dp:
        return None
    w, edges = dp[g]
    forest = Forest(frozenset(S), tuple(sorted(edges)))
    return forest, w


# ---------------------------------------------------------------------------
# support models
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class WgmModel:
    graph: WeightedGraph
    params: WgmParams
    isolated_vertices: bool = False

    @property
    def d(self) -> int:
        return self.graph.d

    @property
    def s(self) -> int:
        return self.params.s

    def candidate_count(self) -> int:
        return math.comb(self.d, self.s)

    def contains(self, S: Support) -> bool:
        if len(set(S)) != self.s:
            return False
        res = min_weight_forest(self.graph, S, self.params.g, self.isolated_vertices)
        return res is not None and res[1] <= self.params.B

    def _generate(self):
        for S in itertools.combinations(range(1, self.d + 1), self.s):
            if self.contains(S):
                yield S

    @classmethod
    def from_params(cls, p: WgmParams, isolated_vertices: bool = False) -> "WgmModel":
        return cls(build_construction_graph(p), p, isolated_vertices)


@dataclass(frozen=True)
class TreeModel:
    """Parent-closed supports of the complete ``arity``-ary tree in heap order."""

    d: int
    s: int
    arity: int = 2

    def parent(self, i: int) -> int | None:
        return None if i == 1 else (i - 2) // self.arity + 1

    def candidate_count(self) -> int:
        return math.comb(self.d, self.s)

    def contains(self, S: Support) -> bool:
        Sset = set(S)
        if len(Sset) != self.s or 1 not in Sset:
            return False
        return all(self.parent(i) in Sset for i in Sset if i != 1)

    def children(self, i: int) -> list[int]:
        first = self.arity * (i - 1) + 2
        return [c for c in range(first, first + self.arity) if c <= self.d]

    def _generate(self):
        found = []

        # include/exclude the smallest frontier vertex: each rooted subtree once
        def grow(current: list[int], frontier: list[int]):
            if len(current) == self.s:
                found.append(tuple(sorted(current)))
                return
            if not frontier:
                return
            v, rest = frontier[0], frontier[1:]
            grow(current + [v], sorted(rest + self.children(v)))
            grow(current, rest)

        if 1 <= self.s <= self.d:
            grow([1], self.children(1))
        yield from sorted(found)


@dataclass(frozen=True)
class BlockModel:
    """Column blocks of a J x N grid; entry (row i, column j) is label (j-1)*J + i."""

    J: int
    N: int
    K: int

    @property
    def d(self) -> int:
        return self.J * self.N

    @property
    def s(self) -> int:
        return self.J * self.K

    def candidate_count(self) -> int:
        return math.comb(self.N, self.K)

    def column(self, j: int) -> tuple[int, ...]:
        return tuple((j - 1) * self.J + i for i in range(1, self.J + 1))

    def contains(self, S: Support) -> bool:
        Sset = set(S)
        cols = {(x - 1) // self.J + 1 for x in Sset}
        return len(cols) == self.K and all(set(self.column(j)) <= Sset for j in cols) and len(Sset) == self.s

    def _generate(self):
        for cols in itertools.combinations(range(1, self.N + 1), self.K):
            yield tuple(x for j in cols for x in self.column(j))


@dataclass(frozen=True)
class RegularModel:
    d: int
    s: int

    def candidate_count(self) -> int:
        return math.comb(self.d, self.s)

    def contains(self, S: Support) -> bool:
        return len(set(S)) == self.s and all(1 <= x <= self.d for x in S)

    def _generate(self):
        yield from itertools.combinations(range(1, self.d + 1), self.s)


SupportModel = Union[WgmModel, TreeModel, BlockModel, RegularModel]


@lru_cache(maxsize=64)
def _enumerate_cached(model) -> tuple[Support, ...]:
    return tuple(model._generate())


def enumerate_supports(model: SupportModel, cap: int = DEFAULT_CAP) -> list[Support]:
    """Every admissible support of ``model`` in lexicographic order.

    Raises TooLargeError when the candidate space exceeds ``cap``.
    """
    n = model.candidate_count()
    if n > cap:
        raise TooLargeError(f"{n} candidate supports exceed cap {cap}; sample instead")
    return list(_enumerate_cached(model))


def log_cardinality_lower_bound(model: SupportModel, variant: str = "standard") -> float:
    """Natural-log lower bound on the restricted ensemble size over ``model``.

    ``variant`` is ``"standard"`` (2^s value patterns per support) or
    ``"onebit"`` (balanced splits, counted as 2^(s/2)).
    """
    if variant not in ("standard", "onebit"):
        raise ParameterError(f"unknown variant {variant!r}")
    ln2 = math.log(2)
    if variant == "onebit" and model.s % 2:
        raise ParameterError("one-bit ensembles need even s")

    if isinstance(model, WgmModel):
        d, s, g, B, rho = (model.params.d, model.params.s, model.params.g, model.params.B, model.params.rho)
        ratio = rho * B * g / (2 * (s - g) ** 2)
        if ratio < 1:
            warnings.warn(f"rho*B*g/(2(s-g)^2) = {ratio:.4g} < 1; bound is weak", WeakBoundWarning, stacklevel=2)
        head = s * ln2 if variant == "standard" else (s / 2) * ln2
        return head + g * math.log(d / g) + (s - g) * math.log(ratio)
    if isinstance(model, TreeModel):
        return model.s * ln2 if variant == "standard" else (model.s / 2) * ln2
    if isinstance(model, BlockModel):
        J, N, K = model.J, model.N, model.K
        return (K * J / 2) * ln2 + K * math.log(N / K)
    if isinstance(model, RegularModel):
        return (model.s / 2) * ln2 + model.s * math.log(model.d / model.s)
    raise ParameterError(f"unsupported model {type(model).__name__}")


def supports_to_json(supports: Sequence[Support]) -> str:
    doc = {"supports": [list(S) for S in sorted(tuple(sorted(S)) for S in supports)]}
    return json.dumps(doc, sort_keys=True) + "\n"


def supports_from_json(text: str) -> list[Support]:
    return [tuple(S) for S in json.loads(text)["supports"]]
