"""Simple graphs, the extremal families, spectra, and mixing checks."""
from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from math import comb, inf
from typing import NamedTuple, Optional

import numpy as np

from . import _backend
from .numerics import eig_sym

REGULAR_TOL = 1e-6
MIXING_TOL = 1e-8
MAX_SCAN_VERTICES = 24


class HypothesisError(ValueError):
    """A mathematical precondition on the input does not hold."""


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph on ``range(n)``; ``edges`` is a sorted tuple of
    ``(i, j)`` with ``i < j``."""

    n: int
    edges: tuple = ()

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("vertex count must be non-negative")
        norm = set()
        for u, v in self.edges:
            u, v = int(u), int(v)
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={self.n}")
            norm.add((min(u, v), max(u, v)))
        object.__setattr__(self, "edges", tuple(sorted(norm)))

    @classmethod
    def from_adjacency(cls, m):
        m = np.asarray(m)
        i, j = np.nonzero(np.triu(m, 1))
        return cls(len(m), tuple(zip(i.tolist(), j.tolist())))

    @property
    def m(self):
        return len(self.edges)

    @cached_property
    def _adjacency(self):
        a = np.zeros((self.n, self.n), dtype=np.int64)
        if self.edges:
            e = np.array(self.edges)
            a[e[:, 0], e[:, 1]] = 1
            a[e[:, 1], e[:, 0]] = 1
        a.setflags(write=False)
        return a

    def adjacency(self):
        return self._adjacency

    def degrees(self):
        return self._adjacency.sum(axis=1)

    def neighbor_masks(self):
        """Adjacency rows as bitmasks (``n <= 63``)."""
        if self.n > 63:
            raise ValueError("bitmask kernels support at most 63 vertices")
        weights = np.left_shift(np.uint64(1), np.arange(self.n, dtype=np.uint64))
        return (self._adjacency.astype(np.uint64) * weights).sum(axis=1, dtype=np.uint64)

    @cached_property
    def spectrum(self):
        return eig_sym(self._adjacency)

    def eigenvalues(self):
        return self.spectrum.values

    def edge_set(self):
        return set(self.edges)


# ---------------------------------------------------------------- families


def complete_bipartite(a, b):
    if a < 1 or b < 1:
        raise ValueError("both sides need at least one vertex")
    return Graph(a + b, tuple((i, a + j) for i in range(a) for j in range(b)))


def cycle(n):
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return Graph(n, tuple((i, (i + 1) % n) for i in range(n)))


def hamming_halfcube(k):
    """Vertices ``0 .. 2^k - 1`` (bit strings); edges join strings at Hamming
    distance between 1 and ``k // 2``."""
    if k < 3:
        raise ValueError("k must be at least 3")
    v = np.arange(2**k, dtype=np.int64)
    dist = np.bitwise_count(v[:, None] ^ v[None, :])
    return Graph.from_adjacency((dist >= 1) & (dist <= k // 2))


def bipartite_minus_matching(m):
    """``K_{m,m}`` without the perfect matching ``(i, m + i)``."""
    if m < 2:
        raise ValueError("m must be at least 2")
    return Graph(2 * m, tuple((i, m + j) for i in range(m) for j in range(m) if i != j))


def double(g):
    """The ``n``-regular graph on ``2n`` vertices with adjacency
    ``[[M, J - M], [J - M, M]]`` built from a ``d``-regular ``g``, ``d <= n/2``."""
    deg = g.degrees()
    n = g.n
    if n == 0 or deg.min() != deg.max():
        raise HypothesisError("double() needs a regular graph")
    if 2 * deg[0] > n:
        raise HypothesisError(f"double() needs degree <= n/2, got {deg[0]} for n={n}")
    m = g.adjacency()
    comp = 1 - m
    return Graph.from_adjacency(np.block([[m, comp], [comp.T, m]]))


KINDS = {
    "complete_bipartite": complete_bipartite,
    "cycle": cycle,
    "hamming_halfcube": hamming_halfcube,
    "bipartite_minus_matching": bipartite_minus_matching,
    "double": double,
}


def generate_graph(kind, *args):
    try:
        build = KINDS[kind]
    except KeyError:
        raise ValueError(f"unknown graph kind {kind!r}; expected one of {sorted(KINDS)}") from None
    return build(*args)


# ---------------------------------------------------------------- Krawtchouk


def krawtchouk(k, s, i):
    """``K_s^(k)(i) = sum_j (-1)^j C(i, j) C(k - i, s - j)``, exactly."""
    if not (0 <= s <= k and 0 <= i <= k):
        raise ValueError(f"need 0 <= s, i <= k; got k={k}, s={s}, i={i}")
    return sum((-1) ** j * comb(i, j) * comb(k - i, s - j) for j in range(s + 1))


def hamming_spectrum_analytic(k):
    """Adjacency spectrum of :func:`hamming_halfcube` for odd ``k`` as sorted
    ``[(eigenvalue, multiplicity), ...]``, largest first.

    A character of weight ``w >= 1`` has eigenvalue
    ``K_{(k-1)/2}^{(k-1)}(w - 1) - 1`` (the ``-1`` removes the identity element
    from the generating set); the trivial character gives the degree.
    """
    if k < 3 or k % 2 == 0:
        raise ValueError(f"k must be odd and at least 3, got {k}")
    half = (k - 1) // 2
    mult = Counter()
    mult[sum(comb(k, s) for s in range(1, half + 1))] += 1
    for w in range(1, k + 1):
        mult[krawtchouk(k - 1, half, w - 1) - 1] += comb(k, w)
    return sorted(mult.items(), reverse=True)


def expand_multiset(pairs):
    return np.array([v for v, m in pairs for _ in range(m)], dtype=np.float64)


# ---------------------------------------------------------------- spectra


def diameter(g):
    """Longest shortest path by level-synchronous BFS from all sources; ``inf``
    if disconnected."""
    n = g.n
    if n <= 1:
        return 0
    adj = g.adjacency().astype(np.float32)
    reached = np.eye(n, dtype=bool)
    frontier = reached.copy()
    depth = 0
    while True:
        nxt = ((frontier.astype(np.float32) @ adj) > 0) & ~reached
        if not nxt.any():
            break
        reached |= nxt
        frontier = nxt
        depth += 1
    return depth if reached.all() else inf


def is_connected(g):
    return diameter(g) != inf


def two_coloring(g):
    """A proper 2-colouring as a list of 0/1, or None if the graph is not bipartite."""
    color = [-1] * g.n
    adj = [[] for _ in range(g.n)]
    for u, v in g.edges:
        adj[u].append(v)
        adj[v].append(u)
    for root in range(g.n):
        if color[root] >= 0:
            continue
        color[root] = 0
        stack = [root]
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if color[w] < 0:
                    color[w] = 1 - color[u]
                    stack.append(w)
                elif color[w] == color[u]:
                    return None
    return color


@dataclass(frozen=True, eq=False)
class SpectralSummary:
    eigenvalues: np.ndarray
    degree_min: int
    degree_max: int
    is_regular: bool
    degree: Optional[int]
    delta: Optional[float]
    diameter: float
    n_edges: int

    @property
    def lambda1(self):
        return float(self.eigenvalues[0])

    @property
    def lambda2(self):
        return float(self.eigenvalues[1]) if len(self.eigenvalues) > 1 else None

    @property
    def lambda_n(self):
        return float(self.eigenvalues[-1])


def spectral_summary(g):
    if g.n < 1:
        raise ValueError("graph has no vertices")
    deg = g.degrees()
    regular = bool(deg.min() == deg.max())
    d = int(deg[0]) if regular else None
    return SpectralSummary(
        eigenvalues=g.eigenvalues(),
        degree_min=int(deg.min()),
        degree_max=int(deg.max()),
        is_regular=regular,
        degree=d,
        delta=d / g.n if regular else None,
        diameter=diameter(g),
        n_edges=g.m,
    )


def regular_degree(g, summary=None):
    """Degree of a regular graph, cross-checked against ``lambda_1``."""
    s = summary or spectral_summary(g)
    if not s.is_regular:
        raise HypothesisError("graph is not regular")
    if abs(s.lambda1 - s.degree) > REGULAR_TOL:
        raise HypothesisError(f"lambda_1 = {s.lambda1} disagrees with degree {s.degree}")
    return s.degree


# ---------------------------------------------------------------- mixing


def _require_half_regular(g, strict=True):
    deg = g.degrees()
    if g.n == 0 or deg.min() != deg.max():
        raise HypothesisError("mixing bound needs a regular graph")
    if strict and (g.n % 2 or 2 * deg[0] != g.n):
        raise HypothesisError("mixing bound needs an n/2-regular graph on an even number of vertices")


def internal_edges(g, subset):
    idx = np.asarray(sorted(set(subset)), dtype=np.int64)
    return int(g.adjacency()[np.ix_(idx, idx)].sum() // 2)


class MixingCheck(NamedTuple):
    internal_edges: int
    bound: float
    ok: bool


def mixing_bound_check(g, subset, strict=True):
    """``e(U) <= |U|^2/4 + lambda_2 |U| / 2`` for one vertex subset.

    ``strict=False`` accepts any regular graph, for probing the bound beyond
    the n/2-regular case where it is proved.
    """
    _require_half_regular(g, strict)
    subset = sorted(set(int(v) for v in subset))
    if not subset:
        raise ValueError("subset must be nonempty")
    if subset[0] < 0 or subset[-1] >= g.n:
        raise ValueError("subset vertex out of range")
    lam2 = float(g.eigenvalues()[1])
    k = float(len(subset))
    e = internal_edges(g, subset)
    bound = k * k / 4.0 + lam2 * k / 2.0
    return MixingCheck(e, bound, e <= bound + MIXING_TOL)


class MixingScan(NamedTuple):
    subsets: int
    violations: int
    worst_slack: float
    worst_subset: tuple


def mixing_scan(g, tol=MIXING_TOL, strict=True):
    """Check the mixing bound on every nonempty vertex subset."""
    _require_half_regular(g, strict)
    if g.n > MAX_SCAN_VERTICES:
        raise ValueError(f"exhaustive scan limited to {MAX_SCAN_VERTICES} vertices")
    adj = g.neighbor_masks()
    lam2 = float(g.eigenvalues()[1])
    total = 1 << g.n
    parts = _backend.map_chunks(
        lambda lo, hi: _backend.kernels.mixing_scan(adj, lam2, lo, hi, tol), total
    )
    violations = sum(p[0] for p in parts)
    worst, mask = -inf, -1
    for _, slack, m in parts:
        if m >= 0 and slack > worst:
            worst, mask = slack, m
    subset = tuple(v for v in range(g.n) if (mask >> v) & 1)
    return MixingScan(total - 1, violations, worst, subset)


# ---------------------------------------------------------------- edits


def edge_edit_distance(g, h):
    """``|E(g) symmetric-difference E(h)|`` under the given labeling."""
    if g.n != h.n:
        raise ValueError(f"graphs have {g.n} and {h.n} vertices")
    return len(g.edge_set() ^ h.edge_set())
