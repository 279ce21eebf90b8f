"""Spectral recovery of a nearby complete bipartite graph."""
from dataclasses import dataclass
from math import inf, sqrt
from typing import NamedTuple

import numpy as np

from . import _backend
from .graphs import Graph, HypothesisError, diameter, two_coloring

MULTIPLICITY_TOL = 1e-8
MAX_BRUTE_VERTICES = 12


@dataclass(frozen=True)
class RecoveryReport:
    n: int
    sideA: tuple
    sideB: tuple
    leftover: tuple
    total_edits: int
    per_vertex_edits: tuple
    lambda2: float
    lambda_n: float
    lambda_n_minus_1: float
    lambda_n_gap: float
    hoffman_value: float
    eigen_multiplicity: int


def bipartite_on(n, side_a, side_b):
    """Complete bipartite graph on the given (possibly empty) sides."""
    return Graph(n, tuple((u, v) for u in side_a for v in side_b))


def bipartite_edits(g, side_a):
    """Per-vertex and total edits turning ``g`` into the complete bipartite
    graph with sides ``side_a`` and its complement."""
    in_a = np.zeros(g.n, dtype=bool)
    in_a[list(side_a)] = True
    adj = g.adjacency()
    same = in_a[:, None] == in_a[None, :]
    np.fill_diagonal(same, True)
    wrong = np.where(same, adj, 1 - adj)
    np.fill_diagonal(wrong, 0)
    per_vertex = wrong.sum(axis=1)
    return int(per_vertex.sum() // 2), tuple(int(v) for v in per_vertex)


def _assign_leftovers(g, side_a, side_b, leftovers):
    # fewer neighbours on a side means fewer internal edges there
    adj = g.adjacency()
    a, b = set(side_a), set(side_b)
    for v in leftovers:
        na = int(adj[v, list(a)].sum()) if a else 0
        nb = int(adj[v, list(b)].sum()) if b else 0
        if na != nb:
            to_a = na < nb
        elif len(a) != len(b):
            to_a = len(a) < len(b)
        else:
            to_a = True
        (a if to_a else b).add(v)
    return a, b


def spectral_bipartite_recovery(g):
    """Split vertices by the sign pattern of the bottom eigenvector.

    The eigenvector ``x`` of ``lambda_n`` is scaled to ``max |x| = 1`` with its
    largest coordinate ``+1``. Vertices with ``x <= -(1 - 1/sqrt n)`` seed side
    A and those with ``x >= 1 - 1/sqrt n`` seed side B; the looser ``+-1/2``
    thresholds then widen both sides, and whatever is left goes, in index
    order, to the side holding fewer of its neighbours (ties: the smaller
    side, then A).
    """
    n = g.n
    if n < 4:
        raise ValueError("recovery needs at least 4 vertices")
    if diameter(g) == inf:
        raise HypothesisError("graph is disconnected")
    spec = g.spectrum
    values = spec.values
    x = spec.vectors[:, -1].copy()
    x /= np.abs(x).max()
    # the sign convention already makes the largest-magnitude coordinate positive
    lam_n = float(values[-1])
    mult = int((np.abs(values - lam_n) <= MULTIPLICITY_TOL * max(1.0, abs(lam_n))).sum())

    thr = 1.0 - 1.0 / sqrt(n)
    seed_a = [v for v in range(n) if x[v] <= -thr]
    seed_b = [v for v in range(n) if x[v] >= thr]
    leftover = tuple(v for v in range(n) if -thr < x[v] < thr)
    wide_a = seed_a + [v for v in leftover if x[v] <= -0.5]
    wide_b = seed_b + [v for v in leftover if x[v] >= 0.5]
    rest = [v for v in leftover if -0.5 < x[v] < 0.5]
    a, b = _assign_leftovers(g, wide_a, wide_b, rest)

    total, per_vertex = bipartite_edits(g, a)
    lam_n1 = float(values[-2])
    return RecoveryReport(
        n=n,
        sideA=tuple(sorted(a)),
        sideB=tuple(sorted(b)),
        leftover=leftover,
        total_edits=total,
        per_vertex_edits=per_vertex,
        lambda2=float(values[1]),
        lambda_n=lam_n,
        lambda_n_minus_1=lam_n1,
        lambda_n_gap=abs(lam_n + n / 2),
        hoffman_value=float(values[0]) + lam_n1 + lam_n,
        eigen_multiplicity=mult,
    )


def closeness_ratio(g, r):
    """Edits per ``n^2``; empirically vanishing for graphs close to ``K_{n/2,n/2}``."""
    if g.n != r.n:
        raise ValueError("report and graph disagree on n")
    return r.total_edits / (g.n * g.n)


class BruteForce(NamedTuple):
    min_edits: int
    side: tuple
    other: tuple


def brute_force_min_edits(g):
    """Exact minimum edits to any complete bipartite graph, over all
    ``2^(n-1)`` splits with vertex 0 on the first side."""
    if g.n > MAX_BRUTE_VERTICES:
        raise ValueError(f"brute force limited to {MAX_BRUTE_VERTICES} vertices")
    if g.n == 0:
        return BruteForce(0, (), ())
    adj = g.neighbor_masks()
    m = g.m
    parts = _backend.map_chunks(
        lambda lo, hi: _backend.kernels.bipartition_scan(adj, m, lo, hi), 1 << (g.n - 1)
    )
    best, mask = parts[0]
    for edits, cand in parts[1:]:
        if edits < best or (edits == best and _backend._pykernels.lex_less(cand, mask)):
            best, mask = edits, cand
    side = tuple(v for v in range(g.n) if (mask >> v) & 1)
    other = tuple(v for v in range(g.n) if not (mask >> v) & 1)
    return BruteForce(int(best), side, other)


class HoffmanDiagnostic(NamedTuple):
    is_bipartite: bool
    hoffman_value: float
    lambda_n_minus_1: float


def hoffman_diagnostic(g):
    """``lambda_1 + lambda_{n-1} + lambda_n`` and bipartiteness, reported only."""
    values = g.eigenvalues()
    if len(values) < 2:
        raise ValueError("need at least 2 vertices")
    lam_n1 = float(values[-2])
    return HoffmanDiagnostic(
        two_coloring(g) is not None, float(values[0]) + lam_n1 + float(values[-1]), lam_n1
    )


def report(g, r):
    return {
        "n": r.n,
        "sideA": list(r.sideA),
        "sideB": list(r.sideB),
        "total_edits": r.total_edits,
        "per_vertex_edits": list(r.per_vertex_edits),
        "closeness_ratio": closeness_ratio(g, r),
        "lambda2": r.lambda2,
        "lambda_n": r.lambda_n,
        "lambda_n_minus_1": r.lambda_n_minus_1,
        "lambda_n_gap": r.lambda_n_gap,
        "hoffman_value": r.hoffman_value,
        "eigen_multiplicity": r.eigen_multiplicity,
    }


__all__ = [
    "RecoveryReport",
    "spectral_bipartite_recovery",
    "closeness_ratio",
    "brute_force_min_edits",
    "hoffman_diagnostic",
    "bipartite_on",
    "bipartite_edits",
]
