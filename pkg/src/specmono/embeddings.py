"""Monotone and spherical embeddings, hard instances, and order counting."""
from math import comb
from typing import NamedTuple, Optional

import numpy as np

from . import _backend
from .numerics import Embedding, gram_factor
from .orders import PairOrder, canonical_epsilon_matrix, index_pairs, num_pairs, pair_index

__all__ = [
    "Embedding",
    "MarginReport",
    "MonotoneCheck",
    "monotone_embed_l2",
    "verify_monotone",
    "verify_spherical",
    "hamming_embedding",
    "linf_hard_instance",
    "norm_hard_instance",
    "milnor_thom_bound",
    "order_count_ceiling",
    "count_realized_orders_mc",
    "sample_realized_orders",
]

NORMS = ("euclidean", "max")
TIE_RTOL = 1e-9
NORM_INSTANCE_CAP = 3126


def monotone_embed_l2(order):
    """Unit vectors in ``R^n`` whose squared distances are ``2 + 2 eps_ij``.

    ``I - eps`` is positive definite because every row of ``eps`` sums to less
    than one; its Gram factor realizes the order.
    """
    eps = canonical_epsilon_matrix(order)
    return gram_factor(np.eye(order.n) - eps)


class MonotoneCheck(NamedTuple):
    ok: bool
    violation: Optional[tuple]


def _pair_distances(e, norm):
    i, j = np.triu_indices(e.n, k=1)
    diff = e.coords[i] - e.coords[j]
    if norm == "euclidean":
        return (diff * diff).sum(axis=1)
    if norm == "max":
        return np.abs(diff).max(axis=1)
    raise ValueError(f"unknown norm {norm!r}; expected one of {NORMS}")


def verify_monotone(e, order, norm="euclidean"):
    """Exhaustively compare every two pairs' distances against ``order``.

    On failure the violation is the first offending ``((i, j), (k, l))`` in
    lexicographic order of pairs of pairs; equal distances count as violations.
    """
    if e.n != order.n:
        raise ValueError(f"embedding has {e.n} points, order has {order.n}")
    dist = _pair_distances(e, norm)
    a, b = _backend.kernels.first_monotone_violation(dist, order.ranks)
    if a < 0:
        return MonotoneCheck(True, None)
    pairs = index_pairs(e.n)
    return MonotoneCheck(False, (tuple(int(v) for v in pairs[a]), tuple(int(v) for v in pairs[b])))


class MarginReport(NamedTuple):
    """Squared-distance separation of an embedding at threshold 1.

    ``a`` / ``b`` are None when the graph has no edges / no non-edges.
    """

    a: Optional[float]
    b: Optional[float]
    feasible: bool
    margin: float
    gap: Optional[float]


def verify_spherical(e, g):
    """Measure how well ``e`` realizes ``g`` as a threshold-1 proximity graph."""
    if e.n != g.n:
        raise ValueError(f"embedding has {e.n} points, graph has {g.n}")
    sq = e.squared_distances()
    adj = g.adjacency().astype(bool)
    off = ~np.eye(g.n, dtype=bool)
    edge = sq[adj]
    nonedge = sq[off & ~adj]
    a = float(edge.max()) if edge.size else None
    b = float(nonedge.min()) if nonedge.size else None
    sides = []
    if a is not None:
        sides.append(1.0 - a)
    if b is not None:
        sides.append(b - 1.0)
    margin = min(sides) if sides else float("inf")
    gap = b - a if a is not None and b is not None else None
    return MarginReport(a, b, margin > 0, margin, gap)


def hamming_embedding(k, scale=None):
    """Bit strings of length ``k`` scaled so squared distances are
    ``scale^2 * HammingDistance``; default ``scale = sqrt(2/k)``, placing the
    half-cube threshold ``k/2`` exactly at 1."""
    if scale is None:
        scale = np.sqrt(2.0 / k)
    v = np.arange(2**k)
    bits = (v[:, None] >> np.arange(k - 1, -1, -1)[None, :]) & 1
    return Embedding(bits * scale)


def linf_hard_instance(n):
    """Order on ``2n + 2`` points where each pair ``(2i, 2i+1)`` is longer
    than every distance from either of its points to the others.

    The ``n + 1`` designated pairs take the top ranks; everything else is
    ranked lexicographically.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    points = 2 * n + 2
    designated = {pair_index(2 * i, 2 * i + 1, points) for i in range(n + 1)}
    rest = [k for k in range(num_pairs(points)) if k not in designated]
    return PairOrder(points, rest + sorted(designated))


def norm_hard_instance(n, base=5, cap=NORM_INSTANCE_CAP):
    """Order on ``base**n + 1`` points where every pair touching point 0 is
    shorter than every other pair (lexicographic order already has this form)."""
    if n < 1:
        raise ValueError("n must be at least 1")
    points = base**n + 1
    if points > cap:
        raise ValueError(f"{points} points exceeds the cap of {cap}")
    return PairOrder.lexicographic(points)


def _check_mt(m, k, d, l):
    if not 1 <= k <= m:
        raise ValueError(f"k must lie in [1, m={m}], got {k}")
    if d < 1 or l < 1:
        raise ValueError("degree and variable count must be at least 1")


def milnor_thom_exponent(m, k, l):
    """``ceil(l + m/k - 1)`` in exact integer arithmetic."""
    return l - 1 + (-(-m // k))


def milnor_thom_bound(m, k, d, l):
    """Sign-pattern bound ``2kd (4kd - 1)^ceil(l + m/k - 1)`` as an exact integer."""
    _check_mt(m, k, d, l)
    return 2 * k * d * (4 * k * d - 1) ** milnor_thom_exponent(m, k, l)


def _log_mt(m, k, d, l):
    return np.log(2 * k * d) + milnor_thom_exponent(m, k, l) * np.log(4 * k * d - 1)


def order_count_ceiling(n, d):
    """Smallest sign-pattern bound over ``k`` for the ``C(C(n,2),2)`` quadratic
    distance-difference polynomials in ``n*d`` variables. Returns ``(bound, k)``."""
    m = comb(num_pairs(n), 2)
    l = n * d
    if m == 0:
        return 1, 0
    logs = [_log_mt(m, k, 2, l) for k in range(1, m + 1)]
    best = int(np.argmin(logs)) + 1
    # log ties near the optimum are resolved exactly
    cands = [k for k in range(1, m + 1) if logs[k - 1] <= logs[best - 1] + 1e-9]
    bound, k = min((milnor_thom_bound(m, k, 2, l), k) for k in cands)
    return bound, k


class OrderSample(NamedTuple):
    orders: frozenset
    accepted: int
    discarded: int


def _trial_order(points, rel):
    # relabel points by lexicographic position so the order is canonical
    perm = np.lexsort(points.T[::-1])
    pts = points[perm]
    i, j = np.triu_indices(len(pts), k=1)
    diff = pts[i] - pts[j]
    sq = (diff * diff).sum(axis=1)
    seq = np.argsort(sq, kind="stable")
    ranked = sq[seq]
    gaps = np.diff(ranked)
    if np.any(gaps <= rel * ranked[1:]):
        return None
    return seq.tobytes()


def sample_realized_orders(n, d, trials, seed=0):
    """Induced pair orders of uniform random point sets in ``[0,1]^(n x d)``.

    Trial ``t`` draws from a stream keyed by ``(seed, t)``, so the result does
    not depend on chunking or worker count. Points are relabelled in
    lexicographic order of their coordinates before the order is read off, and
    samples whose squared distances are tied to relative ``1e-9`` are dropped.
    """
    if n < 3 or d < 1 or trials < 1:
        raise ValueError("need n >= 3, d >= 1, trials >= 1")

    def run(lo, hi):
        found, dropped = set(), 0
        for t in range(lo, hi):
            rng = np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(t,)))
            key = _trial_order(rng.random((n, d)), TIE_RTOL)
            if key is None:
                dropped += 1
            else:
                found.add(key)
        return found, dropped

    orders, dropped = set(), 0
    for found, lost in _backend.map_chunks(run, trials, chunk=1024):
        orders |= found
        dropped += lost
    return OrderSample(frozenset(orders), trials - dropped, dropped)


def count_realized_orders_mc(n, d, trials, seed=0):
    """Number of distinct canonical orders seen in ``trials`` random samples."""
    return len(sample_realized_orders(n, d, trials, seed).orders)
