"""Linear orders on point pairs and the metrics consistent with them.

Pairs ``(i, j)``, ``i < j``, are indexed lexicographically; ``pair_index`` and
``index_pairs`` convert between the two views.
"""
from dataclasses import dataclass
from math import comb

import numpy as np


def num_pairs(n):
    return n * (n - 1) // 2


def index_pairs(n):
    """``(C(n,2), 2)`` array of all pairs in lexicographic order."""
    i, j = np.triu_indices(n, k=1)
    return np.stack([i, j], axis=1).astype(np.int64)


def pair_index(i, j, n):
    if i > j:
        i, j = j, i
    if not 0 <= i < j < n:
        raise ValueError(f"invalid pair ({i}, {j}) for n={n}")
    return i * n - i * (i + 1) // 2 + (j - i - 1)


class TieError(ValueError):
    def __init__(self, first, second):
        super().__init__(f"pairs {first} and {second} have equal distance")
        self.pairs = (first, second)


@dataclass(frozen=True, eq=False)
class PairOrder:
    """A strict linear order on the pairs of ``range(n)``.

    ``sequence[r]`` is the lexicographic index of the pair with rank ``r``.
    """

    n: int
    sequence: np.ndarray

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("a pair order needs at least 2 points")
        seq = np.array(self.sequence, dtype=np.int64).reshape(-1)
        total = num_pairs(self.n)
        if len(seq) != total:
            raise ValueError(f"expected {total} ranked pairs, got {len(seq)}")
        seen = np.zeros(total, dtype=bool)
        if len(seq) and (seq.min() < 0 or seq.max() >= total):
            raise ValueError("pair index out of range")
        seen[seq] = True
        if not seen.all():
            raise ValueError("ranks are not a bijection onto the pairs")
        seq.setflags(write=False)
        object.__setattr__(self, "sequence", seq)

    @classmethod
    def from_pairs(cls, n, pairs):
        """Build from pairs listed in increasing rank."""
        return cls(n, [pair_index(int(i), int(j), n) for i, j in pairs])

    @classmethod
    def lexicographic(cls, n):
        return cls(n, np.arange(num_pairs(n)))

    @classmethod
    def random(cls, n, rng):
        return cls(n, rng.permutation(num_pairs(n)))

    @property
    def ranks(self):
        """``ranks[k]`` is the rank of the pair with lexicographic index ``k``."""
        r = np.empty_like(self.sequence)
        r[self.sequence] = np.arange(len(self.sequence))
        return r

    def rank(self, i, j):
        idx = pair_index(i, j, self.n)
        return int(np.flatnonzero(self.sequence == idx)[0])

    def pairs(self):
        """Pairs in increasing rank order."""
        return [tuple(int(v) for v in p) for p in index_pairs(self.n)[self.sequence]]

    def rank_matrix(self):
        """Symmetric matrix of ranks, -1 on the diagonal."""
        m = np.full((self.n, self.n), -1, dtype=np.int64)
        i, j = np.triu_indices(self.n, k=1)
        m[i, j] = self.ranks
        m[j, i] = m[i, j]
        return m

    def reversed(self):
        return PairOrder(self.n, self.sequence[::-1])

    def __eq__(self, other):
        if not isinstance(other, PairOrder):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.sequence, other.sequence)

    def __hash__(self):
        return hash((self.n, self.sequence.tobytes()))

    def __repr__(self):
        if self.n <= 6:
            return f"PairOrder(n={self.n}, pairs={self.pairs()})"
        return f"PairOrder(n={self.n}, ...)"


@dataclass(frozen=True, eq=False)
class FiniteMetric:
    """Distance matrix of a metric on ``range(n)`` with strictly positive
    off-diagonal entries; the triangle inequality is checked on construction."""

    dist: np.ndarray

    def __post_init__(self):
        d = np.array(self.dist, dtype=np.float64)
        if d.ndim != 2 or d.shape[0] != d.shape[1]:
            raise ValueError("distance matrix must be square")
        if not np.isfinite(d).all():
            raise ValueError("distances must be finite")
        if np.any(d.diagonal() != 0):
            raise ValueError("distance matrix must have a zero diagonal")
        if not np.array_equal(d, d.T):
            raise ValueError("distance matrix must be symmetric")
        off = ~np.eye(len(d), dtype=bool)
        if np.any(d[off] <= 0):
            raise ValueError("off-diagonal distances must be positive")
        bad = triangle_violation(d)
        if bad is not None:
            raise ValueError(f"triangle inequality fails for {bad}")
        d.setflags(write=False)
        object.__setattr__(self, "dist", d)

    @property
    def n(self):
        return self.dist.shape[0]

    def pair_distances(self):
        """Distances in lexicographic pair order."""
        i, j = np.triu_indices(self.n, k=1)
        return self.dist[i, j]

    @classmethod
    def from_points(cls, points):
        pts = np.asarray(points, dtype=np.float64)
        if pts.ndim == 1:
            pts = pts[:, None]
        diff = pts[:, None, :] - pts[None, :, :]
        return cls(np.sqrt((diff * diff).sum(axis=2)))


def triangle_violation(d, rtol=1e-12):
    """First ``(i, j, k)`` with ``d[i, j] > d[i, k] + d[k, j]``, or None."""
    n = len(d)
    for k in range(n):
        via = d[:, k][:, None] + d[k, :][None, :]
        bad = d > via * (1 + rtol)
        if bad.any():
            i, j = np.argwhere(bad)[0]
            return int(i), int(j), k
    return None


def epsilon_metric(order, eps_max):
    """``delta(i, j) = 1 + eps_max (rank(i, j) + 1) / C(n, 2)``.

    All distances lie in ``(1, 1 + eps_max]`` so the triangle inequality is
    automatic for ``eps_max < 1``.
    """
    if not 0 < eps_max < 1:
        raise ValueError(f"eps_max must lie in (0, 1), got {eps_max}")
    n = order.n
    values = 1.0 + eps_max * (order.ranks + 1) / num_pairs(n)
    d = np.zeros((n, n))
    i, j = np.triu_indices(n, k=1)
    d[i, j] = values
    d[j, i] = values
    return FiniteMetric(d)


def consistent(metric, order):
    """True iff every comparison of two pair distances agrees with ``order``."""
    if metric.n != order.n:
        raise ValueError(f"metric has {metric.n} points, order has {order.n}")
    ranked = metric.pair_distances()[order.sequence]
    return bool(np.all(np.diff(ranked) > 0))


def order_from_metric(metric):
    """The pair order induced by the distances; ties raise :class:`TieError`."""
    dist = metric.pair_distances()
    seq = np.argsort(dist, kind="stable")
    ranked = dist[seq]
    ties = np.flatnonzero(np.diff(ranked) == 0)
    if len(ties):
        pairs = index_pairs(metric.n)
        a, b = seq[ties[0]], seq[ties[0] + 1]
        raise TieError(tuple(int(v) for v in pairs[a]), tuple(int(v) for v in pairs[b]))
    return PairOrder(metric.n, seq)


def canonical_epsilon_matrix(order):
    """Symmetric ``eps`` with ``eps_ij = (rank(i, j) + 1) / (n (C(n,2) + 1))``.

    Off-diagonal entries are in ``(0, 1/n)`` and increase with rank, so every
    row sum is below 1.
    """
    n = order.n
    eps = np.zeros((n, n))
    i, j = np.triu_indices(n, k=1)
    eps[i, j] = (order.ranks + 1) / (n * (comb(n, 2) + 1))
    eps[j, i] = eps[i, j]
    return eps
