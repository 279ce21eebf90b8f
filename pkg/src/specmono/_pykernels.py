"""Pure numpy implementations of the hot kernels.

Every function here has a twin in ``_kernels.pyx`` with the same signature and
the same floating point operation order, so both backends return identical
results on the same machine.
"""
import numpy as np

BACKEND = "python"


def jacobi_eigh(a, pairs, offsets, abs_tol, max_sweeps):
    """Cyclic Jacobi on a symmetric matrix using a round-robin pair schedule.

    ``pairs`` holds all (p, q) pairs of one sweep, grouped into rounds of
    disjoint pairs delimited by ``offsets``. Returns the diagonal after
    convergence, the eigenvectors as rows, and the number of sweeps used.
    """
    a = np.array(a, dtype=np.float64, order="C", copy=True)
    n = a.shape[0]
    vt = np.eye(n)
    sweeps = 0
    if n < 2:
        return a.diagonal().copy(), vt, sweeps
    n_rounds = len(offsets) - 1
    while sweeps < max_sweeps:
        rotated = False
        for r in range(n_rounds):
            block = pairs[offsets[r]:offsets[r + 1]]
            p = block[:, 0]
            q = block[:, 1]
            apq = a[p, q]
            active = np.abs(apq) > abs_tol
            if not active.any():
                continue
            rotated = True
            p = p[active]
            q = q[active]
            apq = apq[active]
            theta = (a[q, q] - a[p, p]) / (2.0 * apq)
            big = np.abs(theta) > 1e150
            safe = np.where(big, 0.0, theta)
            t = np.copysign(1.0, theta) / (np.abs(safe) + np.sqrt(safe * safe + 1.0))
            if big.any():
                t[big] = 0.5 / theta[big]
            c = 1.0 / np.sqrt(t * t + 1.0)
            s = t * c
            cc = c[:, None]
            ss = s[:, None]

            rp = a[p]
            rq = a[q]
            a[p] = cc * rp - ss * rq
            a[q] = ss * rp + cc * rq

            cp = a[:, p]
            cq = a[:, q]
            a[:, p] = cp * c - cq * s
            a[:, q] = cp * s + cq * c

            a[p, q] = 0.0
            a[q, p] = 0.0

            vp = vt[p]
            vq = vt[q]
            vt[p] = cc * vp - ss * vq
            vt[q] = ss * vp + cc * vq
        sweeps += 1
        if not rotated:
            break
        off = np.abs(a - np.diag(a.diagonal())).max()
        if off <= abs_tol:
            break
    else:
        raise RuntimeError(f"Jacobi did not converge in {max_sweeps} sweeps")
    return a.diagonal().copy(), vt, sweeps


def first_monotone_violation(dist, rank):
    """First (a, b), a < b in pair index order, whose distance comparison
    disagrees with the rank comparison; (-1, -1) if there is none.
    Equal distances always count as a violation."""
    dist = np.asarray(dist, dtype=np.float64)
    rank = np.asarray(rank, dtype=np.int64)
    for a in range(len(dist) - 1):
        db = dist[a + 1:]
        rb = rank[a + 1:]
        ok = ((rank[a] < rb) & (dist[a] < db)) | ((rank[a] > rb) & (dist[a] > db))
        if not ok.all():
            return a, a + 1 + int(np.argmin(ok))
    return -1, -1


def _members(masks, n):
    return [((masks >> np.uint64(v)) & np.uint64(1)).astype(bool) for v in range(n)]


def mixing_scan(adj, lam2, lo, hi, tol):
    """Scan subsets ``lo <= mask < hi`` (the empty set skipped) for
    ``e(U) > |U|^2/4 + lam2 |U|/2 + tol``.

    Returns ``(violations, worst_slack, worst_mask)``; the worst slack is the
    largest ``e(U) - bound`` with ties going to the smaller mask.
    """
    adj = np.asarray(adj, dtype=np.uint64)
    n = len(adj)
    masks = np.arange(max(lo, 1), hi, dtype=np.uint64)
    if len(masks) == 0:
        return 0, -np.inf, -1
    twice = np.zeros(len(masks), dtype=np.int64)
    for v, inside in enumerate(_members(masks, n)):
        twice += np.where(inside, np.bitwise_count(adj[v] & masks), 0)
    e = (twice >> 1).astype(np.float64)
    k = np.bitwise_count(masks).astype(np.float64)
    bound = k * k / 4.0 + lam2 * k / 2.0
    slack = e - bound
    i = int(np.argmax(slack))
    return int((slack > tol).sum()), float(slack[i]), int(masks[i])


def lex_less(a, b):
    """Compare two vertex bitmasks by their sorted member lists."""
    if a == b:
        return False
    low = (a ^ b) & -(a ^ b)
    above = ~(2 * low - 1)
    if a & low:
        return (b & above) != 0
    return (a & above) == 0


def bipartition_scan(adj, n_edges, lo, hi):
    """Minimum edit count to a complete bipartite graph over the sides
    ``S = (m << 1) | 1`` for ``lo <= m < hi`` (vertex 0 always in S).

    Returns ``(best_edits, best_mask)``; ties go to the lexicographically
    smallest side.
    """
    adj = np.asarray(adj, dtype=np.uint64)
    n = len(adj)
    full = np.uint64((1 << n) - 1)
    side = (np.arange(lo, hi, dtype=np.uint64) << np.uint64(1)) | np.uint64(1)
    if len(side) == 0:
        return -1, -1
    other = ~side & full
    cross = np.zeros(len(side), dtype=np.int64)
    for v, inside in enumerate(_members(side, n)):
        cross += np.where(inside, np.bitwise_count(adj[v] & other), 0)
    s = np.bitwise_count(side).astype(np.int64)
    edits = n_edges + s * (n - s) - 2 * cross
    best = int(edits.min())
    tied = side[edits == best]
    mask = int(tied[0])
    for cand in tied[1:]:
        if lex_less(int(cand), mask):
            mask = int(cand)
    return best, mask
