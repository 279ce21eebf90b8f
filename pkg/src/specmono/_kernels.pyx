# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels. Mirrors ``_pykernels`` operation for operation."""
import numpy as np
cimport numpy as cnp
from libc.math cimport fabs, sqrt, copysign, INFINITY
from libc.stdint cimport uint64_t, int64_t

cnp.import_array()

BACKEND = "compiled"


cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil


cdef inline int popcount(uint64_t x) noexcept nogil:
    return __builtin_popcountll(x)


def jacobi_eigh(a_in, const int64_t[:, ::1] pairs, const int64_t[::1] offsets,
                double abs_tol, int max_sweeps):
    cdef cnp.ndarray[cnp.float64_t, ndim=2] a_arr = np.array(a_in, dtype=np.float64, order="C", copy=True)
    cdef Py_ssize_t n = a_arr.shape[0]
    cdef cnp.ndarray[cnp.float64_t, ndim=2] vt_arr = np.eye(n)
    cdef double[:, ::1] a = a_arr
    cdef double[:, ::1] vt = vt_arr
    cdef Py_ssize_t n_rounds = offsets.shape[0] - 1
    cdef Py_ssize_t max_pairs = 0
    cdef Py_ssize_t r, k, i, j, p, q, npair
    cdef double apq, theta, t, c, s, x, y, off
    cdef int sweeps = 0
    cdef bint rotated, converged = False
    if n < 2:
        return a_arr.diagonal().copy(), vt_arr, 0
    for r in range(n_rounds):
        if offsets[r + 1] - offsets[r] > max_pairs:
            max_pairs = offsets[r + 1] - offsets[r]
    cdef cnp.ndarray[cnp.int64_t, ndim=1] ap_arr = np.empty(max_pairs, dtype=np.int64)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] aq_arr = np.empty(max_pairs, dtype=np.int64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] c_arr = np.empty(max_pairs)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] s_arr = np.empty(max_pairs)
    cdef int64_t[::1] ap = ap_arr
    cdef int64_t[::1] aq = aq_arr
    cdef double[::1] cs = c_arr
    cdef double[::1] sn = s_arr

    with nogil:
        while sweeps < max_sweeps:
            rotated = False
            for r in range(n_rounds):
                npair = 0
                for k in range(offsets[r], offsets[r + 1]):
                    p = pairs[k, 0]
                    q = pairs[k, 1]
                    apq = a[p, q]
                    if not fabs(apq) > abs_tol:
                        continue
                    theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                    if fabs(theta) > 1e150:
                        t = 0.5 / theta
                    else:
                        t = copysign(1.0, theta) / (fabs(theta) + sqrt(theta * theta + 1.0))
                    c = 1.0 / sqrt(t * t + 1.0)
                    ap[npair] = p
                    aq[npair] = q
                    cs[npair] = c
                    sn[npair] = t * c
                    npair += 1
                if npair == 0:
                    continue
                rotated = True
                for k in range(npair):
                    p = ap[k]
                    q = aq[k]
                    c = cs[k]
                    s = sn[k]
                    for j in range(n):
                        x = a[p, j]
                        y = a[q, j]
                        a[p, j] = c * x - s * y
                        a[q, j] = s * x + c * y
                for i in range(n):
                    for k in range(npair):
                        p = ap[k]
                        q = aq[k]
                        x = a[i, p]
                        y = a[i, q]
                        a[i, p] = x * cs[k] - y * sn[k]
                        a[i, q] = x * sn[k] + y * cs[k]
                for k in range(npair):
                    a[ap[k], aq[k]] = 0.0
                    a[aq[k], ap[k]] = 0.0
                for k in range(npair):
                    p = ap[k]
                    q = aq[k]
                    c = cs[k]
                    s = sn[k]
                    for j in range(n):
                        x = vt[p, j]
                        y = vt[q, j]
                        vt[p, j] = c * x - s * y
                        vt[q, j] = s * x + c * y
            sweeps += 1
            if not rotated:
                converged = True
                break
            off = 0.0
            for i in range(n):
                for j in range(n):
                    if i != j and fabs(a[i, j]) > off:
                        off = fabs(a[i, j])
            if off <= abs_tol:
                converged = True
                break
    if not converged:
        raise RuntimeError(f"Jacobi did not converge in {max_sweeps} sweeps")
    return a_arr.diagonal().copy(), vt_arr, sweeps


def first_monotone_violation(dist_in, rank_in):
    cdef const double[::1] dist = np.ascontiguousarray(dist_in, dtype=np.float64)
    cdef const int64_t[::1] rank = np.ascontiguousarray(rank_in, dtype=np.int64)
    cdef Py_ssize_t N = dist.shape[0]
    cdef Py_ssize_t a, b
    cdef Py_ssize_t fa = -1, fb = -1
    cdef bint ok
    with nogil:
        for a in range(N - 1):
            for b in range(a + 1, N):
                ok = (rank[a] < rank[b] and dist[a] < dist[b]) or \
                     (rank[a] > rank[b] and dist[a] > dist[b])
                if not ok:
                    fa = a
                    fb = b
                    break
            if fa >= 0:
                break
    return fa, fb


def mixing_scan(adj_in, double lam2, uint64_t lo, uint64_t hi, double tol):
    cdef const uint64_t[::1] adj = np.ascontiguousarray(adj_in, dtype=np.uint64)
    cdef Py_ssize_t n = adj.shape[0]
    cdef uint64_t mask, start = lo if lo > 0 else 1
    cdef uint64_t worst_mask = 0
    cdef Py_ssize_t v
    cdef int64_t twice, violations = 0
    cdef double e, kf, bound, slack, worst = -INFINITY
    cdef bint any_mask = False
    with nogil:
        mask = start
        while mask < hi:
            twice = 0
            for v in range(n):
                if (mask >> v) & 1:
                    twice += popcount(adj[v] & mask)
            e = <double>(twice >> 1)
            kf = <double>popcount(mask)
            bound = kf * kf / 4.0 + lam2 * kf / 2.0
            slack = e - bound
            if slack > tol:
                violations += 1
            if not any_mask or slack > worst:
                worst = slack
                worst_mask = mask
                any_mask = True
            mask += 1
    if not any_mask:
        return 0, -np.inf, -1
    return int(violations), float(worst), int(worst_mask)


cdef inline bint lex_less(uint64_t a, uint64_t b) noexcept nogil:
    cdef uint64_t x, low, above
    if a == b:
        return False
    x = a ^ b
    low = x & (~x + 1)
    above = ~(2 * low - 1)
    if a & low:
        return (b & above) != 0
    return (a & above) == 0


def bipartition_scan(adj_in, int64_t n_edges, uint64_t lo, uint64_t hi):
    cdef const uint64_t[::1] adj = np.ascontiguousarray(adj_in, dtype=np.uint64)
    cdef Py_ssize_t n = adj.shape[0]
    cdef uint64_t full = (<uint64_t>1 << n) - 1
    cdef uint64_t m, side, other, best_mask = 0
    cdef int64_t cross, s, edits, best = -1
    cdef Py_ssize_t v
    with nogil:
        m = lo
        while m < hi:
            side = (m << 1) | 1
            other = ~side & full
            cross = 0
            for v in range(n):
                if (side >> v) & 1:
                    cross += popcount(adj[v] & other)
            s = popcount(side)
            edits = n_edges + s * (n - s) - 2 * cross
            if best < 0 or edits < best or (edits == best and lex_less(side, best_mask)):
                best = edits
                best_mask = side
            m += 1
    if best < 0:
        return -1, -1
    return int(best), int(best_mask)


def lex_less_py(uint64_t a, uint64_t b):
    return lex_less(a, b)
