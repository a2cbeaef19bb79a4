# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled graph kernels; see ``_pykernels`` for the reference semantics."""
import numpy as np
cimport numpy as cnp

cnp.import_array()


def sssp(const cnp.int64_t[::1] indptr, const cnp.int64_t[::1] indices,
         const cnp.int8_t[::1] weights, Py_ssize_t source, long long cap=-1):
    cdef Py_ssize_t n = indptr.shape[0] - 1
    cdef Py_ssize_t m = indices.shape[0]
    dist_arr = np.full(n, -1, dtype=np.int64)
    cdef cnp.int64_t[::1] dist = dist_arr
    # three bucket stacks stored as linked lists over a shared pool
    cdef Py_ssize_t pool_size = m + 1
    nxt_arr = np.empty(pool_size, dtype=np.int64)
    item_arr = np.empty(pool_size, dtype=np.int64)
    cdef cnp.int64_t[::1] nxt = nxt_arr
    cdef cnp.int64_t[::1] item = item_arr
    cdef cnp.int64_t head[3]
    cdef Py_ssize_t used = 0
    cdef long long pending = 0
    cdef long long cur = 0
    cdef long long nd
    cdef Py_ssize_t u, v, e, slot, b
    head[0] = -1
    head[1] = -1
    head[2] = -1
    dist[source] = 0
    item[0] = source
    nxt[0] = -1
    head[0] = 0
    used = 1
    pending = 1
    while pending > 0:
        b = cur % 3
        while head[b] >= 0:
            slot = head[b]
            head[b] = nxt[slot]
            u = item[slot]
            pending -= 1
            if dist[u] != cur:
                continue
            for e in range(indptr[u], indptr[u + 1]):
                v = indices[e]
                nd = cur + weights[e]
                if cap >= 0 and nd > cap:
                    continue
                if dist[v] < 0 or nd < dist[v]:
                    dist[v] = nd
                    if used >= pool_size:
                        # pool exhausted: compact by rebuilding from live entries
                        pool_size = pool_size * 2
                        nxt_arr = np.resize(nxt_arr, pool_size)
                        item_arr = np.resize(item_arr, pool_size)
                        nxt = nxt_arr
                        item = item_arr
                    item[used] = v
                    nxt[used] = head[nd % 3]
                    head[nd % 3] = used
                    used += 1
                    pending += 1
        cur += 1
    return dist_arr


def distance_rows(const cnp.int64_t[::1] indptr, const cnp.int64_t[::1] indices,
                  const cnp.int8_t[::1] weights, sources, long long cap=-1):
    cdef Py_ssize_t n = indptr.shape[0] - 1
    out = np.empty((len(sources), n), dtype=np.int64)
    for row, s in enumerate(sources):
        out[row] = sssp(indptr, indices, weights, int(s), cap)
    return out


cdef inline long long _defect(long long a, long long b, long long c) nogil:
    cdef long long t
    if a < b:
        t = a; a = b; b = t
    if b < c:
        t = b; b = c; c = t
    if a < b:
        t = a; a = b; b = t
    return a - b


def four_point_max(const cnp.int64_t[:, ::1] D, const cnp.int64_t[:, ::1] quads):
    cdef Py_ssize_t q, m = quads.shape[0]
    cdef Py_ssize_t w, x, y, z
    cdef long long best = 0, val
    cdef Py_ssize_t arg = -1
    for q in range(m):
        w = quads[q, 0]; x = quads[q, 1]; y = quads[q, 2]; z = quads[q, 3]
        val = _defect(D[w, x] + D[y, z], D[w, y] + D[x, z], D[w, z] + D[x, y])
        if arg < 0 or val > best:
            best = val
            arg = q
    return best, arg


def four_point_exhaustive(const cnp.int64_t[:, ::1] D):
    cdef Py_ssize_t n = D.shape[0]
    cdef Py_ssize_t i, j, k, l
    cdef long long best = 0, val
    cdef Py_ssize_t bi = -1, bj = -1, bk = -1, bl = -1
    if n < 4:
        return 0, None
    for i in range(n - 3):
        for j in range(i + 1, n - 2):
            for k in range(j + 1, n - 1):
                for l in range(k + 1, n):
                    val = _defect(D[i, j] + D[k, l], D[i, k] + D[j, l], D[i, l] + D[j, k])
                    if bi < 0 or val > best:
                        best = val
                        bi = i; bj = j; bk = k; bl = l
    return best, (bi, bj, bk, bl)
