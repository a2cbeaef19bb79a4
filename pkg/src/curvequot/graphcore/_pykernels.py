"""Pure-Python/numpy implementations of the graph kernels.

Mirrors ``_ckernels.pyx`` function for function.  Edge weights are in
half-units and are either 1 (cone edges) or 2 (ordinary edges), so a
three-bucket Dial queue gives exact shortest paths.
"""
from collections import deque

import numpy as np


def sssp(indptr, indices, weights, source, cap=-1):
    n = len(indptr) - 1
    dist = np.full(n, -1, dtype=np.int64)
    dist[source] = 0
    buckets = [deque([source]), deque(), deque()]
    cur = 0
    pending = 1
    ip = indptr.tolist()
    ix = indices.tolist()
    wt = weights.tolist()
    d = dist.tolist()
    while pending:
        bucket = buckets[cur % 3]
        while bucket:
            u = bucket.popleft()
            pending -= 1
            if d[u] != cur:
                continue
            for e in range(ip[u], ip[u + 1]):
                v = ix[e]
                nd = cur + wt[e]
                if cap >= 0 and nd > cap:
                    continue
                if d[v] < 0 or nd < d[v]:
                    d[v] = nd
                    buckets[nd % 3].append(v)
                    pending += 1
        cur += 1
    return np.asarray(d, dtype=np.int64)


def distance_rows(indptr, indices, weights, sources, cap=-1):
    n = len(indptr) - 1
    out = np.empty((len(sources), n), dtype=np.int64)
    for row, s in enumerate(sources):
        out[row] = sssp(indptr, indices, weights, int(s), cap)
    return out


def _defects(d01, d23, d02, d13, d03, d12):
    s = np.stack([d01 + d23, d02 + d13, d03 + d12])
    s.sort(axis=0)
    return s[2] - s[1]


def four_point_max(D, quads):
    """Largest (top pair-sum minus median pair-sum) over the given quadruples."""
    if len(quads) == 0:
        return 0, -1
    w, x, y, z = (quads[:, i] for i in range(4))
    defect = _defects(D[w, x], D[y, z], D[w, y], D[x, z], D[w, z], D[x, y])
    k = int(np.argmax(defect))
    return int(defect[k]), k


def four_point_exhaustive(D):
    """Largest defect over all 4-subsets of the index set of ``D``.

    Returns ``(defect, (i, j, k, l))``; the witness is ``None`` below four points.
    """
    n = D.shape[0]
    best, arg = 0, None
    if n < 4:
        return best, arg
    for i in range(n - 3):
        for j in range(i + 1, n - 2):
            ks, ls = np.triu_indices(n - j - 1, k=1)
            ks = ks + j + 1
            ls = ls + j + 1
            if len(ks) == 0:
                continue
            defect = _defects(D[i, j], D[ks, ls], D[i, ks], D[j, ls], D[i, ls], D[j, ks])
            m = int(np.argmax(defect))
            if arg is None or defect[m] > best:
                best, arg = int(defect[m]), (i, j, int(ks[m]), int(ls[m]))
    return best, arg
