import os
import subprocess
import sys

import numpy as np
import pytest

from curvequot.graphcore import _pykernels as py
from curvequot.graphcore import kernels

try:
    from curvequot.graphcore import _ckernels as cy
except ImportError:  # compiled kernels not built
    cy = None

needs_cython = pytest.mark.skipif(cy is None, reason="compiled kernels not built")


def csr(rng, n, m):
    adj = [[] for _ in range(n)]
    for (u, v), w in zip(rng.integers(0, n, size=(m, 2)), rng.choice([1, 2], size=m)):
        if u != v:
            adj[u].append((int(v), int(w)))
            adj[v].append((int(u), int(w)))
    indptr = np.zeros(n + 1, np.int64)
    indptr[1:] = np.cumsum([len(a) for a in adj])
    idx = np.array([v for a in adj for v, _ in a], np.int64)
    wt = np.array([w for a in adj for _, w in a], np.int8)
    return indptr, idx, wt


@needs_cython
def test_backends_agree_on_shortest_paths():
    rng = np.random.default_rng(0)
    for _ in range(40):
        n = int(rng.integers(1, 60))
        g = csr(rng, n, int(rng.integers(0, 3 * n + 1)))
        for s in range(n):
            for cap in (-1, 0, 3, 7):
                assert np.array_equal(np.asarray(py.sssp(*g, s, cap)), np.asarray(cy.sssp(*g, s, cap)))
        rows = np.arange(n, dtype=np.int64)
        assert np.array_equal(np.asarray(py.distance_rows(*g, rows)), np.asarray(cy.distance_rows(*g, rows)))


@needs_cython
def test_backends_agree_on_four_point():
    rng = np.random.default_rng(1)
    for _ in range(20):
        n = int(rng.integers(4, 30))
        pts = rng.integers(0, 20, size=(n, 2))
        D = np.abs(pts[:, None, :] - pts[None, :, :]).sum(axis=2).astype(np.int64)
        assert py.four_point_exhaustive(D)[0] == cy.four_point_exhaustive(D)[0]
        quads = rng.integers(0, n, size=(200, 4)).astype(np.int64)
        assert py.four_point_max(D, quads)[0] == cy.four_point_max(D, quads)[0]


def test_unreached_marked():
    indptr, idx, wt = np.array([0, 1, 2, 2], np.int64), np.array([1, 0], np.int64), np.array([2, 2], np.int8)
    assert list(kernels.sssp(indptr, idx, wt, 0, -1)) == [0, 2, -1]


def test_pure_python_selected_by_environment():
    env = dict(os.environ, CURVEQUOT_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", "import curvequot.graphcore as g; print(g.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"
