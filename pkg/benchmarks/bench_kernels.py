"""Compare the compiled kernels with the numpy fallback.

    python benchmarks/bench_kernels.py [--repeat 5]

Both backends run on the same CSR arrays and distance matrices; results are
checked for equality before any timing is reported.
"""
import argparse
import time

import numpy as np

from curvequot.farey import Slope, farey_ball
from curvequot.graphcore import _pykernels

try:
    from curvequot.graphcore import _ckernels
except ImportError:
    _ckernels = None


def best_of(repeat, fn, *args):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, out


def cases():
    g = farey_ball(Slope(0, 1), 4, max_height=60)
    csr = (g._indptr, g._indices, g._weights)
    D = g.distance_matrix()
    rng = np.random.default_rng(0)
    quads = np.ascontiguousarray(rng.integers(0, len(g), size=(200_000, 4)).astype(np.int64))
    small = np.ascontiguousarray(D[:48, :48])
    return [
        (f"sssp  n={len(g)}", "sssp", (*csr, 0, -1)),
        ("distance_rows  64 sources", "distance_rows", (*csr, list(range(64)), -1)),
        ("four_point_max  200k quads", "four_point_max", (D, quads)),
        ("four_point_exhaustive  n=48", "four_point_exhaustive", (small,)),
    ]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if _ckernels is None:
        print("compiled kernels not built; only the fallback is available")
    print(f"{'kernel':32s} {'python (s)':>11s} {'cython (s)':>11s} {'speedup':>8s}")
    for label, name, call in cases():
        tp, rp = best_of(args.repeat, getattr(_pykernels, name), *call)
        if _ckernels is None:
            print(f"{label:32s} {tp:11.4f} {'-':>11s} {'-':>8s}")
            continue
        tc, rc = best_of(args.repeat, getattr(_ckernels, name), *call)
        same = np.array_equal(rp, rc) if isinstance(rp, np.ndarray) else rp[0] == rc[0]
        if not same:
            raise SystemExit(f"{name}: backends disagree")
        print(f"{label:32s} {tp:11.4f} {tc:11.4f} {tp / tc:7.1f}x")


if __name__ == "__main__":
    main()
