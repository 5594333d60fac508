"""Compare the numba kernels against the pure-numpy fallback.

Times the three hot paths on matrix groups of increasing size and checks
that both backends produce identical output.  Run from the repo root:

    python3 benchmarks/bench_backends.py
    python3 benchmarks/bench_backends.py --qs 5 9 13 --repeat 5

The backend is switched through the same NONCOMM_BACKEND mechanism the
library uses, so what is measured here is exactly what users get.
"""

import argparse
import os
import time

import numpy as np

from noncomm import kernels
from noncomm.matgroups import _enumerate, _field_data, sl2
from noncomm.ncgraph import build_graph


def _inputs(q, det_one):
    f, add_t, mul_t, neg_t, inv_t = _field_data(q)
    entries = _enumerate(q, det_one, add_t, mul_t, neg_t)
    a, b, c, d = (entries[:, k] for k in range(4))
    lin = ((a.astype(np.int64) * q + b) * q + c) * q + d
    pos = np.full(q**4, -1, dtype=np.int32)
    pos[lin] = np.arange(len(entries), dtype=np.int32)
    return entries, pos, add_t, mul_t


def _time(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def _row(name, n, repeat, fn):
    results = {}
    times = {}
    for backend in ("numpy", "numba"):
        os.environ[kernels.BACKEND_ENV] = backend
        if backend == "numba":
            try:
                fn()  # JIT warmup, excluded from timing
            except ImportError:
                print(f"{name:<28} n={n:<6} numba unavailable, skipped")
                return
        times[backend], results[backend] = _time(fn, repeat)
    a, b = results["numpy"], results["numba"]
    if isinstance(a, np.ndarray):
        assert np.array_equal(a, b), name
    else:
        assert a == b, name
    speedup = times["numpy"] / times["numba"]
    print(
        f"{name:<28} n={n:<6} numpy {times['numpy']*1e3:9.1f} ms"
        f"   numba {times['numba']*1e3:9.1f} ms   x{speedup:.1f}"
    )


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--qs", type=int, nargs="+", default=[5, 7, 9, 13])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    saved = os.environ.get(kernels.BACKEND_ENV)
    try:
        for q in args.qs:
            entries, pos, add_t, mul_t = _inputs(q, det_one=True)
            n = len(entries)
            _row(
                f"cayley_table  SL(2,{q})",
                n,
                args.repeat,
                lambda: kernels.cayley_table_mat2(entries, pos, add_t, mul_t),
            )
            _row(
                f"commute_matrix SL(2,{q})",
                n,
                args.repeat,
                lambda: kernels.commute_matrix_mat2(entries, add_t, mul_t),
            )
        for q in (4, 5):
            adj = build_graph(sl2(q)).adjacency
            _row(
                f"max_clique    A(SL(2,{q}))",
                adj.shape[0],
                args.repeat,
                lambda: kernels.max_clique(adj),
            )
    finally:
        if saved is None:
            os.environ.pop(kernels.BACKEND_ENV, None)
        else:
            os.environ[kernels.BACKEND_ENV] = saved


if __name__ == "__main__":
    main()
