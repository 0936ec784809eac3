"""Compare the compiled and pure-Python kernel backends.

    python benchmarks/bench_kernels.py [--repeat 3]
"""
import argparse
import time

import numpy as np

from spectough import _pykernels
from spectough.canon import random_connected_graph
from spectough.families import extremal_tau_integer
from spectough.graph import Graph
from spectough.spectral import a_alpha

try:
    from spectough import _ckernels
except ImportError:
    _ckernels = None


def scan_inputs(g: Graph):
    offsets = np.arange(g.n + 1, dtype=np.int64) * 2
    prefix = []
    for v in range(g.n):
        prefix += [0, 1 << v]
    return g.adj_array(), g.n, offsets, np.array(prefix, dtype=np.uint64)


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t)
    return min(times), out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args()
    rng = np.random.default_rng(args.seed)

    cases = [
        ("scan_cuts n=14 (no twin reduction)", "scan_cuts", scan_inputs(random_connected_graph(14, rng, p=0.4))),
        ("scan_cuts n=18 (no twin reduction)", "scan_cuts", scan_inputs(random_connected_graph(18, rng, p=0.4))),
        ("jacobi_eigh n=30", "jacobi_eigh", (a_alpha(random_connected_graph(30, rng), 0.5),)),
        ("jacobi_eigh n=64", "jacobi_eigh", (a_alpha(extremal_tau_integer(64, 2).graph, 0.5),)),
    ]
    print(f"{'kernel':<38}{'python (s)':>12}{'cython (s)':>12}{'speedup':>10}")
    for label, name, inputs in cases:
        tp, out_p = best_of(lambda: getattr(_pykernels, name)(*inputs), args.repeat)
        if _ckernels is None:
            print(f"{label:<38}{tp:>12.4f}{'n/a':>12}{'':>10}")
            continue
        tc, out_c = best_of(lambda: getattr(_ckernels, name)(*inputs), args.repeat)
        if name == "scan_cuts":
            assert tuple(out_p) == tuple(out_c)
        else:
            assert np.allclose(np.sort(out_p[0]), np.sort(out_c[0]), atol=1e-9)
        print(f"{label:<38}{tp:>12.4f}{tc:>12.4f}{tp / tc:>9.1f}x")


if __name__ == "__main__":
    main()
