"""Compiled vs pure-Python kernels, plus one end-to-end generation per backend.

    python3 benchmarks/bench_kernels.py [--nodes 200000] [--edges 600000]
"""

import argparse
import os
import subprocess
import sys
import time

import numpy as np

from hingen import _kernels_py, kernels

try:
    from hingen._ext import _kernels as _compiled
except ImportError:
    _compiled = None

END_TO_END = """
import time
from hingen import kernels
from hingen.presets import reference_graph
from hingen.reference import estimate_params, profile
from hingen.pipeline import generate
prof = profile(reference_graph("imdb", seed=1))
t0 = time.perf_counter()
generate(estimate_params(prof), prof)
print(kernels.BACKEND, time.perf_counter() - t0)
"""


def best_of(fn, repeat=3):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--nodes", type=int, default=200_000)
    ap.add_argument("--edges", type=int, default=600_000)
    args = ap.parse_args()
    rng = np.random.default_rng(0)
    n, m = args.nodes, args.edges
    a, b = rng.integers(0, n, m), rng.integers(0, n, m)
    keep = a != b
    ua, ub = kernels.unique_pairs(a[keep], b[keep])
    types = rng.integers(0, 4, n)
    et = rng.integers(0, 3, m)
    remap = np.arange(n)
    drops = rng.choice(n, n // 4, replace=False)
    remap[drops] = rng.integers(0, n, drops.size)
    remap = remap[remap]

    cases = {
        "typed_degrees": lambda impl: kernels.typed_degrees(ua, ub, types, 4, impl=impl),
        "connected_components": lambda impl: kernels.connected_components(n, ua, ub, impl=impl),
        "contract_edges": lambda impl: kernels.contract_edges(a, b, et, remap, impl=impl),
    }
    print(f"{n} nodes, {m} edges")
    print(f"{'kernel':22s} {'python':>9s} {'cython':>9s} {'speedup':>8s}")
    for name, fn in cases.items():
        tp = best_of(lambda: fn(_kernels_py))
        if _compiled is None:
            print(f"{name:22s} {tp:9.3f} {'n/a':>9s}")
            continue
        tc = best_of(lambda: fn(_compiled))
        print(f"{name:22s} {tp:9.3f} {tc:9.3f} {tp / tc:7.1f}x")

    print("\nend to end, N=2139 motifs:")
    for flag in ("0", "1"):
        env = dict(os.environ, HINGEN_PURE_PYTHON=flag)
        out = subprocess.run([sys.executable, "-c", END_TO_END], env=env, capture_output=True, text=True, check=True)
        backend, secs = out.stdout.split()
        print(f"  {backend:8s} {float(secs):6.2f}s")


if __name__ == "__main__":
    main()
