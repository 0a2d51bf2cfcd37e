"""Compiled vs pure-Python kernels.

Times the modular Pfaffian kernel on random skew matrices, then the whole
K3,3-free pipeline on one benchmark instance, once per available backend.

    python benchmarks/bench_kernels.py [--sizes 16,32,64,128] [--pipeline-n 4096]
"""

import argparse
import random
import time

from perfmatch import kernels
from perfmatch.decomposition import decompose_k33free
from perfmatch.engine import evaluate_decomposition
from perfmatch.oracle import gen_cliquesum_sized
from perfmatch.pfaffian import _prime

P = _prime(0)


def skew(n, rng):
    flat = [0] * (n * n)
    for i in range(n):
        for j in range(i + 1, n):
            x = rng.randrange(P)
            flat[i * n + j] = x
            flat[j * n + i] = (P - x) % P
    return flat


def best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t)
    return best, out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--sizes", default="16,32,64,128")
    ap.add_argument("--pipeline-n", type=int, default=4096)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    backends = kernels.available_backends()
    print("backends:", ", ".join(backends))
    if "compiled" not in backends:
        print("compiled extension not built; only the Python kernel is timed")

    rng = random.Random(0)
    print(f"\n{'matrix n':>9} " + " ".join(f"{b + '_s':>12}" for b in backends) + f" {'speedup':>8}")
    for n in (int(x) for x in args.sizes.split(",")):
        flat = skew(n, rng)
        times, vals = [], set()
        for b in backends:
            kernels.use_backend(b)
            t, v = best_of(lambda: kernels.pfaffian_mod(n, flat, P), args.repeat)
            times.append(t)
            vals.add(v)
        assert len(vals) == 1, "backends disagree"
        by = dict(zip(backends, times))
        speed = by["python"] / by.get("compiled", by["python"])
        print(f"{n:>9} " + " ".join(f"{t:>12.5f}" for t in times) + f" {speed:>8.1f}x")

    G = gen_cliquesum_sized(args.pipeline_n, seed=0)
    T = decompose_k33free(G)
    print(f"\npipeline on n = {G.n} ({len(T)} nodes)")
    results = set()
    for b in backends:
        kernels.use_backend(b)
        t, v = best_of(lambda: evaluate_decomposition(T), 1)
        results.add(v)
        print(f"  {b:>9}: {t:.3f} s")
    assert len(results) == 1, "backends disagree"
    kernels.use_backend("auto")


if __name__ == "__main__":
    main()
