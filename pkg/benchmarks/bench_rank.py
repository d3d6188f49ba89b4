"""Benchmark the two elimination cores on identical matrices.

Usage: python3 benchmarks/bench_rank.py [--sizes 400x800,1650x3600]
       [--prime 32003] [--seed 0] [--repeat 3]

The compiled core runs lazy-reduction int64 Gaussian elimination; the
fallback blocks the sweep into 128-column panels so the heavy updates go
through float64 matrix products.  Both produce identical reduced forms, so
the interesting number is wall time."""

import argparse
import time

import numpy as np

from steinerlab import _gfcore_py

try:
    from steinerlab import _gfcore
except ImportError:
    _gfcore = None


def parse_sizes(text):
    out = []
    for part in text.split(","):
        n, m = part.lower().split("x")
        out.append((int(n), int(m)))
    return out


def bench(core, M, p, repeat):
    best = float("inf")
    rank = None
    for _ in range(repeat):
        work = np.array(M, dtype=np.int64, order="C")
        t0 = time.perf_counter()
        rank, _ = core.rref(work, p, True)
        best = min(best, time.perf_counter() - t0)
    return rank, best


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", default="200x400,800x1600,1650x3600",
                    type=parse_sizes)
    ap.add_argument("--prime", type=int, default=32003)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    rng = np.random.default_rng(args.seed)
    cores = [("python", _gfcore_py)]
    if _gfcore is not None:
        cores.insert(0, ("c", _gfcore))
    print(f"prime={args.prime} seed={args.seed} repeat={args.repeat}")
    print(f"{'shape':>12}  {'backend':>8}  {'rank':>6}  {'best (s)':>9}")
    for n, m in args.sizes:
        M = rng.integers(0, args.prime, size=(n, m), dtype=np.int64)
        ranks = set()
        for name, core in cores:
            rank, best = bench(core, M, args.prime, args.repeat)
            ranks.add(rank)
            print(f"{n:>6}x{m:<5}  {name:>8}  {rank:>6}  {best:>9.3f}")
        if len(ranks) > 1:
            raise SystemExit(f"backends disagree on rank: {ranks}")


if __name__ == "__main__":
    main()
