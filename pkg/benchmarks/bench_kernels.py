"""Benchmark the curvature kernel: compiled extension vs numpy twin.

Both backends implement the same curvature_from_jets contract, so this
script times them on identical batches of random metric jets and checks
that their outputs agree to floating-point roundoff.  Run from a checkout
with the package installed:

    python3 benchmarks/bench_kernels.py --n 2000
"""
import argparse
import time

import numpy as np

from orbikit.geomkit.kernels import compiled_backend, numpy_backend


def random_jets(rng):
    a = rng.normal(size=(4, 4))
    g = a @ a.T + 4.0 * np.eye(4)
    dg = rng.normal(size=(4, 4, 4), scale=0.1)
    dg = 0.5 * (dg + dg.transpose(0, 2, 1))
    ddg = rng.normal(size=(4, 4, 4, 4), scale=0.1)
    ddg = 0.5 * (ddg + ddg.transpose(0, 1, 3, 2))
    ddg = 0.5 * (ddg + ddg.transpose(1, 0, 2, 3))
    return g, dg, ddg


def time_backend(backend, jets, repeats):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        for g, dg, ddg in jets:
            backend.curvature_from_jets(g, dg, ddg)
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=2000, help="jets per timing pass")
    ap.add_argument("--repeats", type=int, default=5, help="passes; best is kept")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    rng = np.random.default_rng(args.seed)
    jets = [random_jets(rng) for _ in range(args.n)]

    if compiled_backend is None:
        print("compiled backend not built; only timing the numpy twin")
    else:
        worst = 0.0
        for g, dg, ddg in jets[: min(50, args.n)]:
            ref = numpy_backend.curvature_from_jets(g, dg, ddg)
            got = compiled_backend.curvature_from_jets(g, dg, ddg)
            for a, b in zip(ref, got):
                worst = max(worst, float(np.abs(np.asarray(a) - np.asarray(b)).max()))
        print(f"backend agreement: max |difference| = {worst:.3e}")

    t_numpy = time_backend(numpy_backend, jets, args.repeats)
    print(f"numpy     {args.n} jets in {t_numpy * 1e3:8.2f} ms "
          f"({t_numpy / args.n * 1e6:7.2f} us/jet)")
    if compiled_backend is not None:
        t_comp = time_backend(compiled_backend, jets, args.repeats)
        print(f"compiled  {args.n} jets in {t_comp * 1e3:8.2f} ms "
              f"({t_comp / args.n * 1e6:7.2f} us/jet)")
        print(f"speedup   {t_numpy / t_comp:.2f}x")


if __name__ == "__main__":
    main()
