"""Compiled against pure-Python convolution kernels on exact rational series.

Run: python3 benchmarks/bench_kernels.py [--sizes 50,100,200] [--repeat 5]
Both kernels must give identical coefficients; timings are best-of-repeat.
"""

import argparse
import random
import sys
import time

from gmpy2 import mpq

from isingfw.series_core import COMPILED_KERNEL, KERNEL, PY_KERNEL, convolve


def operands(n, rng):
    def q():
        return mpq(rng.randint(-10**6, 10**6), rng.randint(1, 2**20))
    return [q() for _ in range(n)], [q() for _ in range(n)]


def best(fn, repeat):
    out, t = None, float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        t = min(t, time.perf_counter() - t0)
    return out, t


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", default="50,100,200,400")
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=7)
    args = ap.parse_args(argv)
    rng = random.Random(args.seed)
    print(f"active kernel: {KERNEL}")
    if COMPILED_KERNEL is None:
        print("compiled kernel not built; only the pure-Python timings are shown")
    print(f"{'n':>6} {'python (s)':>12} {'compiled (s)':>13} {'speedup':>8}")
    for n in (int(s) for s in args.sizes.split(",")):
        a, b = operands(n, rng)
        py, tp = best(lambda: convolve(a, b, n, kernel=PY_KERNEL), args.repeat)
        if COMPILED_KERNEL is None:
            print(f"{n:>6} {tp:>12.4f} {'-':>13} {'-':>8}")
            continue
        cc, tc = best(lambda: convolve(a, b, n, kernel=COMPILED_KERNEL), args.repeat)
        if cc != py:
            print(f"kernels disagree at n={n}", file=sys.stderr)
            return 1
        print(f"{n:>6} {tp:>12.4f} {tc:>13.4f} {tp / tc:>7.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
