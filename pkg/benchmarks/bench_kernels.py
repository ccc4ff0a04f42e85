"""Compare the compiled and numpy elimination kernels on random matrices mod p.

Usage: python3 benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import time

import numpy as np

from waringcert import _kernels_py
from waringcert.fields import DEFAULT_PRIME

try:
    from waringcert import _kernels as _compiled
except ImportError:
    _compiled = None

# shapes met in practice: Veronese 12x70, Terracini 60x70, the r=13 Terracini
# 65x70, inverse-system pieces of the (2,2,3,3) link around 330 columns
SHAPES = [(12, 70), (60, 70), (70, 126), (210, 330), (330, 495)]


def time_kernel(impl, m, p, repeat):
    best = float("inf")
    pivots = None
    for _ in range(repeat):
        a = m.copy()
        t = time.perf_counter()
        pivots = impl.rref_inplace(a, p)
        best = min(best, time.perf_counter() - t)
    return best, list(pivots), a


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)
    rng = np.random.default_rng(args.seed)
    p = DEFAULT_PRIME
    print("%-12s %12s %12s %9s" % ("shape", "python [ms]", "cython [ms]", "speedup"))
    for shape in SHAPES:
        m = np.ascontiguousarray(rng.integers(0, p, size=shape, dtype=np.int64))
        tp, piv_p, red_p = time_kernel(_kernels_py, m, p, args.repeat)
        if _compiled is None:
            print("%-12s %12.2f %12s %9s" % ("%dx%d" % shape, 1e3 * tp, "n/a", "n/a"))
            continue
        tc, piv_c, red_c = time_kernel(_compiled, m, p, args.repeat)
        if piv_p != piv_c or not np.array_equal(red_p, red_c):
            raise SystemExit("backends disagree on %dx%d" % shape)
        print("%-12s %12.2f %12.2f %8.1fx" % ("%dx%d" % shape, 1e3 * tp, 1e3 * tc, tp / tc))


if __name__ == "__main__":
    main()
