"""Compare the compiled kernels against the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--n 100000] [--repeat 5]

Prints the best-of-``repeat`` wall time per kernel for each backend, the
speedup, and whether both backends produced identical bits.
"""
import argparse
import sys
import timeit

import numpy as np

from mnconvex import _kernels_py
from mnconvex.means import CODE_I, CODE_J, CODE_L

try:
    from mnconvex import _kernels
except ImportError:
    _kernels = None


def _cases(n):
    rng = np.random.default_rng(0)
    x = np.exp(rng.uniform(-5, 5, n))
    y = np.exp(rng.uniform(-5, 5, n))
    v = np.cumsum(rng.uniform(0, 1, n))
    return {
        "batch_mean L": lambda k, out: k.batch_mean(CODE_L, 0.0, x, y, out),
        "batch_mean I": lambda k, out: k.batch_mean(CODE_I, 0.0, x, y, out),
        "batch_mean J:2.5": lambda k, out: k.batch_mean(CODE_J, 2.5, x, y, out),
        "uniforms": lambda k, out: k.uniforms(42, 0, out),
        "monotone_scan": lambda k, out: out.__setitem__(0, k.monotone_scan(v, 1e-9)[0]),
    }


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=100_000)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    if _kernels is None:
        print("compiled kernels are not built; only the fallback is available", file=sys.stderr)
        return 1
    print(f"{'kernel':<18} {'compiled [ms]':>14} {'python [ms]':>12} {'speedup':>8}  identical")
    for name, call in _cases(args.n).items():
        times = {}
        outs = {}
        for label, mod in (("c", _kernels), ("py", _kernels_py)):
            out = np.zeros(args.n)
            call(mod, out)
            outs[label] = out.copy()
            times[label] = min(timeit.repeat(lambda: call(mod, out), number=1, repeat=args.repeat))
        same = np.array_equal(outs["c"], outs["py"], equal_nan=True)
        print(
            f"{name:<18} {1e3 * times['c']:>14.3f} {1e3 * times['py']:>12.3f}"
            f" {times['py'] / times['c']:>7.1f}x  {'yes' if same else 'NO'}"
        )
    return 0


if __name__ == "__main__":
    sys.exit(main())
