"""Time the compiled kernels against the NumPy fallback.

    python benchmarks/bench_kernels.py [--repeat N]
"""
import argparse
import timeit

import numpy as np

from hermprod import _pykernels
from hermprod.asymptotics import log_factorial_table

try:
    from hermprod import _ckernels
except ImportError:
    _ckernels = None


def cases():
    xs = np.linspace(-40.0, 40.0, 400)
    lf = log_factorial_table(1200)
    return {
        "hermite_fn_paper(2000, 3.7)": lambda m: m.hermite_fn_paper(2000, 3.7),
        "hermite_fn_table(300, 400 pts)": lambda m: m.hermite_fn_table(300, xs),
        "hermite_fn_pair(1000, 400 pts)": lambda m: m.hermite_fn_pair(1000, xs),
        "w2_log_abs_grid(600)": lambda m: m.w2_log_abs_grid(lf, 600),
    }


def best(fn, repeat):
    number = 1
    while timeit.timeit(fn, number=number) < 0.05:
        number *= 2
    return min(timeit.repeat(fn, number=number, repeat=repeat)) / number


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()
    if _ckernels is None:
        print("compiled kernels not built; only the fallback is timed")
    print(f"{'kernel':34s} {'python':>12s} {'cython':>12s} {'speedup':>8s}")
    for name, call in cases().items():
        tp = best(lambda: call(_pykernels), args.repeat)
        if _ckernels is None:
            print(f"{name:34s} {tp * 1e3:10.3f}ms {'-':>12s} {'-':>8s}")
            continue
        tc = best(lambda: call(_ckernels), args.repeat)
        print(f"{name:34s} {tp * 1e3:10.3f}ms {tc * 1e3:10.3f}ms {tp / tc:7.1f}x")


if __name__ == "__main__":
    main()
