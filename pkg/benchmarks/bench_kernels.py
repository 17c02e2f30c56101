"""Compare the compiled and NumPy kernel backends.

    python benchmarks/bench_kernels.py [--sizes 1000 10000] [--max-lag 50] [--repeat 5]
"""
import argparse
import timeit

import numpy as np

from cpnonlocal import kernels


def bench(fn, repeat):
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sizes", type=int, nargs="+", default=[1000, 10000])
    parser.add_argument("--max-lag", type=int, default=50)
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args(argv)

    backends = kernels.available_backends()
    if "compiled" not in backends:
        print("compiled kernels not built; only the NumPy backend is timed")
    previous = kernels.backend()
    print(f"{'kernel':<24}{'n':>8}" + "".join(f"{b:>14}" for b in backends) + ("   speedup" if len(backends) > 1 else ""))
    try:
        for n in args.sizes:
            x, y = np.random.default_rng(n).normal(size=(2, n))
            cases = {
                f"lagged (+/-{args.max_lag})": lambda: kernels.lagged_products(x, y, args.max_lag),
                "autocorrelation (full)": lambda: kernels.autocorrelation(x),
            }
            for name, fn in cases.items():
                times = []
                for b in backends:
                    kernels.use_backend(b)
                    times.append(bench(fn, args.repeat))
                row = f"{name:<24}{n:>8}" + "".join(f"{t * 1e3:>12.3f}ms" for t in times)
                if len(times) > 1:
                    row += f"{times[0] / times[1]:>9.1f}x"
                print(row)
    finally:
        kernels.use_backend(previous)


if __name__ == "__main__":
    main()
