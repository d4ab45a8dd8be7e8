"""Compare the compiled spline kernels against the NumPy fallback.

Run:  python3 benchmarks/bench_kernels.py

Both backends evaluate the same piecewise-polynomial tables, so this
measures pure dispatch / loop overhead; results print as a small table
with the speedup of the compiled path (when it is available).
"""
import timeit

import numpy as np

from mellinlab import _kernels
from mellinlab import _fabius_fallback as fallback
from mellinlab.special_functions import _spline

SIZES = (64, 1024, 16384, 262144)
REPEAT = 5


def _best(fn, number):
    return min(timeit.repeat(fn, number=number, repeat=REPEAT)) / number


def main():
    sp = _spline()
    pieces, knots = sp.pieces, sp.knot_values
    rng = np.random.default_rng(0)

    backends = [("numpy", fallback)]
    if _kernels.BACKEND == "compiled":
        from mellinlab import _fabius_core as core
        backends.append(("compiled", core))
    else:
        print("compiled backend unavailable; timing the fallback only")

    print(f"active backend: {_kernels.BACKEND}")
    print(f"{'kernel':<10} {'n':>8} " +
          " ".join(f"{name + ' (us)':>14}" for name, _ in backends) +
          ("  speedup" if len(backends) == 2 else ""))

    for kernel in ("theta_eval", "fext_eval"):
        hi = 1.0 if kernel == "theta_eval" else 64.0
        for n in SIZES:
            x = np.ascontiguousarray(rng.uniform(0.0, hi, size=n))
            number = max(1, 262144 // n)
            times = []
            for _, mod in backends:
                fn = getattr(mod, kernel)
                out = np.asarray(fn(x, pieces, knots))
                assert out.shape == x.shape
                times.append(_best(lambda: fn(x, pieces, knots), number))
            row = f"{kernel:<10} {n:>8} " + \
                  " ".join(f"{t * 1e6:>14.2f}" for t in times)
            if len(times) == 2:
                row += f"  {times[0] / times[1]:>7.1f}x"
            print(row)

    if len(backends) == 2:
        x = np.ascontiguousarray(rng.uniform(0.0, 1.0, size=8192))
        a = np.asarray(backends[1][1].theta_eval(x, pieces, knots))
        b = backends[0][1].theta_eval(x, pieces, knots)
        print(f"max |compiled - numpy| on 8192 points: "
              f"{float(np.max(np.abs(a - b))):.1e}")


if __name__ == "__main__":
    main()
