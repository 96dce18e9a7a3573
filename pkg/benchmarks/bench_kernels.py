"""Time the hot kernels under the compiled and pure-Python backends.

Run with ``python3 benchmarks/bench_kernels.py``.
"""
import timeit

import numpy as np

from bgtransform import kernels
from bgtransform.specfun import Sigma


def cases():
    rng = np.random.default_rng(0)
    x = np.tan(np.pi * (rng.uniform(size=400) - 0.5)) / 2
    z = 3 * (rng.normal(size=200) + 1j * rng.normal(size=200))
    s = Sigma(3)
    return {
        "hardy_table n=16, 400 x": lambda: kernels.hardy_table(s, 16, x),
        "kummer_grid 200 z x 400 x": lambda: kernels.kummer_grid(s, z, x),
    }


def best_of(fn, repeat=5):
    number = max(1, int(0.2 / max(timeit.timeit(fn, number=1), 1e-6)))
    return min(timeit.repeat(fn, number=number, repeat=repeat)) / number


def main():
    backends = ["python"] + (["cython"] if kernels._compiled is not None else [])
    previous = kernels.BACKEND
    results = {}
    try:
        for name in backends:
            kernels.use_backend(name)
            for label, fn in cases().items():
                results[label, name] = best_of(fn)
    finally:
        kernels.use_backend(previous)
    print(f"{'case':30s}" + "".join(f"{b:>12s}" for b in backends) + ("     speedup" if len(backends) > 1 else ""))
    for label in cases():
        row = f"{label:30s}" + "".join(f"{results[label, b] * 1e3:10.3f}ms" for b in backends)
        if len(backends) > 1:
            row += f"{results[label, 'python'] / results[label, 'cython']:11.1f}x"
        print(row)


if __name__ == "__main__":
    main()
