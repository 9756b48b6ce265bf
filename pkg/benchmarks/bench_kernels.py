"""Compiled vs pure-Python kernels.

    python3 benchmarks/bench_kernels.py [--repeat N]

Prints the best-of-N wall time per kernel and backend, plus the speedup.
"""

import argparse
import timeit

import numpy as np

from ptacc import kernels


def cases():
    z = np.linspace(0.0, 40.0, 2049)
    n = 4000
    h = 2.0 / n
    y = -1.0 + h * np.arange(1, n)
    d = 2.0 / h**2 + (5.0 * y) ** 2
    e = np.full(n - 2, -1.0 / h**2)
    grid = np.linspace(-1.0, 1.0, 2001)[1:-1]
    psi = np.cos(np.pi * grid / 2).astype(np.complex128)
    coeffs = np.ascontiguousarray(np.tile([-0.5, 0.4, 0.1], (1000, 1)))
    return {
        "kummer_array (2049 z, a=-7.3)": lambda m: m.kummer_array(-7.3, 0.5, z, 1e-12, 500, 0.0),
        "kummer_array (3 z, shooting)": lambda m: m.kummer_array(-0.3, 0.5, z[:3], 1e-12, 500, 0.0),
        "tridiag bisection (3999, 11 eigs)": lambda m: m.tridiag_eigvals_bisect(d, e, 0, 10, 0.0, 4.0 / h**2 + 25.0, 1e-15),
        "cn_evolve (1999 pts, 1000 steps)": lambda m: m.cn_evolve(psi, grid, grid[1] - grid[0], coeffs, 1e-3),
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    backends = kernels.backends()
    names = [b for b in ("cython", "python") if b in backends]
    print(f"{'kernel':<36}" + "".join(f"{b:>12}" for b in names) + ("     speedup" if len(names) == 2 else ""))
    for label, fn in cases().items():
        times = []
        for b in names:
            mod = backends[b]
            times.append(min(timeit.repeat(lambda: fn(mod), number=1, repeat=args.repeat)))
        row = f"{label:<36}" + "".join(f"{t * 1e3:>10.2f}ms" for t in times)
        if len(times) == 2:
            row += f"{times[1] / times[0]:>11.1f}x"
        print(row)


if __name__ == "__main__":
    main()
