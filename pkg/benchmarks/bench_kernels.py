"""Compare the compiled kernels against the numpy fallback.

    python benchmarks/bench_kernels.py [--repeat N]
"""

from __future__ import annotations

import argparse
import math
import timeit

import numpy as np

from nscloning import _pykernels

try:
    from nscloning import _ckernels
except ImportError:
    _ckernels = None


def _best(fn, repeat: int, number: int) -> float:
    return min(timeit.repeat(fn, repeat=repeat, number=number)) / number


def bench_wigner(repeat: int):
    rows = []
    for two_j in (2, 6, 10, 20, 40):
        thetas = np.linspace(0.1, math.pi - 0.1, 16)
        number = max(1, 2000 // (two_j + 1))
        py = _best(lambda: [_pykernels.wigner_d_matrix(two_j, t) for t in thetas], repeat, number)
        cy = None
        if _ckernels is not None:
            cy = _best(lambda: [_ckernels.wigner_d_matrix(two_j, t) for t in thetas], repeat, number)
        rows.append((f"wigner_d_matrix 2j={two_j} (x16)", py, cy))
    return rows


def bench_symmetrizer(repeat: int):
    rows = []
    up = np.array([0.6, 0.8j])
    down = np.array([-0.8j, 0.6])
    for n_qubits in (4, 8, 10, 12):
        k = n_qubits // 2
        py = _best(lambda: _pykernels.symmetrized_product(up, down, n_qubits, k), repeat, 1)
        cy = None
        if _ckernels is not None:
            cy = _best(lambda: _ckernels.symmetrized_product(up, down, n_qubits, k), repeat, 1)
        rows.append((f"symmetrized_product M={n_qubits} k={k}", py, cy))
    return rows


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()
    rows = bench_wigner(args.repeat) + bench_symmetrizer(args.repeat)
    print(f"{'kernel':42s} {'python [ms]':>12s} {'cython [ms]':>12s} {'speedup':>8s}")
    for name, py, cy in rows:
        if cy is None:
            print(f"{name:42s} {py * 1e3:12.3f} {'n/a':>12s} {'':>8s}")
        else:
            print(f"{name:42s} {py * 1e3:12.3f} {cy * 1e3:12.3f} {py / cy:8.1f}x")


if __name__ == "__main__":
    main()
