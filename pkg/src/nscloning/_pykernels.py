"""Pure-Python (numpy) implementations of the hot kernels.

Used when the compiled ``_ckernels`` extension is unavailable, and as the
reference the compiled path is checked against.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations
from math import comb

import numpy as np


@lru_cache(maxsize=64)
def _wigner_tables(two_j: int):
    n = two_j + 1
    logfact = np.concatenate([
        np.zeros(1, dtype=np.longdouble),
        np.cumsum(np.log(np.arange(1, n, dtype=np.longdouble))),
    ])
    a = np.arange(n)[:, None, None]  # row: j + m = n-1-a, j - m = a
    b = np.arange(n)[None, :, None]  # col: j + m' = n-1-b, j - m' = b
    s = np.arange(n)[None, None, :]
    lo = np.maximum(0, a - b)
    hi = np.minimum(n - 1 - b, a)
    valid = (s >= lo) & (s <= hi)
    # clip factorial arguments so masked-out entries still index the table
    f1 = np.clip(n - 1 - b - s, 0, two_j)
    f2 = np.clip(b - a + s, 0, two_j)
    f3 = np.clip(a - s, 0, two_j)
    log_coef = (
        0.5 * (logfact[n - 1 - a] + logfact[a] + logfact[n - 1 - b] + logfact[b])
        - logfact[f1] - logfact[s] - logfact[f2] - logfact[f3]
    )
    sign = np.where((b - a + s) % 2 == 0, 1, -1).astype(np.longdouble)
    coef = np.where(valid, sign * np.exp(log_coef), np.longdouble(0))
    pow_cos = np.where(valid, (n - 1) + (a - b) - 2 * s, 0)
    pow_sin = np.where(valid, (b - a) + 2 * s, 0)
    return coef, pow_cos, pow_sin


def wigner_d_matrix(two_j: int, theta: float) -> np.ndarray:
    """Reduced rotation matrix ``d[a, b] = <j, j-a| exp(-i theta J_y) |j, j-b>``.

    Terms are summed in extended precision; the alternating sum cancels
    heavily for large j.
    """
    coef, pow_cos, pow_sin = _wigner_tables(two_j)
    half = np.longdouble(theta) / 2
    c = np.cos(half)
    s = np.sin(half)
    terms = coef * np.power(c, pow_cos) * np.power(s, pow_sin)
    return terms.sum(axis=2).astype(np.float64)


def symmetrized_product(up: np.ndarray, down: np.ndarray, n_qubits: int, n_up: int) -> np.ndarray:
    """Normalized sum over placements of ``n_up`` copies of ``up`` among ``down`` factors.

    Qubit 0 is the most significant index of the returned ``2**n_qubits`` vector.
    """
    up = np.asarray(up, dtype=complex)
    down = np.asarray(down, dtype=complex)
    out = np.zeros(2**n_qubits, dtype=complex)
    for chosen in combinations(range(n_qubits), n_up):
        chosen = set(chosen)
        vec = np.ones(1, dtype=complex)
        for q in range(n_qubits):
            vec = np.kron(vec, up if q in chosen else down)
        out += vec
    return out / np.sqrt(comb(n_qubits, n_up))
