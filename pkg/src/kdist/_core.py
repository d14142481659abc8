"""Blocked double sum shared by point measures and currents.

Both ``kappa(P, Q) = sum_ij w_i K(p_i, q_j) w'_j`` and the current form
``sum_ij K(x_i, y_j) <u_i, v_j>`` are instances of

    sum_i sum_j K(x_i, y_j) <U[i], V[j]>

with ``U``/``V`` of shape (n, m): m = 1 for weights, m = d for atom vectors.

Rows of ``X`` are split into fixed blocks. Each block contributes
``sum(U_b * (K_b @ V))``; block partials are added in block order. The
partition depends only on the input sizes, so the result is identical for any
thread count.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from kdist.kernels import KernelSpec, kernel_block

# kernel entries materialised per block (~32 MB of float64)
BLOCK_ELEMENTS = 1 << 22

_threads: int | None = None


def set_threads(n: int | None) -> None:
    """Cap worker threads for the double sums. None restores the default."""
    global _threads
    if n is not None and n < 1:
        raise ValueError("threads must be >= 1")
    _threads = n


def get_threads() -> int:
    if _threads is not None:
        return _threads
    env = os.environ.get("KDIST_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return os.cpu_count() or 1


def row_blocks(n: int, m: int) -> list[tuple[int, int]]:
    rows = max(1, BLOCK_ELEMENTS // max(m, 1))
    return [(s, min(s + rows, n)) for s in range(0, n, rows)]


def bilinear_form(
    k: KernelSpec,
    X: np.ndarray,
    U: np.ndarray,
    Y: np.ndarray,
    V: np.ndarray,
    compensated: bool = False,
) -> float:
    blocks = row_blocks(X.shape[0], Y.shape[0])

    def partial(block):
        s, e = block
        terms = U[s:e] * (kernel_block(k, X[s:e], Y) @ V)
        if compensated:
            return math.fsum(terms.ravel())
        return float(np.sum(terms))

    workers = min(get_threads(), len(blocks)) if len(blocks) > 1 else 1
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(partial, blocks))
    else:
        parts = [partial(b) for b in blocks]
    if compensated:
        return math.fsum(parts)
    total = 0.0
    for p in parts:
        total += p
    return total
