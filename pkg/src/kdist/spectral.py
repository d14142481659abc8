"""Exact finite-sample lifting from a Gram eigendecomposition.

For ``G = Q diag(lam) Q^T`` we set ``B = diag(sqrt(lam)) Q^T``; column ``i`` of
``B`` is the lifted point ``Phi(x_i)`` and ``B^T B = G``. Kernel distances
between measures supported on the sample are then plain Euclidean distances
``|B (w_P - w_Q)|``. Dense eigensolve, so this is an oracle, not a fast path.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from kdist.errors import KdistError
from kdist.kernels import KernelSpec, as_points, gram_matrix

MAX_POINTS = 4096


@dataclass(frozen=True, eq=False)
class SpectralLift:
    """``B`` has shape (r, n); ``eigenvalues`` are the r retained values, descending."""

    points: np.ndarray
    B: np.ndarray
    eigenvalues: np.ndarray
    dropped_negative: float

    @property
    def n(self) -> int:
        return self.points.shape[0]

    def coordinates(self, i: int) -> np.ndarray:
        return self.B[:, i]


def spectral_lift(k: KernelSpec, points) -> SpectralLift:
    """Eigendecompose the Gram of ``points``.

    Eigenvalues at or above ``-1e-10 * n`` are kept (small negatives clamped
    to 0); anything below is dropped and the most negative one recorded in
    ``dropped_negative``. Eigenvector signs are fixed so the first nonzero
    entry is positive.
    """
    X = as_points(points)
    n = X.shape[0]
    if n > MAX_POINTS:
        raise KdistError(f"spectral_lift is limited to {MAX_POINTS} points, got {n}")
    G = gram_matrix(k, X)
    try:
        lam, Q = np.linalg.eigh(G)
    except np.linalg.LinAlgError as e:
        raise KdistError(f"eigensolve failed: {e}") from None
    lam, Q = lam[::-1], Q[:, ::-1]

    first = np.argmax(np.abs(Q) > 1e-12 * np.abs(Q).max(axis=0), axis=0)
    signs = np.sign(Q[first, np.arange(n)])
    signs[signs == 0] = 1.0
    Q = Q * signs

    keep = lam >= -1e-10 * n
    dropped = lam[~keep]
    lam_kept = np.clip(lam[keep], 0.0, None)
    B = np.sqrt(lam_kept)[:, None] * Q[:, keep].T
    return SpectralLift(X, B, lam_kept, float(dropped.min()) if dropped.size else 0.0)


def lifted_distance_sq(L: SpectralLift, weights_p, weights_q) -> float:
    """``|B (w_P - w_Q)|^2`` for weight vectors indexed over ``L.points``."""
    wp = np.asarray(weights_p, dtype=np.float64).reshape(-1)
    wq = np.asarray(weights_q, dtype=np.float64).reshape(-1)
    if wp.shape[0] != L.n or wq.shape[0] != L.n:
        raise KdistError(
            f"weight vectors must have length {L.n}, got {wp.shape[0]} and {wq.shape[0]}"
        )
    v = L.B @ (wp - wq)
    return float(v @ v)
