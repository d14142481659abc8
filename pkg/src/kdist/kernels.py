"""Similarity functions, Gram matrices and positive-definiteness checks.

The Gaussian kernel uses ``exp(-|x - y|^2 / sigma^2)``. There is deliberately
no factor 2 in the denominator, so ``sigma`` here equals ``sqrt(2)`` times the
"standard deviation" bandwidth used by many machine learning libraries.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.spatial.distance import cdist

from kdist.errors import DimensionMismatchError, KdistError

KINDS = ("gaussian", "box")


@dataclass(frozen=True)
class KernelSpec:
    """A similarity function with ``K(x, x) = 1``.

    Parameters
    ----------
    kind : {"gaussian", "box"}
    sigma : float
        Gaussian bandwidth (coordinate length units). Ignored for ``box``.
    width : float
        Box cutoff radius: ``K = 1`` if ``|x - y| <= width`` else 0. Ignored
        for ``gaussian``.
    """

    kind: str = "gaussian"
    sigma: float = 1.0
    width: float = 2.0

    def __post_init__(self):
        if self.kind not in KINDS:
            raise KdistError(f"unknown kernel kind {self.kind!r}; expected one of {KINDS}")
        if self.kind == "gaussian" and not self.sigma > 0:
            raise KdistError(f"gaussian sigma must be > 0, got {self.sigma}")
        if self.kind == "box" and not self.width > 0:
            raise KdistError(f"box width must be > 0, got {self.width}")

    @classmethod
    def gaussian(cls, sigma: float = 1.0) -> "KernelSpec":
        return cls("gaussian", sigma=float(sigma))

    @classmethod
    def box(cls, width: float = 2.0) -> "KernelSpec":
        return cls("box", width=float(width))

    @property
    def is_positive_definite(self) -> bool:
        return self.kind == "gaussian"

    def to_dict(self) -> dict:
        if self.kind == "gaussian":
            return {"kind": "gaussian", "sigma": self.sigma}
        return {"kind": "box", "width": self.width}


@dataclass(frozen=True)
class GramReport:
    n: int
    min_eigenvalue: float
    is_positive_semidefinite: bool
    tolerance: float

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "min_eigenvalue": self.min_eigenvalue,
            "is_positive_semidefinite": self.is_positive_semidefinite,
            "tolerance": self.tolerance,
        }


def as_points(points, name="points") -> np.ndarray:
    """Coerce to a float64 ``(n, d)`` array; 1-d input is read as n points in R^1."""
    arr = np.asarray(points, dtype=np.float64)
    if arr.ndim == 1:
        arr = arr[:, None]
    if arr.ndim != 2:
        raise KdistError(f"{name} must be a 2-d array of shape (n, d), got shape {arr.shape}")
    return arr


def kernel_block(k: KernelSpec, X: np.ndarray, Y: np.ndarray) -> np.ndarray:
    """Matrix ``K(X[i], Y[j])`` for point arrays of shape (n, d) and (m, d).

    Squared distances are formed from coordinate differences, so identical
    points give exactly 0 and the block for ``X is Y`` is bitwise symmetric.
    """
    if X.shape[1] != Y.shape[1]:
        raise DimensionMismatchError(
            f"dimension mismatch: {X.shape[1]}-d points vs {Y.shape[1]}-d points"
        )
    sq = cdist(X, Y, "sqeuclidean")
    if k.kind == "gaussian":
        sq *= -1.0 / (k.sigma * k.sigma)
        return np.exp(sq, out=sq)
    return (np.sqrt(sq) <= k.width).astype(np.float64)


def eval_kernel(k: KernelSpec, x, y) -> float:
    x = np.atleast_1d(np.asarray(x, dtype=np.float64))
    y = np.atleast_1d(np.asarray(y, dtype=np.float64))
    if x.ndim != 1 or y.ndim != 1:
        raise KdistError("eval_kernel expects two single points")
    if x.shape[0] != y.shape[0]:
        raise DimensionMismatchError(
            f"dimension mismatch: x has {x.shape[0]} coordinates, y has {y.shape[0]}"
        )
    return float(kernel_block(k, x[None, :], y[None, :])[0, 0])


def gram_matrix(k: KernelSpec, points) -> np.ndarray:
    """Symmetric ``n x n`` Gram matrix with unit diagonal."""
    X = as_points(points)
    if X.shape[0] == 0:
        raise KdistError("gram_matrix needs at least one point")
    G = kernel_block(k, X, X)
    # cdist already returns a symmetric result; enforce it bitwise anyway
    iu = np.triu_indices_from(G, 1)
    G.T[iu] = G[iu]
    return G


def check_positive_definite(g, tolerance: float | None = None) -> GramReport:
    """Smallest eigenvalue of a symmetric matrix and the PSD verdict.

    ``tolerance`` defaults to ``1e-8 * n``. Matrices that are not symmetric to
    within 1e-10 (absolute, entrywise) are rejected.
    """
    G = np.asarray(g, dtype=np.float64)
    if G.ndim != 2 or G.shape[0] != G.shape[1]:
        raise KdistError(f"expected a square matrix, got shape {G.shape}")
    n = G.shape[0]
    if tolerance is None:
        tolerance = 1e-8 * n
    if tolerance < 0:
        raise KdistError("tolerance must be >= 0")
    asym = float(np.max(np.abs(G - G.T))) if n else 0.0
    if asym > 1e-10:
        raise KdistError(f"matrix is not symmetric (max |G - G^T| = {asym:.3g})")
    lam_min = float(np.linalg.eigvalsh(G)[0])
    return GramReport(n, lam_min, lam_min >= -tolerance, float(tolerance))
