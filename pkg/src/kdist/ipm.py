"""Integral probability metric view of the kernel distance.

With test functions in the unit ball of the RKHS, the supremum of
``|int f dP - int f dQ|`` equals the kernel distance and is attained by the
witness ``f = (mu_P - mu_Q) / D_K`` where ``mu`` is the kernel mean map. With
the sup-norm unit ball instead, the metric on discrete measures is the l1
distance between weight vectors (:func:`tv_distance`).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from kdist.errors import IndistinguishableError, NotPositiveDefiniteError
from kdist.exact import kernel_distance_sq, union_weights
from kdist.kernels import KernelSpec, as_points, gram_matrix, kernel_block
from kdist.shapes import DiscreteMeasure, check_same_dimension


@dataclass(frozen=True, eq=False)
class WitnessFunction:
    """``f(x) = sum_i coefficients[i] * K(x, support[i])``."""

    support: np.ndarray
    coefficients: np.ndarray
    kernel: KernelSpec

    def __call__(self, x) -> np.ndarray:
        return kernel_block(self.kernel, as_points(x), self.support) @ self.coefficients

    def action(self, P: DiscreteMeasure) -> float:
        """``int f dP = sum_p w(p) f(p)``."""
        return float(P.weights @ self(P.points))


def tv_distance(P: DiscreteMeasure, Q: DiscreteMeasure) -> float:
    """Sum over the merged support of ``|w_P(x) - w_Q(x)|``.

    Points are merged only when their coordinates are exactly equal.
    """
    check_same_dimension(P.dimension, Q.dimension, "measures")
    net: dict[tuple, float] = {}
    for pts, ws, sign in ((P.points, P.weights, 1.0), (Q.points, Q.weights, -1.0)):
        for p, w in zip(pts, ws):
            key = tuple(p.tolist())
            net[key] = net.get(key, 0.0) + sign * w
    return math.fsum(abs(v) for v in net.values())


def _require_psd_kernel(k: KernelSpec):
    if not k.is_positive_definite:
        raise NotPositiveDefiniteError(f"the {k.kind} kernel is not positive definite")


def rkhs_norm(f: WitnessFunction, tolerance: float | None = None) -> float:
    """``sqrt(a^T G a)`` over the witness support.

    Small negative squares (rounding) are clamped to 0; a square below
    ``-tolerance`` means the Gram is indefinite and raises.
    """
    G = gram_matrix(f.kernel, f.support)
    a = f.coefficients
    sq = float(a @ G @ a)
    if tolerance is None:
        tolerance = 1e-9 * max(float(np.abs(a) @ np.abs(a)), 1.0)
    if sq < -tolerance:
        raise NotPositiveDefiniteError(f"a^T G a = {sq:.6g} < 0: indefinite Gram")
    return math.sqrt(max(sq, 0.0))


def witness(k: KernelSpec, P: DiscreteMeasure, Q: DiscreteMeasure) -> WitnessFunction:
    _require_psd_kernel(k)
    d_sq = kernel_distance_sq(k, P, Q)
    if not d_sq > 1e-18:
        raise IndistinguishableError("measures indistinguishable under K (D_K <= 1e-9)")
    pts, wp, wq = union_weights(P, Q)
    return WitnessFunction(pts, (wp - wq) / math.sqrt(d_sq), k)


def ipm_lower_bound(
    k: KernelSpec,
    P: DiscreteMeasure,
    Q: DiscreteMeasure,
    trials: int,
    seed: int,
    include_witness: bool = False,
) -> float:
    """Best ``|int f dP - int f dQ|`` over random unit-norm ``f`` in span{K(., x_i)}.

    Trial ``t`` draws standard normal coefficients over the union support from
    a generator seeded with ``seed + t``. Always at most ``D_K``, up to
    rounding. ``include_witness`` adds the canonical witness as one extra
    candidate, which attains ``D_K``.
    """
    _require_psd_kernel(k)
    if trials < 1:
        raise ValueError("trials must be >= 1")
    pts, wp, wq = union_weights(P, Q)
    G = gram_matrix(k, pts)
    delta = G @ (wp - wq)
    d_sq = float((wp - wq) @ delta)
    if not d_sq > 1e-18:
        raise IndistinguishableError("measures indistinguishable under K (D_K <= 1e-9)")
    n = pts.shape[0]
    A = np.stack([np.random.default_rng(seed + t).standard_normal(n) for t in range(trials)])
    norms_sq = np.einsum("ij,ij->i", A @ G, A)
    gaps = np.abs(A @ delta)
    ok = norms_sq > 1e-300
    best = float(np.max(gaps[ok] / np.sqrt(norms_sq[ok]), initial=0.0))
    if include_witness:
        w = witness(k, P, Q)
        best = max(best, abs(w.action(P) - w.action(Q)) / rkhs_norm(w))
    return best
