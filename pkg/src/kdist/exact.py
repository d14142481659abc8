"""Exact kernel distance between weighted point sets.

    kappa(P, Q) = sum_p sum_q w(p) K(p, q) w'(q)
    D^2(P, Q)   = kappa(P, P) + kappa(Q, Q) - 2 kappa(P, Q)

Cost is quadratic in the number of points. For indefinite similarities (the
box kernel) ``D^2`` can be negative; such results are reported, not hidden.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from kdist._core import bilinear_form
from kdist.kernels import KernelSpec
from kdist.shapes import DiscreteMeasure, check_same_dimension


@dataclass(frozen=True)
class DistanceResult:
    """Squared kernel distance and its square root when it exists.

    ``d`` is None when ``d_squared`` is negative beyond the clamp tolerance:
    the similarity is not a metric for this input. ``clamped`` marks a small
    negative square that was rounded up to 0.
    """

    d_squared: float
    d: float | None
    clamped: bool
    clamp_tolerance: float = 0.0

    @property
    def not_a_metric(self) -> bool:
        return self.d is None

    @classmethod
    def from_square(cls, d_squared: float, clamp_tolerance: float) -> "DistanceResult":
        if d_squared >= 0:
            return cls(d_squared, math.sqrt(d_squared), False, clamp_tolerance)
        if d_squared >= -clamp_tolerance:
            return cls(d_squared, 0.0, True, clamp_tolerance)
        return cls(d_squared, None, False, clamp_tolerance)

    def to_dict(self) -> dict:
        return {
            "d_squared": self.d_squared,
            "d": self.d,
            "clamped": self.clamped,
            "not_a_metric": self.not_a_metric,
        }


def _ordered(P: DiscreteMeasure, Q: DiscreteMeasure):
    # a fixed operand order makes kappa(P, Q) and kappa(Q, P) bitwise equal
    kp = (len(P), P.points.tobytes(), P.weights.tobytes())
    kq = (len(Q), Q.points.tobytes(), Q.weights.tobytes())
    return (Q, P) if kq < kp else (P, Q)


def cross_similarity(
    k: KernelSpec, P: DiscreteMeasure, Q: DiscreteMeasure, compensated: bool = False
) -> float:
    """Weighted cross-similarity ``sum_p sum_q w(p) K(p, q) w'(q)``."""
    check_same_dimension(P.dimension, Q.dimension, "measures")
    A, B = _ordered(P, Q)
    return bilinear_form(
        k, A.points, A.weights[:, None], B.points, B.weights[:, None], compensated
    )


def _self_and_cross(k, P, Q, compensated):
    check_same_dimension(P.dimension, Q.dimension, "measures")
    kpp = cross_similarity(k, P, P, compensated)
    kqq = cross_similarity(k, Q, Q, compensated)
    kpq = cross_similarity(k, P, Q, compensated)
    return kpp, kqq, kpq


def kernel_distance_sq(
    k: KernelSpec, P: DiscreteMeasure, Q: DiscreteMeasure, compensated: bool = False
) -> float:
    kpp, kqq, kpq = _self_and_cross(k, P, Q, compensated)
    return (kpp + kqq) - 2.0 * kpq


def default_clamp_tolerance(kpp: float, kqq: float) -> float:
    return 1e-9 * max(kpp, kqq, 1.0)


def kernel_distance(
    k: KernelSpec,
    P: DiscreteMeasure,
    Q: DiscreteMeasure,
    clamp_tolerance: float | None = None,
    compensated: bool = False,
) -> DistanceResult:
    """Kernel distance with explicit handling of negative squares.

    ``clamp_tolerance`` defaults to ``1e-9 * max(kappa(P,P), kappa(Q,Q), 1)``.
    """
    kpp, kqq, kpq = _self_and_cross(k, P, Q, compensated)
    if clamp_tolerance is None:
        clamp_tolerance = default_clamp_tolerance(kpp, kqq)
    elif clamp_tolerance < 0:
        raise ValueError("clamp_tolerance must be >= 0")
    return DistanceResult.from_square((kpp + kqq) - 2.0 * kpq, float(clamp_tolerance))


def union_weights(P: DiscreteMeasure, Q: DiscreteMeasure):
    """Stack supports of P and Q; return (points, wP, wQ) over the stacked support."""
    check_same_dimension(P.dimension, Q.dimension, "measures")
    pts = np.vstack([P.points, Q.points])
    wp = np.concatenate([P.weights, np.zeros(len(Q))])
    wq = np.concatenate([np.zeros(len(P)), Q.weights])
    return pts, wp, wq
