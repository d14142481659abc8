"""Current distance between oriented curves and triangle meshes.

A shape is discretised into atoms ``(position, vector)``:

* polyline segment ``v_i -> v_{i+1}``: position = midpoint, vector = ``v_{i+1} - v_i``
* triangle ``(a, b, c)``: position = centroid, vector = ``(b - a) x (c - a) / 2``

The vector length carries the segment length / triangle area, so the double
integral of ``K(x, y) <t(x), t(y)>`` becomes the finite sum
``sum_ij K(pos_i, pos_j) <vec_i, vec_j>`` (midpoint rule). Use
:func:`refine_curve` to control the discretisation error.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from kdist._core import bilinear_form
from kdist.errors import KdistError
from kdist.kernels import KernelSpec
from kdist.shapes import PolyCurve, TriMesh, check_same_dimension


@dataclass(frozen=True, eq=False)
class CurrentAtoms:
    positions: np.ndarray
    vectors: np.ndarray

    def __post_init__(self):
        pos = np.asarray(self.positions, dtype=np.float64)
        vec = np.asarray(self.vectors, dtype=np.float64)
        if pos.ndim != 2 or pos.shape != vec.shape or pos.shape[0] == 0:
            raise KdistError(
                f"atoms need matching non-empty (n, d) positions and vectors, got {pos.shape} and {vec.shape}"
            )
        object.__setattr__(self, "positions", pos)
        object.__setattr__(self, "vectors", vec)

    @property
    def dimension(self) -> int:
        return self.positions.shape[1]

    def __len__(self):
        return self.positions.shape[0]

    def reversed(self) -> "CurrentAtoms":
        return CurrentAtoms(self.positions, -self.vectors)

    def mass(self) -> float:
        """Sum of vector norms: curve length or surface area."""
        return float(np.sum(np.linalg.norm(self.vectors, axis=1)))


def curve_atoms(c: PolyCurve) -> CurrentAtoms:
    v = c.vertices
    return CurrentAtoms((v[1:] + v[:-1]) / 2, v[1:] - v[:-1])


def mesh_atoms(m: TriMesh) -> CurrentAtoms:
    v, t = m.vertices, m.triangles
    a, b, c = v[t[:, 0]], v[t[:, 1]], v[t[:, 2]]
    return CurrentAtoms((a + b + c) / 3, np.cross(b - a, c - a) / 2)


def _ordered(S: CurrentAtoms, T: CurrentAtoms):
    ks = (len(S), S.positions.tobytes(), S.vectors.tobytes())
    kt = (len(T), T.positions.tobytes(), T.vectors.tobytes())
    return (T, S) if kt < ks else (S, T)


def current_cross_similarity(k: KernelSpec, S: CurrentAtoms, T: CurrentAtoms) -> float:
    check_same_dimension(S.dimension, T.dimension, "currents")
    A, B = _ordered(S, T)
    return bilinear_form(k, A.positions, A.vectors, B.positions, B.vectors)


def current_distance_sq(k: KernelSpec, S: CurrentAtoms, T: CurrentAtoms) -> float:
    check_same_dimension(S.dimension, T.dimension, "currents")
    kss = current_cross_similarity(k, S, S)
    ktt = current_cross_similarity(k, T, T)
    kst = current_cross_similarity(k, S, T)
    return (kss + ktt) - 2.0 * kst


def current_self_similarities(k: KernelSpec, S: CurrentAtoms, T: CurrentAtoms):
    """``(kappa(S,S), kappa(T,T), kappa(S,T))``, for callers that need the clamp scale."""
    check_same_dimension(S.dimension, T.dimension, "currents")
    return (
        current_cross_similarity(k, S, S),
        current_cross_similarity(k, T, T),
        current_cross_similarity(k, S, T),
    )


def refine_curve(c: PolyCurve, levels: int) -> PolyCurve:
    """Split every segment into ``2**levels`` equal pieces."""
    if not 0 <= levels <= 16:
        raise KdistError(f"levels must be in [0, 16], got {levels}")
    if levels == 0:
        return c
    parts = 1 << levels
    v = c.vertices
    t = np.arange(parts) / parts
    starts, steps = v[:-1], v[1:] - v[:-1]
    inner = starts[:, None, :] + t[None, :, None] * steps[:, None, :]
    verts = np.vstack([inner.reshape(-1, v.shape[1]), v[-1:]])
    return PolyCurve(verts)
