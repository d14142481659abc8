"""Collections of shapes as points in the lifted Euclidean space.

Once every shape is a single embedding vector (or ``rho x d`` matrix), nearest
neighbours, distance matrices and averages are ordinary Euclidean operations.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from kdist.currents import CurrentAtoms
from kdist.errors import DimensionMismatchError, KdistError
from kdist.features import FeatureMapSpec, embed_current, embed_measure
from kdist.shapes import DiscreteMeasure


@dataclass
class ShapeCollection:
    feature_map: FeatureMapSpec
    names: list[str] = field(default_factory=list)
    embeddings: list[np.ndarray] = field(default_factory=list)
    kind: str | None = None  # "measure" or "current"

    def add(self, name: str, shape) -> None:
        """Embed and append a DiscreteMeasure or CurrentAtoms."""
        if isinstance(shape, DiscreteMeasure):
            kind, emb = "measure", embed_measure(self.feature_map, shape)
        elif isinstance(shape, CurrentAtoms):
            kind, emb = "current", embed_current(self.feature_map, shape)
        else:
            raise KdistError(f"cannot embed {type(shape).__name__}")
        if self.kind is not None and kind != self.kind:
            raise KdistError(f"collection holds {self.kind}s; refusing to mix in a {kind}")
        self.kind = kind
        self.names.append(name)
        self.embeddings.append(emb)

    def __len__(self):
        return len(self.embeddings)

    def stacked(self) -> np.ndarray:
        if not self.embeddings:
            raise KdistError("empty collection")
        return np.stack(self.embeddings).reshape(len(self), -1)


def _row_distances(E: np.ndarray, q: np.ndarray) -> np.ndarray:
    diff = E - q
    return np.sqrt(np.einsum("ij,ij->i", diff, diff))


def distance_matrix(c: ShapeCollection) -> np.ndarray:
    E = c.stacked()
    n = E.shape[0]
    D = np.zeros((n, n))
    for i in range(n):
        D[i, i + 1 :] = _row_distances(E[i + 1 :], E[i])
        D[i + 1 :, i] = D[i, i + 1 :]
    return D


def nearest_neighbor(c: ShapeCollection, query) -> tuple[int, float]:
    """Index and distance of the closest entry; ties go to the lowest index."""
    E = c.stacked()
    q = np.asarray(query, dtype=np.float64)
    if q.shape != c.embeddings[0].shape:
        raise DimensionMismatchError(
            f"query shape {q.shape} does not match collection shape {c.embeddings[0].shape}"
        )
    dist = _row_distances(E, q.reshape(-1))
    i = int(np.argmin(dist))
    return i, float(dist[i])


def mean_shape_embedding(c: ShapeCollection) -> np.ndarray:
    if not c.embeddings:
        raise KdistError("empty collection")
    return np.mean(np.stack(c.embeddings), axis=0)
