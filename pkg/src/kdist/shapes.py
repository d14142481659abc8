"""Geometric input types and their plain-text file formats.

Formats
-------
points (``.csv``)
    One point per line, comma-separated coordinates. If the first line is
    ``# weighted`` the last column of every row is the point's weight.
    Other lines starting with ``#`` and blank lines are ignored.
polyline (``.poly``)
    First line ``POLYLINE <d>``, then one comma-separated vertex per line in
    traversal order. Closed curves repeat the first vertex at the end.
mesh (``.off``)
    ``OFF``, a counts line ``nv nf ne``, ``nv`` vertex lines ``x y z`` and
    ``nf`` face lines ``3 i j k``.

Serialisers write floats with ``repr`` (shortest round-trippable decimal), so
``parse(serialize(x))`` reproduces coordinates bit for bit.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from kdist.errors import DimensionMismatchError, KdistError, ParseError


@dataclass(frozen=True, eq=False)
class DiscreteMeasure:
    """Weighted point set ``sum_i w_i delta(x_i)``. Weights may be negative."""

    points: np.ndarray
    weights: np.ndarray = field(default=None)

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=np.float64)
        if pts.ndim == 1:
            pts = pts[:, None]
        if pts.ndim != 2 or pts.shape[0] == 0 or pts.shape[1] == 0:
            raise KdistError(f"a measure needs a non-empty (n, d) point array, got shape {pts.shape}")
        if self.weights is None:
            w = np.ones(pts.shape[0])
        else:
            w = np.asarray(self.weights, dtype=np.float64).reshape(-1)
        if w.shape[0] != pts.shape[0]:
            raise KdistError(f"{pts.shape[0]} points but {w.shape[0]} weights")
        if not np.all(np.isfinite(w)):
            raise KdistError("weights must be finite")
        if not np.all(np.isfinite(pts)):
            raise KdistError("coordinates must be finite")
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "weights", w)

    @property
    def dimension(self) -> int:
        return self.points.shape[1]

    def __len__(self):
        return self.points.shape[0]

    def scaled(self, alpha: float) -> "DiscreteMeasure":
        return DiscreteMeasure(self.points, alpha * self.weights)

    def __eq__(self, other):
        if not isinstance(other, DiscreteMeasure):
            return NotImplemented
        return _bits_equal(self.points, other.points) and _bits_equal(self.weights, other.weights)


@dataclass(frozen=True, eq=False)
class PolyCurve:
    """Oriented polyline; orientation follows vertex order."""

    vertices: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.vertices, dtype=np.float64)
        if v.ndim != 2 or v.shape[1] < 2:
            raise KdistError(f"curve vertices must have shape (n, d) with d >= 2, got {v.shape}")
        if v.shape[0] < 2:
            raise KdistError("a curve needs at least 2 vertices")
        if not np.all(np.isfinite(v)):
            raise KdistError("coordinates must be finite")
        same = np.all(v[1:] == v[:-1], axis=1)
        if np.any(same):
            i = int(np.argmax(same))
            raise KdistError(f"zero-length segment between vertices {i} and {i + 1}")
        object.__setattr__(self, "vertices", v)

    @property
    def dimension(self) -> int:
        return self.vertices.shape[1]

    def reversed(self) -> "PolyCurve":
        return PolyCurve(self.vertices[::-1].copy())

    def length(self) -> float:
        return float(np.sum(np.linalg.norm(np.diff(self.vertices, axis=0), axis=1)))

    def __eq__(self, other):
        if not isinstance(other, PolyCurve):
            return NotImplemented
        return _bits_equal(self.vertices, other.vertices)


@dataclass(frozen=True, eq=False)
class TriMesh:
    """Oriented triangle mesh in R^3; face orientation follows index order."""

    vertices: np.ndarray
    triangles: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.vertices, dtype=np.float64)
        t = np.asarray(self.triangles)
        if v.ndim != 2 or v.shape[1] != 3:
            raise KdistError(f"mesh vertices must have shape (n, 3), got {v.shape}")
        if t.ndim != 2 or t.shape[1] != 3 or t.shape[0] == 0:
            raise KdistError(f"mesh triangles must have shape (m, 3) with m >= 1, got {t.shape}")
        if not np.all(np.isfinite(v)):
            raise KdistError("coordinates must be finite")
        if not np.issubdtype(t.dtype, np.integer):
            if not np.all(t == np.round(t)):
                raise KdistError("triangle indices must be integers")
        t = t.astype(np.int64)
        if t.min() < 0 or t.max() >= v.shape[0]:
            raise KdistError(f"triangle index out of range for {v.shape[0]} vertices")
        bad = np.flatnonzero(_face_area2(v, t) == 0)
        if bad.size:
            raise KdistError(f"degenerate triangle at face {int(bad[0])}")
        object.__setattr__(self, "vertices", v)
        object.__setattr__(self, "triangles", t)

    def flipped(self) -> "TriMesh":
        return TriMesh(self.vertices, self.triangles[:, [0, 2, 1]])

    def area(self) -> float:
        return float(np.sum(np.sqrt(_face_area2(self.vertices, self.triangles))) / 2)

    def __eq__(self, other):
        if not isinstance(other, TriMesh):
            return NotImplemented
        return _bits_equal(self.vertices, other.vertices) and np.array_equal(
            self.triangles, other.triangles
        )


def _face_area2(v, t):
    a, b, c = v[t[:, 0]], v[t[:, 1]], v[t[:, 2]]
    n = np.cross(b - a, c - a)
    return np.einsum("ij,ij->i", n, n)


def _bits_equal(a, b):
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    return a.shape == b.shape and a.tobytes() == b.tobytes()


def check_same_dimension(a: int, b: int, what: str = "inputs") -> None:
    if a != b:
        raise DimensionMismatchError(f"dimension mismatch between {what}: {a} vs {b}")


# -- parsing ----------------------------------------------------------------


def _text(data) -> str:
    if isinstance(data, (bytes, bytearray)):
        try:
            return data.decode("utf-8")
        except UnicodeDecodeError as e:
            raise ParseError(f"input is not valid UTF-8: {e}") from None
    return data


def _float(token: str, lineno: int) -> float:
    try:
        value = float(token)
    except ValueError:
        raise ParseError(f"non-numeric token {token.strip()!r}", lineno) from None
    if not np.isfinite(value):
        raise ParseError(f"non-finite value {token.strip()!r}", lineno)
    return value


def _csv_row(line: str, lineno: int) -> list[float]:
    return [_float(tok, lineno) for tok in line.split(",")]


def parse_points(data) -> DiscreteMeasure:
    lines = _text(data).splitlines()
    weighted = bool(lines) and lines[0].strip().lower() == "# weighted"
    rows = []
    width = None
    for lineno, line in enumerate(lines, start=1):
        s = line.strip()
        if not s or s.startswith("#"):
            continue
        row = _csv_row(s, lineno)
        if width is None:
            width = len(row)
            if weighted and width < 2:
                raise ParseError("weighted rows need at least one coordinate plus a weight", lineno)
        elif len(row) != width:
            raise ParseError(f"expected {width} columns, found {len(row)}", lineno)
        rows.append(row)
    if not rows:
        raise ParseError("no points found")
    arr = np.array(rows, dtype=np.float64)
    if weighted:
        return DiscreteMeasure(arr[:, :-1], arr[:, -1])
    return DiscreteMeasure(arr)


def parse_curve(data) -> PolyCurve:
    lines = _text(data).splitlines()
    header_at = None
    verts = []
    prev = None
    d = None
    for lineno, line in enumerate(lines, start=1):
        s = line.strip()
        if not s or s.startswith("#"):
            continue
        if header_at is None:
            parts = s.split()
            if len(parts) != 2 or parts[0] != "POLYLINE":
                raise ParseError("expected header 'POLYLINE <d>'", lineno)
            try:
                d = int(parts[1])
            except ValueError:
                raise ParseError(f"bad dimension {parts[1]!r} in header", lineno) from None
            if d < 2:
                raise ParseError(f"curve dimension must be >= 2, got {d}", lineno)
            header_at = lineno
            continue
        row = _csv_row(s, lineno)
        if len(row) != d:
            raise ParseError(f"expected {d} coordinates, found {len(row)}", lineno)
        if prev is not None and row == prev:
            raise ParseError("repeated consecutive vertex (zero-length segment)", lineno)
        verts.append(row)
        prev = row
    if header_at is None:
        raise ParseError("missing 'POLYLINE <d>' header")
    if len(verts) < 2:
        raise ParseError(f"a curve needs at least 2 vertices, found {len(verts)}")
    return PolyCurve(np.array(verts, dtype=np.float64))


def parse_mesh(data) -> TriMesh:
    # OFF is whitespace separated; '#' starts a comment
    content = []
    for lineno, line in enumerate(_text(data).splitlines(), start=1):
        s = line.split("#", 1)[0].strip()
        if s:
            content.append((lineno, s))
    if not content or content[0][1] != "OFF":
        raise ParseError("expected 'OFF' header", content[0][0] if content else None)
    if len(content) < 2:
        raise ParseError("missing counts line")
    lineno, counts = content[1]
    parts = counts.split()
    if len(parts) not in (2, 3):
        raise ParseError("counts line must be 'nv nf ne'", lineno)
    try:
        nv, nf = int(parts[0]), int(parts[1])
    except ValueError:
        raise ParseError("counts must be integers", lineno) from None
    if nv < 3 or nf < 1:
        raise ParseError(f"need at least 3 vertices and 1 face, got {nv} and {nf}", lineno)
    body = content[2:]
    if len(body) < nv + nf:
        raise ParseError(f"expected {nv} vertex and {nf} face lines, found {len(body)} lines in total")
    if len(body) > nv + nf:
        raise ParseError("unexpected trailing content", body[nv + nf][0])
    verts = np.empty((nv, 3))
    for i, (lineno, s) in enumerate(body[:nv]):
        toks = s.split()
        if len(toks) != 3:
            raise ParseError(f"vertex needs 3 coordinates, found {len(toks)}", lineno)
        verts[i] = [_float(t, lineno) for t in toks]
    faces = np.empty((nf, 3), dtype=np.int64)
    for i, (lineno, s) in enumerate(body[nv:]):
        toks = s.split()
        try:
            ints = [int(t) for t in toks]
        except ValueError:
            raise ParseError("face indices must be integers", lineno) from None
        if not ints or ints[0] != 3 or len(ints) != 4:
            raise ParseError(f"only triangle faces '3 i j k' are supported, got {s!r}", lineno)
        tri = ints[1:]
        for j in tri:
            if not 0 <= j < nv:
                raise ParseError(f"vertex index {j} out of range for {nv} vertices", lineno)
        a, b, c = verts[tri]
        if not np.any(np.cross(b - a, c - a)):
            raise ParseError("degenerate triangle (zero area)", lineno)
        faces[i] = tri
    return TriMesh(verts, faces)


# -- serialisation ------------------------------------------------------------


def _fmt(values, sep) -> str:
    return sep.join(repr(float(v)) for v in values)


def serialize_points(m: DiscreteMeasure) -> str:
    weighted = not np.all(m.weights == 1.0)
    out = ["# weighted"] if weighted else []
    for p, w in zip(m.points, m.weights):
        out.append(_fmt(list(p) + [w], ",") if weighted else _fmt(p, ","))
    return "\n".join(out) + "\n"


def serialize_curve(c: PolyCurve) -> str:
    out = [f"POLYLINE {c.dimension}"]
    out.extend(_fmt(v, ",") for v in c.vertices)
    return "\n".join(out) + "\n"


def serialize_mesh(m: TriMesh) -> str:
    out = ["OFF", f"{len(m.vertices)} {len(m.triangles)} 0"]
    out.extend(_fmt(v, " ") for v in m.vertices)
    out.extend(f"3 {i} {j} {k}" for i, j, k in m.triangles)
    return "\n".join(out) + "\n"
