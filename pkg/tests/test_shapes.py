import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra import numpy as hnp

from kdist import (
    DiscreteMeasure,
    PolyCurve,
    TriMesh,
    parse_curve,
    parse_mesh,
    parse_points,
    serialize_curve,
    serialize_mesh,
    serialize_points,
)
from kdist.errors import KdistError, ParseError

TRIANGLE_OFF = b"OFF\n3 1 0\n0 0 0\n1 0 0\n0 1 0\n3 0 1 2\n"


def test_points_unweighted():
    m = parse_points(b"0,0\n1,1\n")
    assert m.dimension == 2
    assert m.points.tolist() == [[0, 0], [1, 1]]
    assert m.weights.tolist() == [1.0, 1.0]


def test_points_weighted_header():
    m = parse_points(b"# weighted\n0,0,2.5\n")
    assert m.dimension == 2
    assert m.points.tolist() == [[0, 0]]
    assert m.weights.tolist() == [2.5]


def test_points_negative_weights_allowed():
    assert parse_points("# weighted\n1,-0.5\n").weights.tolist() == [-0.5]


@pytest.mark.parametrize(
    "text, line",
    [
        (b"0,0\n1\n", 2),
        (b"0,0\n1,abc\n", 2),
        (b"1,2\n\n3,nan\n", 3),
        (b"# weighted\n1\n", 2),
    ],
)
def test_points_errors_carry_line_numbers(text, line):
    with pytest.raises(ParseError) as exc:
        parse_points(text)
    assert exc.value.line == line
    assert f"line {line}" in str(exc.value)


def test_points_empty_file():
    with pytest.raises(ParseError):
        parse_points(b"")
    with pytest.raises(ParseError):
        parse_points(b"# weighted\n")


def test_curve_unit_segment():
    c = parse_curve(b"POLYLINE 2\n0,0\n1,0\n")
    assert c.vertices.tolist() == [[0, 0], [1, 0]]
    assert c.dimension == 2


@pytest.mark.parametrize(
    "text",
    [
        b"POLYLINE 2\n0,0\n",
        b"POLYLINE 3\n0,0,0\n0,0,0\n",
        b"POLYGON 2\n0,0\n1,0\n",
        b"POLYLINE x\n0,0\n1,0\n",
        b"POLYLINE 1\n0\n1\n",
        b"POLYLINE 2\n0,0\n1,0,0\n",
        b"0,0\n1,0\n",
    ],
)
def test_curve_errors(text):
    with pytest.raises(ParseError):
        parse_curve(text)


def test_mesh_single_triangle():
    m = parse_mesh(TRIANGLE_OFF)
    assert m.vertices.shape == (3, 3)
    assert m.triangles.tolist() == [[0, 1, 2]]


def test_mesh_comments_and_blank_lines():
    text = b"OFF\n# a comment\n3 1 0\n\n0 0 0\n1 0 0 # trailing\n0 1 0\n3 0 1 2\n"
    assert parse_mesh(text) == parse_mesh(TRIANGLE_OFF)


@pytest.mark.parametrize(
    "text, line",
    [
        (b"OFF\n4 1 0\n0 0 0\n1 0 0\n0 1 0\n1 1 0\n4 0 1 2 3\n", 7),
        (b"OFF\n3 1 0\n0 0 0\n1 0 0\n0 1 0\n3 0 1 99\n", 6),
        (b"OFF\n3 1 0\n0 0 0\n1 0 0\n2 0 0\n3 0 1 2\n", 6),
        (b"OFF\n3 1 0\n0 0 0\n1 0\n0 1 0\n3 0 1 2\n", 4),
        (b"PLY\n3 1 0\n", 1),
    ],
)
def test_mesh_errors(text, line):
    with pytest.raises(ParseError) as exc:
        parse_mesh(text)
    assert exc.value.line == line


def test_mesh_truncated():
    with pytest.raises(ParseError):
        parse_mesh(b"OFF\n3 1 0\n0 0 0\n1 0 0\n")


def test_type_invariants_enforced_directly():
    with pytest.raises(KdistError):
        PolyCurve([[0, 0], [0, 0]])
    with pytest.raises(KdistError):
        TriMesh([[0, 0, 0], [1, 0, 0], [2, 0, 0]], [[0, 1, 2]])
    with pytest.raises(KdistError):
        TriMesh([[0, 0, 0], [1, 0, 0], [0, 1, 0]], [[0, 1, 3]])
    with pytest.raises(KdistError):
        DiscreteMeasure(np.zeros((0, 2)))
    with pytest.raises(KdistError):
        DiscreteMeasure([[0.0]], [np.inf])


def test_serialize_uses_shortest_repr():
    assert serialize_points(DiscreteMeasure([[0.1, 1e-300]])) == "0.1,1e-300\n"
    assert serialize_curve(PolyCurve([[0, 0], [1, 0]])) == "POLYLINE 2\n0.0,0.0\n1.0,0.0\n"


finite = st.floats(allow_nan=False, allow_infinity=False, width=64)


@settings(max_examples=100, deadline=None)
@given(
    hnp.arrays(np.float64, st.tuples(st.integers(1, 8), st.integers(1, 4)), elements=finite),
    st.booleans(),
    st.data(),
)
def test_points_round_trip(pts, weighted, data):
    w = None
    if weighted:
        w = data.draw(hnp.arrays(np.float64, pts.shape[0], elements=finite))
    m = DiscreteMeasure(pts, w)
    assert parse_points(serialize_points(m)) == m


@settings(max_examples=100, deadline=None)
@given(hnp.arrays(np.float64, st.tuples(st.integers(2, 8), st.integers(2, 4)), elements=finite))
def test_curve_round_trip(verts):
    try:
        c = PolyCurve(verts)
    except KdistError:
        return
    assert parse_curve(serialize_curve(c)) == c
