import random
from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import HEXAGON, SQUARE, V
from multitile.errors import InvalidPolygonError
from multitile.field import Scalar
from multitile.geometry import (
    Segment,
    SymPolygon,
    Where,
    area,
    edge_vectors,
    locate_point,
    segment_line_intersection,
)
from oracles import area_f, classify, fvec, random_polygon, shoelace


@st.composite
def polygons(draw):
    seed = draw(st.integers(0, 10**6))
    m = draw(st.sampled_from([2, 3, 4, 5]))
    return random_polygon(random.Random(seed), m, shift=draw(st.booleans()))


def test_edge_vectors_square():
    e, es = edge_vectors(SQUARE)
    assert e[0] == V(0, 2)
    assert es[0] == V(-2, 0)
    assert len(e) == 4 and len(es) == 2


def test_edge_vectors_hexagon():
    e, es = edge_vectors(HEXAGON)
    assert e[0] == V(-1, 1)
    assert es[0] == V(-1, -1)
    assert es[2] == V(2, -1)


def test_one_based_accessors_match_lists():
    e, es = edge_vectors(HEXAGON)
    assert [HEXAGON.edge(i) for i in range(1, 7)] == e
    assert [HEXAGON.edge_star(i) for i in range(1, 4)] == es
    with pytest.raises(IndexError):
        HEXAGON.edge_star(4)


def test_area_examples():
    assert area(SQUARE) == 4
    assert area(HEXAGON) == 3


def test_locate_examples():
    assert locate_point(SQUARE, V(0, 0)) == Where.INTERIOR
    loc = locate_point(SQUARE, V(1, 0))
    assert loc == Where.BOUNDARY and loc.edge == 1
    assert locate_point(SQUARE, V(1, 1)).vertex == 2
    assert locate_point(SQUARE, V(2, 0)) == Where.OUTSIDE


def test_segment_intersections():
    r = segment_line_intersection(Segment(V(0, 0), V(2, 0)), Segment(V(1, -1), V(1, 1)))
    assert r.kind == "point" and r.point == V(1, 0)
    r = segment_line_intersection(Segment(V(0, 0), V(2, 0)), Segment(V(0, 1), V(2, 1)))
    assert r.kind == "empty"
    r = segment_line_intersection(Segment(V(0, 0), V(2, 0)), Segment(V(1, 0), V(3, 0)))
    assert r.kind == "overlap"
    assert {r.segment.a, r.segment.b} == {V(1, 0), V(2, 0)}
    # touching only at an endpoint is a point, not an overlap
    r = segment_line_intersection(Segment(V(0, 0), V(1, 0)), Segment(V(1, 0), V(2, 0)))
    assert r.kind == "point" and r.point == V(1, 0)


def test_segment_requires_distinct_endpoints():
    with pytest.raises(ValueError):
        Segment(V(1, 1), V(1, 1))


@pytest.mark.parametrize(
    "verts, why",
    [
        ([V(1, 0), V(0, 1), V(-1, 0), V(0, -1), V(1, -1)], "odd"),
        ([V(1, -1), V(-1, -1), V(-1, 1), V(1, 1)], "clockwise"),
        ([V(1, -1), V(1, 0), V(1, 1), V(-1, 1), V(-1, 0), V(-1, -1)], "collinear"),
        ([V(2, -1), V(1, 1), V(-1, 1), V(-1, -1)], "not symmetric"),
        ([V(1, 0), V(-1, 0)], "too few"),
    ],
)
def test_invalid_polygons(verts, why):
    with pytest.raises(InvalidPolygonError):
        SymPolygon(verts)


def test_irrational_polygon():
    r2 = Scalar(0, 1, 2)
    P = SymPolygon([V(r2, -1), V(r2, 1), V(-r2, 1), V(-r2, -1)])
    assert P.area() == 4 * r2
    assert P.discriminant() == 2


@given(polygons())
def test_edge_sums(P):
    e, es = edge_vectors(P)
    m = P.m
    assert sum(e, V(0, 0)) == V(0, 0)
    for i in range(m):
        assert e[i] + e[i + m] == V(0, 0)
    # e*_i = -(e_1 + ... + e_{i-1}) + (e_{i+1} + ... + e_m), 0-based here
    for i in range(m):
        rhs = sum(e[i + 1:m], V(0, 0)) - sum(e[:i], V(0, 0))
        assert es[i] == rhs
    assert es[0] == sum(e[1:m], V(0, 0))


@given(polygons())
def test_centered_midpoint_identity(P):
    Q = P.centered()
    assert Q.center == V(0, 0)
    for i in range(1, Q.m + 1):
        assert Q.edge_segment(i).midpoint() == Q.edge_star(i) * F(-1, 2)


@given(polygons())
def test_area_matches_oracles(P):
    verts = [fvec(v) for v in P.vertices]
    c = fvec(P.center)
    fan = sum(
        shoelace([c, verts[i], verts[(i + 1) % len(verts)]]) for i in range(len(verts))
    )
    assert P.area().to_fraction() == area_f(P) == fan


@given(polygons(), st.integers(0, 10**6))
def test_locate_matches_winding_oracle(P, seed):
    rng = random.Random(seed)
    verts = [fvec(v) for v in P.vertices]
    pts = [V(F(rng.randrange(-40, 41), 4), F(rng.randrange(-40, 41), 4)) for _ in range(30)]
    pts += list(P.vertices) + [P.edge_segment(i).midpoint() for i in range(1, 2 * P.m + 1)]
    names = {Where.INTERIOR: "interior", Where.BOUNDARY: "boundary", Where.OUTSIDE: "outside"}
    for p in pts:
        assert names[locate_point(P, p).where] == classify(fvec(p), verts)


@given(polygons())
def test_rotation_of_input_is_same_polygon(P):
    vs = list(P.vertices)
    Q = SymPolygon(vs[1:] + vs[:1])
    assert Q.canonical().vertices == P.canonical().vertices
    assert Q.area() == P.area()
