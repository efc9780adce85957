from __future__ import annotations

from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from chowlab.errors import EmptyPolytopeError, LatticeError, UnsupportedDimensionError
from chowlab.geometry import (
    BOUNDARY,
    INTERIOR,
    OUTSIDE,
    contains,
    convex_hull,
    face_lattice,
    is_subset,
    lattice_volume,
    relative_interior_point,
)

F = Fraction


def test_interval_hull_drops_interior_point():
    p = convex_hull([(-1,), (1,), (0,)])
    assert p.vertices == ((F(-1),), (F(1),))
    assert p.dim == 1


def test_singleton_hull():
    p = convex_hull([(0,)])
    assert p.dim == 0 and p.vertices == ((F(0),),)


def test_triangle_hull_drops_interior_point():
    p = convex_hull([(0, 0), (1, 0), (0, 1), (F(1, 4), F(1, 4))])
    assert set(p.vertices) == {(0, 0), (1, 0), (0, 1)}
    assert p.dim == 2


def test_collinear_points_in_the_plane():
    p = convex_hull([(0, 0), (1, 1), (2, 2), (F(1, 2), F(1, 2))])
    assert p.dim == 1
    assert set(p.vertices) == {(0, 0), (2, 2)}


def test_hull_rejects_empty_and_high_dimension():
    with pytest.raises(EmptyPolytopeError):
        convex_hull([])
    with pytest.raises(UnsupportedDimensionError):
        convex_hull([(0, 0, 0, 0), (1, 0, 0, 0)])


@pytest.mark.parametrize(
    "segment, lattice, volume",
    [(((-1,), (1,)), None, 2), (((-1,), (0,)), None, 1), (((-1,), (1,)), [(2,)], 1)],
)
def test_lattice_volume_of_segments(segment, lattice, volume):
    assert lattice_volume(convex_hull(segment), lattice) == volume


def test_lattice_volume_errors():
    with pytest.raises(LatticeError):
        lattice_volume(convex_hull([(0, 0), (1, 0)]))  # not full-dimensional
    with pytest.raises(LatticeError):
        lattice_volume(convex_hull([(0,), (1,)]), [(1,), (2,)])


def test_normalized_volumes_in_higher_dimension():
    assert lattice_volume(convex_hull([(0, 0), (2, 0), (0, 2)])) == 4
    cube = convex_hull(list(product((0, 1), repeat=3)))
    assert lattice_volume(cube) == 6


def test_relative_interior_and_contains():
    seg = convex_hull([(-1,), (0,)])
    assert relative_interior_point(seg) == (F(-1, 2),)
    assert contains(seg, (0,)) == BOUNDARY
    assert contains(seg, (F(-1, 3),)) == INTERIOR
    assert contains(seg, (1,)) == OUTSIDE


def test_relative_interior_of_lower_dimensional_cell():
    edge = convex_hull([(0, 0, 0), (2, 2, 0)])
    p = relative_interior_point(edge)
    assert contains(edge, p) == INTERIOR
    assert contains(edge, (1, 1, 1)) == OUTSIDE


def test_face_lattice_of_quadrilateral():
    quad = convex_hull([(0, 0), (2, 0), (0, 1), (1, 1)])
    fl = face_lattice(quad)
    assert (fl.count(0), fl.count(1), fl.count(2)) == (4, 4, 1)
    assert fl.f_vector() == (4, 4)


def test_face_lattice_of_cube_and_octahedron():
    cube = convex_hull(list(product((0, 1), repeat=3)))
    assert cube.face_lattice.f_vector() == (8, 12, 6)
    octa = convex_hull([(1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0), (0, 0, 1), (0, 0, -1)])
    assert octa.face_lattice.f_vector() == (6, 12, 8)


coords = st.fractions(min_value=-3, max_value=3, max_denominator=4)


@settings(max_examples=100, deadline=None)
@given(st.lists(st.tuples(coords, coords), min_size=1, max_size=9))
def test_hull_properties_in_the_plane(points):
    p = convex_hull(points)
    assert set(p.vertices) <= {tuple(map(Fraction, q)) for q in points}
    assert all(contains(p, q) != OUTSIDE for q in points)
    # Every vertex is extreme: dropping it shrinks the hull.
    for v in p.vertices:
        rest = [q for q in points if tuple(map(Fraction, q)) != v]
        if rest:
            assert contains(convex_hull(rest), v) == OUTSIDE
    assert contains(p, relative_interior_point(p)) == INTERIOR


@settings(max_examples=100, deadline=None)
@given(st.lists(st.tuples(coords, coords, coords), min_size=4, max_size=9))
def test_face_lattice_euler_characteristic(points):
    p = convex_hull(points)
    fl = p.face_lattice
    f = fl.f_vector()
    if p.dim == 3:
        assert f[0] - f[1] + f[2] == 2
    elif p.dim == 2:
        assert f[0] == f[1]
    sub = convex_hull(points[:-1]) if len(points) > 1 else p
    assert is_subset(sub, p)
