"""Exact polytopes in dimension at most three.

A :class:`Polytope` is stored by its vertices (lexicographically sorted) plus
an H-representation relative to its affine hull: ``equations`` cut out the
affine hull and ``facets`` are inequalities ``a . x <= b`` valid on it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

from .errors import EmptyPolytopeError, LatticeError, UnsupportedDimensionError
from .linalg import (
    Vector,
    det,
    dot,
    independent_subset,
    nullspace,
    primitive_integer,
    rank,
    solve,
    sub,
    vec,
)

MAX_HULL_DIM = 3

INTERIOR = "interior"
BOUNDARY = "boundary"
OUTSIDE = "outside"


@dataclass(frozen=True)
class FaceLattice:
    """Nonempty faces of a polytope, each given as a set of vertex indices."""

    faces: tuple[frozenset[int], ...]
    dims: tuple[int, ...]
    covers: tuple[tuple[int, int], ...]  # (i, j): face i is a facet of face j

    def count(self, dim: int) -> int:
        return sum(1 for d in self.dims if d == dim)

    @property
    def dim(self) -> int:
        return max(self.dims)

    def f_vector(self) -> tuple[int, ...]:
        """Numbers of proper faces by dimension, (f_0, ..., f_{d-1})."""
        return tuple(self.count(d) for d in range(self.dim))

    def facets_of(self, i: int) -> list[int]:
        return [a for a, b in self.covers if b == i]


@dataclass(frozen=True)
class Polytope:
    ambient_dim: int
    vertices: tuple[Vector, ...]
    facets: tuple[tuple[Vector, Fraction], ...]
    equations: tuple[tuple[Vector, Fraction], ...]
    dim: int
    facet_vertices: tuple[frozenset[int], ...] = ()

    @cached_property
    def face_lattice(self) -> FaceLattice:
        return _face_lattice(self)

    @property
    def key(self) -> tuple[Vector, ...]:
        """Hashable identity: polytopes are equal iff their vertex sets are."""
        return self.vertices

    def __contains__(self, x) -> bool:
        return contains(self, x) != OUTSIDE

    def __repr__(self) -> str:
        vs = ", ".join("(" + ", ".join(str(c) for c in v) + ")" for v in self.vertices)
        return f"Polytope(dim={self.dim}, vertices=[{vs}])"


def convex_hull(points: Iterable[Sequence]) -> Polytope:
    pts = sorted(set(vec(p) for p in points))
    if not pts:
        raise EmptyPolytopeError("convex hull of an empty point set")
    ambient = len(pts[0])
    if any(len(p) != ambient for p in pts):
        raise ValueError("points of mixed dimension")
    if ambient > MAX_HULL_DIM:
        raise UnsupportedDimensionError(
            f"hull supports ambient dimension <= {MAX_HULL_DIM}, got {ambient}"
        )
    p0 = pts[0]
    diffs = [sub(p, p0) for p in pts[1:]]
    basis = [diffs[i] for i in independent_subset(diffs)]
    d = len(basis)
    equations = tuple(
        (n, dot(n, p0)) for n in (primitive_vec(e) for e in nullspace(basis, ambient))
    )
    if d == 0:
        return Polytope(ambient, (p0,), (), equations, 0, ())

    # Coordinates on which the affine hull projects isomorphically.
    cols = independent_subset([tuple(b[j] for b in basis) for j in range(ambient)])
    proj = [tuple(p[j] for j in cols) for p in pts]

    raw: list[tuple[Vector, Fraction]] = []
    if d == 1:
        lo = min(y[0] for y in proj)
        hi = max(y[0] for y in proj)
        raw = [((Fraction(-1),), -lo), ((Fraction(1),), hi)]
    else:
        seen = set()
        for idx in combinations(range(len(proj)), d):
            q0 = proj[idx[0]]
            rows = [sub(proj[i], q0) for i in idx[1:]]
            if rank(rows) < d - 1:
                continue
            ns = nullspace(rows, d)
            a = ns[0]
            b = dot(a, q0)
            vals = [dot(a, y) for y in proj]
            if all(v <= b for v in vals):
                pass
            elif all(v >= b for v in vals):
                a, b = tuple(-x for x in a), -b
            else:
                continue
            a_int = primitive_vec(a)
            scale = next(x for x in a_int if x != 0) / next(x for x in a if x != 0)
            key = (a_int, b * scale)
            if key not in seen:
                seen.add(key)
                raw.append(key)

    tight = [
        frozenset(i for i, y in enumerate(proj) if dot(a, y) == b) for a, b in raw
    ]
    vert_idx = [
        i
        for i in range(len(proj))
        if rank([raw[f][0] for f in range(len(raw)) if i in tight[f]]) == d
    ]
    renum = {old: new for new, old in enumerate(vert_idx)}
    vertices = tuple(pts[i] for i in vert_idx)

    facets = []
    for a, b in raw:
        n = [Fraction(0)] * ambient
        for j, c in zip(cols, a):
            n[j] = c
        facets.append((tuple(n), Fraction(b)))
    facet_vertices = tuple(frozenset(renum[i] for i in t if i in renum) for t in tight)
    order = sorted(range(len(facets)), key=lambda f: sorted(facet_vertices[f]))
    return Polytope(
        ambient,
        vertices,
        tuple(facets[f] for f in order),
        equations,
        d,
        tuple(facet_vertices[f] for f in order),
    )


def primitive_vec(v: Sequence[Fraction]) -> Vector:
    return tuple(Fraction(x) for x in primitive_integer(v))


def point_polytope(p: Sequence) -> Polytope:
    return convex_hull([p])


def contains(p: Polytope, x: Sequence) -> str:
    """Classify ``x`` as in the relative interior, on the relative boundary, or outside."""
    x = vec(x)
    if len(x) != p.ambient_dim:
        raise ValueError("dimension mismatch")
    if any(dot(a, x) != b for a, b in p.equations):
        return OUTSIDE
    on_boundary = False
    for a, b in p.facets:
        v = dot(a, x)
        if v > b:
            return OUTSIDE
        if v == b:
            on_boundary = True
    return BOUNDARY if on_boundary else INTERIOR


def relative_interior_point(p: Polytope) -> Vector:
    """Vertex centroid; lies in the relative interior."""
    if not p.vertices:
        raise EmptyPolytopeError("empty polytope has no interior point")
    n = len(p.vertices)
    return tuple(sum(col, Fraction(0)) / n for col in zip(*p.vertices))


def is_subset(inner: Polytope, outer: Polytope) -> bool:
    return all(contains(outer, v) != OUTSIDE for v in inner.vertices)


def face_lattice(p: Polytope) -> FaceLattice:
    return p.face_lattice


def _face_lattice(p: Polytope) -> FaceLattice:
    top = frozenset(range(len(p.vertices)))
    found = {top}
    frontier = set(fv for fv in p.facet_vertices if fv)
    found |= frontier
    while frontier:
        new = set()
        for a in frontier:
            for b in list(found):
                c = a & b
                if c and c not in found:
                    new.add(c)
        found |= new
        frontier = new

    def face_dim(f: frozenset[int]) -> int:
        pts = [p.vertices[i] for i in sorted(f)]
        return rank([sub(q, pts[0]) for q in pts[1:]]) if len(pts) > 1 else 0

    faces = sorted(found, key=lambda f: (face_dim(f), sorted(f)))
    dims = tuple(face_dim(f) for f in faces)
    covers = []
    for i, f in enumerate(faces):
        for j, g in enumerate(faces):
            if dims[j] == dims[i] + 1 and f < g:
                covers.append((i, j))
    return FaceLattice(tuple(faces), dims, tuple(covers))


def _pulling_triangulation(lat: FaceLattice, i: int) -> list[tuple[int, ...]]:
    face = lat.faces[i]
    if lat.dims[i] == 0:
        return [tuple(face)]
    apex = min(face)
    out = []
    for j in lat.facets_of(i):
        if apex in lat.faces[j]:
            continue
        out.extend((apex,) + s for s in _pulling_triangulation(lat, j))
    return out


def lattice_volume(cell: Polytope, lattice: Sequence[Sequence] | None = None) -> int:
    """Normalized volume (Euclidean volume times dim!) in units of ``lattice``.

    ``lattice`` is a basis of the translation lattice; the cell's vertices must
    differ by lattice vectors. Defaults to the standard lattice of the ambient
    space, which requires a full-dimensional cell.
    """
    if lattice is None:
        lattice = [
            tuple(int(i == j) for j in range(cell.ambient_dim))
            for i in range(cell.ambient_dim)
        ]
    basis = [vec(b) for b in lattice]
    r = len(basis)
    if rank(basis) != r:
        raise LatticeError("lattice generators are not independent")
    if cell.dim != r:
        raise LatticeError(f"cell of dimension {cell.dim} against a rank-{r} lattice")
    if r == 0:
        return 1
    cols = [[b[j] for b in basis] for j in range(cell.ambient_dim)]
    v0 = cell.vertices[0]
    coords = []
    for v in cell.vertices:
        c = solve(cols, sub(v, v0))
        if c is None:
            raise LatticeError("cell is not parallel to the lattice")
        if any(x.denominator != 1 for x in c):
            raise LatticeError(f"vertex {v} is off the lattice through {v0}")
        coords.append(c)
    local = convex_hull(coords)
    lat = local.face_lattice
    top = len(lat.faces) - 1
    total = Fraction(0)
    for simplex in _pulling_triangulation(lat, top):
        q0 = local.vertices[simplex[0]]
        total += abs(det([sub(local.vertices[s], q0) for s in simplex[1:]]))
    assert total.denominator == 1
    return int(total)
