"""GIT data per chamber, computed on supports.

A support ``s`` is semistable at ``r`` when ``r`` lies in its orbit polytope,
and stable when ``r`` is interior to it and the orbit has full dimension.
Quotients are reported combinatorially: orbit-class partitions and the slice
polytope ``{x >= 0, sum x = 1, sum x_i w_i = r}``, which is the moment
polytope of the reduced space at ``r``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .action import (
    Support,
    WeightSystem,
    all_supports,
    closure_supports,
    orbit_dim,
    orbit_polytope,
)
from .chambers import Chamber, ChamberComplex, build_chambers, locate
from .errors import OutsidePolytopeError
from .geometry import INTERIOR, OUTSIDE, contains, is_subset, relative_interior_point
from .linalg import Vector, affine_rank, rat, solve, vec


def _as_point(r) -> Vector:
    if isinstance(r, (int, Fraction, str)):
        return (rat(r),)
    return vec(r)


def is_semistable(ws: WeightSystem, s: Support, r) -> bool:
    return contains(orbit_polytope(ws, s), _as_point(r)) != OUTSIDE


def is_stable(ws: WeightSystem, s: Support, r) -> bool:
    return (
        orbit_dim(ws, s) == ws.k
        and contains(orbit_polytope(ws, s), _as_point(r)) == INTERIOR
    )


def semistable_set(ws: WeightSystem, chamber: Chamber) -> tuple[Support, ...]:
    """All supports whose orbit polytope contains the (closed) chamber."""
    return tuple(
        s for s in all_supports(ws) if is_subset(chamber.cell, orbit_polytope(ws, s))
    )


@dataclass(frozen=True)
class OrbitClass:
    supports: tuple[Support, ...]
    closed_orbit: Support


def orbit_classes(ws: WeightSystem, chamber: Chamber) -> tuple[OrbitClass, ...]:
    """Partition semistable supports by closures meeting in the semistable locus."""
    ss = semistable_set(ws, chamber)
    ss_set = set(ss)
    parent = {s: s for s in ss}

    def find(s):
        while parent[s] != s:
            parent[s] = parent[parent[s]]
            s = parent[s]
        return s

    meets = {s: closure_supports(ws, s) & ss_set for s in ss}
    for a, b in combinations(ss, 2):
        if meets[a] & meets[b]:
            parent[find(a)] = find(b)
    groups: dict[Support, list[Support]] = {}
    for s in ss:
        groups.setdefault(find(s), []).append(s)
    out = []
    for members in groups.values():
        closed = [s for s in members if meets[s] == {s}]
        if len(closed) != 1:
            raise AssertionError(f"class {members} has closed orbits {closed}")
        out.append(OrbitClass(tuple(sorted(members, key=_support_order)), closed[0]))
    out.sort(key=lambda c: _support_order(c.supports[0]))
    return tuple(out)


def _support_order(s: Support):
    return (-len(s), s)


@dataclass(frozen=True)
class SlicePolytope:
    r: Vector
    vertices: tuple[Vector, ...]
    dim: int
    f_vector: tuple[int, ...]


def slice_polytope(ws: WeightSystem, r) -> SlicePolytope:
    """Vertices of ``{x in R^{n+1} : x >= 0, sum x = 1, sum x_i w_i = r}``."""
    r = _as_point(r)
    m = ws.n + 1
    rows = [[Fraction(1)] * m] + [[Fraction(ws.weights[i][a]) for i in range(m)] for a in range(ws.k)]
    rhs = [Fraction(1)] + list(r)
    found = set()
    for cols in combinations(range(m), ws.k + 1):
        sub_a = [[row[j] for j in cols] for row in rows]
        if _singular(sub_a):
            continue
        xb = solve(sub_a, rhs)
        if xb is None or any(x < 0 for x in xb):
            continue
        x = [Fraction(0)] * m
        for j, v in zip(cols, xb):
            x[j] = v
        found.add(tuple(x))
    if not found:
        raise OutsidePolytopeError(f"empty slice: r = {tuple(str(x) for x in r)} is not in the moment polytope")
    verts = tuple(sorted(found))
    dim = affine_rank(list(verts))
    return SlicePolytope(r, verts, dim, _slice_f_vector(verts, dim))


def _singular(a) -> bool:
    from .linalg import rank

    return rank(a) < len(a)


def _slice_f_vector(verts: Sequence[Vector], dim: int) -> tuple[int, ...]:
    # Every face is {x_i = 0 for i in Z}; close the coordinate facets under meets.
    m = len(verts[0])
    top = frozenset(range(len(verts)))
    gens = {frozenset(v for v in top if verts[v][i] == 0) for i in range(m)}
    gens = {g for g in gens if g}
    faces = {top} | gens
    frontier = set(gens)
    while frontier:
        new = set()
        for a in frontier:
            for b in gens:
                c = a & b
                if c and c not in faces:
                    new.add(c)
        faces |= new
        frontier = new
    counts = [0] * dim
    for f in faces:
        d = affine_rank([verts[i] for i in sorted(f)])
        if d < dim:
            counts[d] += 1
    return tuple(counts)


@dataclass(frozen=True)
class WallCrossing:
    face: int
    chamber: int
    inclusion: bool
    face_f_vector: tuple[int, ...]
    chamber_f_vector: tuple[int, ...]


def wall_crossing_report(ws: WeightSystem, cc: ChamberComplex | None = None) -> tuple[WallCrossing, ...]:
    """Check ``SS(C) <= SS(D)`` for every face ``D`` of every chamber ``C``."""
    cc = cc or build_chambers(ws)
    ss = {c.id: set(semistable_set(ws, c)) for c in cc.chambers}
    fv = {
        c.id: slice_polytope(ws, relative_interior_point(c.cell)).f_vector for c in cc.chambers
    }
    out = []
    for d, c in cc.face_poset:
        ok = ss[c] <= ss[d]
        if not ok:
            raise AssertionError(f"SS(chamber {c}) is not contained in SS(face {d})")
        out.append(WallCrossing(d, c, ok, fv[d], fv[c]))
    return tuple(out)


@dataclass(frozen=True)
class ReductionStrata:
    r: Vector
    strata: dict  # polytope key -> tuple of supports
    closures: dict  # polytope key -> tuple of supports (union over sub-polytopes)

    def stratum_of(self, s: Support):
        for key, members in self.strata.items():
            if s in members:
                return key
        raise KeyError(s)


def reduction_strata(ws: WeightSystem, r) -> ReductionStrata:
    """Group the semistable supports at ``r`` by their orbit polytope."""
    r = _as_point(r)
    if contains(ws.moment_polytope, r) == OUTSIDE:
        raise OutsidePolytopeError("charge outside the moment polytope")
    strata: dict = {}
    polys = {}
    for s in all_supports(ws):
        if is_semistable(ws, s, r):
            poly = orbit_polytope(ws, s)
            strata.setdefault(poly.key, []).append(s)
            polys[poly.key] = poly
    keys = sorted(strata, key=lambda k: (-polys[k].dim, k))
    strata = {k: tuple(sorted(strata[k], key=_support_order)) for k in keys}
    closures = {}
    for d in keys:
        members = []
        for c in keys:
            if is_subset(polys[c], polys[d]):
                members.extend(strata[c])
        closures[d] = tuple(sorted(members, key=_support_order))
    return ReductionStrata(r, strata, closures)


def chamber_of(ws: WeightSystem, r) -> Chamber:
    return locate(build_chambers(ws), _as_point(r))
