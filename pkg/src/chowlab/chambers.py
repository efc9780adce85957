"""Chamber decomposition of the moment polytope.

Chambers are the cells of the common refinement of all orbit polytopes
``conv{w_i : i in s}``. For rank one they are the distinct weight values and
the intervals between neighbours. For rank two they are the cells of the
planar arrangement formed by the segments between all pairs of weights
(every such segment is itself an orbit polytope).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key, lru_cache
from itertools import combinations

from .action import WeightSystem
from .errors import OutsidePolytopeError, UnsupportedRankError
from .geometry import INTERIOR, OUTSIDE, Polytope, contains, convex_hull, is_subset
from .linalg import Vector, rat, sub, vec

MAX_CHAMBER_RANK = 2


@dataclass(frozen=True)
class Chamber:
    id: int
    dim: int
    cell: Polytope

    @property
    def vertices(self) -> tuple[Vector, ...]:
        return self.cell.vertices


@dataclass(frozen=True)
class ChamberComplex:
    P: Polytope
    chambers: tuple[Chamber, ...]
    face_poset: tuple[tuple[int, int], ...]  # (d, c): chamber d is a proper face of c

    def top(self) -> list[Chamber]:
        top_dim = self.P.dim
        return [c for c in self.chambers if c.dim == top_dim]

    def faces_of(self, c: int) -> list[Chamber]:
        return [self.chambers[d] for d, cc in self.face_poset if cc == c]

    def locate(self, r) -> Chamber:
        return locate(self, r)


def _sort_key(cell: Polytope):
    return (cell.dim, cell.vertices)


def _assemble(P: Polytope, cells: list[Polytope]) -> ChamberComplex:
    cells = sorted(set(cells), key=_sort_key)
    chambers = tuple(Chamber(i, c.dim, c) for i, c in enumerate(cells))
    poset = tuple(
        (d.id, c.id)
        for c in chambers
        for d in chambers
        if d.dim < c.dim and is_subset(d.cell, c.cell)
    )
    return ChamberComplex(P, chambers, poset)


@lru_cache(maxsize=None)
def build_chambers(ws: WeightSystem) -> ChamberComplex:
    if ws.k > MAX_CHAMBER_RANK:
        raise UnsupportedRankError(
            f"chamber complexes are implemented for rank <= {MAX_CHAMBER_RANK}, got {ws.k}"
        )
    P = ws.moment_polytope
    if ws.k == 1:
        values = sorted(set(ws.w(i)[0] for i in ws.labels))
        cells = [convex_hull([(v,)]) for v in values]
        cells += [convex_hull([(a,), (b,)]) for a, b in zip(values, values[1:])]
        return _assemble(P, cells)
    return _assemble(P, _planar_cells([ws.w(i) for i in ws.labels]))


def locate(cc: ChamberComplex, r) -> Chamber:
    """The minimal chamber containing ``r``."""
    r = vec(r) if not isinstance(r, (int, Fraction, str)) else (rat(r),)
    if contains(cc.P, r) == OUTSIDE:
        raise OutsidePolytopeError(f"point {tuple(str(x) for x in r)} lies outside the moment polytope")
    for ch in cc.chambers:  # sorted by dimension
        if contains(ch.cell, r) == INTERIOR:
            return ch
    raise AssertionError("chambers do not cover the moment polytope")


# ---------------------------------------------------------------------------
# Planar arrangement of segments, exact.


def _cross(o, a, b) -> Fraction:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _on_segment(p, a, b) -> bool:
    if _cross(a, b, p) != 0:
        return False
    return min(a[0], b[0]) <= p[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])


def _intersection(a, b, c, d):
    """Crossing point of segments ab and cd when they are not parallel."""
    r = sub(b, a)
    s = sub(d, c)
    denom = r[0] * s[1] - r[1] * s[0]
    if denom == 0:
        return None
    qp = sub(c, a)
    t = (qp[0] * s[1] - qp[1] * s[0]) / denom
    u = (qp[0] * r[1] - qp[1] * r[0]) / denom
    if 0 <= t <= 1 and 0 <= u <= 1:
        return (a[0] + t * r[0], a[1] + t * r[1])
    return None


def _angle_cmp(u, v) -> int:
    """Counter-clockwise order of direction vectors, starting from angle 0."""

    def half(p):
        return 0 if (p[1] > 0 or (p[1] == 0 and p[0] > 0)) else 1

    hu, hv = half(u), half(v)
    if hu != hv:
        return hu - hv
    c = u[0] * v[1] - u[1] * v[0]
    return -1 if c > 0 else (1 if c < 0 else 0)


def _planar_cells(points: list[Vector]) -> list[Polytope]:
    pts = sorted(set(points))
    segments = list(combinations(pts, 2))
    vertices = set(pts)
    for (a, b), (c, d) in combinations(segments, 2):
        x = _intersection(a, b, c, d)
        if x is not None:
            vertices.add(x)
    vertices = sorted(vertices)

    edges = set()
    for a, b in segments:
        on = [p for p in vertices if _on_segment(p, a, b)]
        on.sort()
        for p, q in zip(on, on[1:]):
            edges.add((p, q))

    nbrs: dict = {v: [] for v in vertices}
    for p, q in edges:
        nbrs[p].append(q)
        nbrs[q].append(p)
    for v in vertices:
        nbrs[v].sort(key=cmp_to_key(lambda a, b, v=v: _angle_cmp(sub(a, v), sub(b, v))))

    cells: list[Polytope] = [convex_hull([v]) for v in vertices]
    cells += [convex_hull([p, q]) for p, q in edges]

    visited = set()
    for p, q in edges:
        for start in ((p, q), (q, p)):
            if start in visited:
                continue
            cycle = []
            he = start
            while he not in visited:
                visited.add(he)
                cycle.append(he[0])
                u, v = he
                ring = nbrs[v]
                w = ring[(ring.index(u) - 1) % len(ring)]
                he = (v, w)
            area = sum(
                (cycle[i][0] * cycle[(i + 1) % len(cycle)][1] - cycle[(i + 1) % len(cycle)][0] * cycle[i][1])
                for i in range(len(cycle))
            )
            if area > 0:
                cells.append(convex_hull(cycle))
    return cells
