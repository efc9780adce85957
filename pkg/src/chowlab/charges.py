"""Admissible momentum charges on geometric subdivisions and stable orbit types.

A charge assignment picks, for every cell ``D`` of every geometric
subdivision ``S``, a rational point ``gamma_S(D)`` in the interior of ``D``
such that

* principal: the trivial subdivision's only cell carries the principal charge ``r``;
* local-main: if ``S`` refines ``S'``, ``D`` lies in ``D'`` and ``gamma_{S'}(D')``
  lies in ``D``, then ``gamma_S(D) = gamma_{S'}(D')``;
* compatibility: a cell shared by two subdivisions gets one charge.

Cells are processed from large to small, so every cell that could force a
charge onto ``D`` is settled before ``D`` is; unforced cells get a fresh
point off every chamber wall.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .action import Support, WeightSystem, all_supports, orbit_dim, orbit_polytope
from .chambers import build_chambers, locate
from .chow import SubdivisionPoset, enumerate_subdivisions
from .errors import ChargeAssignmentError, OutsidePolytopeError
from .geometry import INTERIOR, OUTSIDE, Polytope, contains, is_subset, lattice_volume
from .git import ReductionStrata
from .linalg import Vector, vec

MAX_ATTEMPTS = 16
MAX_DRAWS = 64

PRINCIPAL = "principal"
LOCAL_MAIN = "local-main"
COMPATIBILITY = "compatibility"
DOMAIN = "domain"

CellKey = tuple[Vector, ...]
GeoSubdivision = tuple[CellKey, ...]


@dataclass(frozen=True)
class GeometricPoset:
    subdivisions: tuple[GeoSubdivision, ...]
    order: tuple[tuple[int, int], ...]  # (a, b): b refines a, a != b
    labeled_count: tuple[int, ...]  # labeled subdivisions with this shadow
    cells: dict  # CellKey -> Polytope

    @property
    def trivial(self) -> int:
        lower = {b for _, b in self.order}
        return next(i for i in range(len(self.subdivisions)) if i not in lower)


def geometric_poset(ws: WeightSystem, poset: SubdivisionPoset | None = None) -> GeometricPoset:
    poset = poset or enumerate_subdivisions(ws)
    cells: dict = {}
    counts: dict[GeoSubdivision, int] = {}
    for sub in poset.elements:
        for s in sub.cells:
            poly = orbit_polytope(ws, s)
            cells[poly.key] = poly
        counts[sub.geometric] = counts.get(sub.geometric, 0) + 1
    subs = sorted(counts, key=lambda g: (len(g), g))
    order = tuple(
        (a, b)
        for a in range(len(subs))
        for b in range(len(subs))
        if a != b and all(any(is_subset(cells[d], cells[e]) for e in subs[a]) for d in subs[b])
    )
    return GeometricPoset(tuple(subs), order, tuple(counts[g] for g in subs), cells)


@dataclass(frozen=True)
class ChargeAssignment:
    principal: Vector
    seed: int
    attempt: int
    geo: GeometricPoset
    charges: dict  # (subdivision index, CellKey) -> Vector

    def gamma(self, s: int, cell: CellKey) -> Vector:
        return self.charges[(s, cell)]

    def values(self, s: int) -> set[Vector]:
        return {self.charges[(s, d)] for d in self.geo.subdivisions[s]}

    def with_charge(self, s: int, cell: CellKey, point) -> "ChargeAssignment":
        new = dict(self.charges)
        new[(s, cell)] = _as_point(point)
        return ChargeAssignment(self.principal, self.seed, self.attempt, self.geo, new)


def _as_point(r) -> Vector:
    if isinstance(r, (int, Fraction, str)):
        return vec([r])
    return vec(r)


def _generic(ws: WeightSystem, p: Vector) -> bool:
    """True when ``p`` lies in the interior of a top chamber."""
    cc = build_chambers(ws)
    try:
        return locate(cc, p).dim == ws.k
    except OutsidePolytopeError:
        return False


def _fresh_point(ws: WeightSystem, cell: Polytope, taken: set, rng: random.Random | None) -> Vector:
    verts = cell.vertices
    n = len(verts)
    for draw in range(MAX_DRAWS):
        if rng is None and draw == 0:
            weights = [1] * n  # the plain centroid first
        else:
            rng = rng or random.Random(0)
            weights = [rng.randint(1, 9) for _ in verts]
        total = sum(weights)
        p = tuple(sum(Fraction(c) * v[a] for c, v in zip(weights, verts)) / total for a in range(ws.k))
        if p not in taken and contains(cell, p) == INTERIOR and _generic(ws, p):
            return p
    raise ChargeAssignmentError(f"no generic interior point found in {cell}")


def _try_assign(ws: WeightSystem, geo: GeometricPoset, r: Vector, rng) -> dict:
    cells = geo.cells
    # Cells containing D' in a coarser subdivision, for each cell D.
    coarser: dict[CellKey, set[CellKey]] = {}
    for a, b in geo.order:
        for d in geo.subdivisions[b]:
            for e in geo.subdivisions[a]:
                if d != e and is_subset(cells[d], cells[e]):
                    coarser.setdefault(d, set()).add(e)
    order = sorted(cells, key=lambda key: (-lattice_volume(cells[key]), key))
    top = geo.subdivisions[geo.trivial][0]
    value: dict[CellKey, Vector] = {}
    for d in order:
        if d == top:
            value[d] = r
            continue
        forced = {
            value[e] for e in coarser.get(d, ()) if contains(cells[d], value[e]) != OUTSIDE
        }
        if len(forced) > 1:
            a, b = sorted(forced)[:2]
            raise _Conflict(d, a, b)
        if forced:
            value[d] = forced.pop()
        else:
            value[d] = _fresh_point(ws, cells[d], set(value.values()), rng)
    return {(i, d): value[d] for i, sub in enumerate(geo.subdivisions) for d in sub}


class _Conflict(Exception):
    def __init__(self, cell, a, b):
        super().__init__(cell, a, b)
        self.cell, self.a, self.b = cell, a, b


def assign_charges(
    ws: WeightSystem, r, seed: int = 0, poset: SubdivisionPoset | None = None
) -> ChargeAssignment:
    r = _as_point(r)
    if not _generic(ws, r):
        raise OutsidePolytopeError("the principal charge must lie in the interior of a top chamber")
    geo = geometric_poset(ws, poset)
    last = None
    for attempt in range(MAX_ATTEMPTS):
        rng = None if attempt == 0 else random.Random(f"{seed}:{attempt}")
        try:
            charges = _try_assign(ws, geo, r, rng)
        except _Conflict as c:
            last = c
            continue
        return ChargeAssignment(r, seed, attempt, geo, charges)
    raise ChargeAssignmentError(
        f"charges {last.a} and {last.b} are both forced into cell {last.cell} "
        f"after {MAX_ATTEMPTS} attempts"
    )


@dataclass(frozen=True)
class Violation:
    clause: str
    subdivisions: tuple[int, ...]
    cells: tuple[CellKey, ...]
    detail: str = ""


def validate_charges(gamma: ChargeAssignment) -> list[Violation]:
    geo = gamma.geo
    cells = geo.cells
    out: list[Violation] = []
    for i, sub in enumerate(geo.subdivisions):
        for d in sub:
            p = gamma.charges.get((i, d))
            if p is None or contains(cells[d], p) != INTERIOR:
                out.append(Violation(DOMAIN, (i,), (d,), "charge missing or not interior"))
    t = geo.trivial
    top = geo.subdivisions[t][0]
    if gamma.charges.get((t, top)) != gamma.principal:
        out.append(Violation(PRINCIPAL, (t,), (top,), "main cell does not carry r"))
    for a, b in geo.order:
        for d in geo.subdivisions[b]:
            for e in geo.subdivisions[a]:
                g = gamma.charges.get((a, e))
                if g is None or not is_subset(cells[d], cells[e]) or contains(cells[d], g) == OUTSIDE:
                    continue
                if gamma.charges.get((b, d)) != g:
                    out.append(Violation(LOCAL_MAIN, (b, a), (d, e), "inherited charge not kept"))
    seen: dict[CellKey, tuple[int, Vector]] = {}
    for (i, d), p in sorted(gamma.charges.items()):
        if d in seen and seen[d][1] != p:
            out.append(Violation(COMPATIBILITY, (seen[d][0], i), (d,), "shared cell, different charges"))
        seen.setdefault(d, (i, p))
    return out


@dataclass(frozen=True)
class OrbitCell:
    cell: CellKey
    charge: Vector
    supports: tuple[Support, ...]
    principal: bool


@dataclass(frozen=True)
class StableOrbitType:
    subdivision: int
    cells: tuple[OrbitCell, ...]
    labeled_multiplicity: int

    @property
    def principal_cell(self) -> OrbitCell:
        return next(c for c in self.cells if c.principal)

    @property
    def bubbles(self) -> tuple[OrbitCell, ...]:
        return tuple(c for c in self.cells if not c.principal)


def _supports_with_polytope(ws: WeightSystem, key: CellKey) -> tuple[Support, ...]:
    found = [s for s in all_supports(ws) if orbit_dim(ws, s) == ws.k and orbit_polytope(ws, s).key == key]
    return tuple(sorted(found, key=lambda s: (-len(s), s)))


def stable_orbit_types(ws: WeightSystem, gamma: ChargeAssignment) -> list[StableOrbitType]:
    bad = validate_charges(gamma)
    if bad:
        raise ChargeAssignmentError(f"charge assignment violates {bad[0].clause}: {bad[0].detail}")
    geo = gamma.geo
    out = []
    for i, sub in enumerate(geo.subdivisions):
        cells = []
        for d in sub:
            p = gamma.gamma(i, d)
            cells.append(OrbitCell(d, p, _supports_with_polytope(ws, d), p == gamma.principal))
        if sum(c.principal for c in cells) != 1:
            raise AssertionError(f"subdivision {i} has no unique principal cell")
        out.append(StableOrbitType(i, tuple(cells), geo.labeled_count[i]))
    return out


def forgetful_to_principal(t: StableOrbitType, strata: ReductionStrata) -> CellKey:
    """The reduction stratum of the principal orbit, bubbles forgotten."""
    key = t.principal_cell.cell
    if key not in strata.strata:
        raise AssertionError("principal cell is not a stratum at r")
    if strata.r != t.principal_cell.charge:
        raise ValueError("strata were computed at a different charge")
    return key
