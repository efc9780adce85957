"""Labeled coherent subdivisions of the weight configuration.

A labeled subdivision is a family of supports (cells) whose orbit polytopes
tile the moment polytope and which arises from a lifting ``psi`` of the
labels: each cell is exactly the set of labels lying on one lower facet of
``{(w_i, psi_i)}``. These index the combinatorial types of Chow fibers.

Enumeration is an exact cover of the top chambers by full-dimensional
supports, pruned by label consistency on shared faces, followed by an exact
LP for coherence.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Sequence

from .action import Support, WeightSystem, make_support, orbit_dim, orbit_polytope, weight_in
from .chambers import ChamberComplex, build_chambers
from .errors import PreconditionError, ScaleCapError, UnsupportedRankError
from .geometry import OUTSIDE, contains, lattice_volume, relative_interior_point
from .linalg import Vector, dot, lattice_basis, minors_gcd, primitive_integer, rank, solve, sub
from .lp import lp_feasible

MAX_RANK = 2
MAX_N = 10

COHERENT = "coherent"
GEOMETRY_INVALID = "geometry-invalid"
LP_INFEASIBLE = "lp-infeasible"

Cells = tuple[Support, ...]


def canonical_cells(cells: Iterable[Iterable[int]]) -> Cells:
    return tuple(sorted(set(make_support(c) for c in cells)))


@dataclass(frozen=True)
class LabeledSubdivision:
    cells: Cells
    certificate: tuple[int, ...]  # integral lifting psi, one entry per label
    stratum_dim: int
    # Cell polytopes with labels forgotten, as sorted vertex tuples.
    geometric: tuple = field(default=(), compare=False, repr=False)

    def __str__(self) -> str:
        return "{" + ", ".join("{" + ",".join(map(str, c)) + "}" for c in self.cells) + "}"


@dataclass(frozen=True)
class SubdivisionPoset:
    ws: WeightSystem
    elements: tuple[LabeledSubdivision, ...]
    order: tuple[tuple[int, int], ...]  # (a, b): element b strictly refines element a

    def index(self, cells) -> int:
        cells = canonical_cells(cells)
        for i, s in enumerate(self.elements):
            if s.cells == cells:
                return i
        raise KeyError(cells)

    @property
    def minimum(self) -> int:
        lower = {b for _, b in self.order}
        mins = [i for i in range(len(self.elements)) if i not in lower]
        assert len(mins) == 1, mins
        return mins[0]

    def finest(self) -> list[int]:
        upper = {a for a, _ in self.order}
        return [i for i in range(len(self.elements)) if i not in upper]

    def covers(self) -> list[tuple[int, int]]:
        rel = set(self.order)
        return [
            (a, b)
            for a, b in self.order
            if not any((a, c) in rel and (c, b) in rel for c in range(len(self.elements)))
        ]


@dataclass(frozen=True)
class CoherenceResult:
    status: str
    certificate: tuple[int, ...] | None = None
    reason: str = ""

    def __bool__(self) -> bool:
        return self.status == COHERENT


def refines(fine: Cells, coarse: Cells) -> bool:
    """Each cell of ``fine`` is contained, as a label set, in a cell of ``coarse``."""
    return all(any(set(c) <= set(d) for d in coarse) for c in fine)


# ---------------------------------------------------------------------------
# Coherence


def _affine_row(w: Vector) -> list[Fraction]:
    return list(w) + [Fraction(1)]


def _coherence_system(ws: WeightSystem, cells: Cells):
    """LP in the cell affine functions only; psi is read off afterwards.

    Cell ``j`` gets an affine function with coefficients at offset
    ``j*(k+1)``. The first cell's function is fixed to zero (a global affine
    function can be subtracted from any lifting).
    """
    k = ws.k
    width = k + 1
    nv = (len(cells) - 1) * width
    first = {}
    for j, c in enumerate(cells):
        for i in c:
            first.setdefault(i, j)

    def ell(j: int, i: int) -> list[Fraction]:
        row = [Fraction(0)] * nv
        if j == 0:
            return row
        for t, x in enumerate(_affine_row(ws.w(i))):
            row[(j - 1) * width + t] = x
        return row

    cons = []
    for j, c in enumerate(cells):
        for i in ws.labels:
            if i not in first:
                continue
            diff = [a - b for a, b in zip(ell(j, i), ell(first[i], i))]
            if i in c:
                if j != first[i]:
                    cons.append((diff, "==", 0))
            else:
                cons.append((diff, "<", 0))
    return cons, nv, first


def _lift_from_affine(ws: WeightSystem, cells: Cells, x: Sequence[Fraction], first) -> list[Fraction]:
    k = ws.k
    width = k + 1

    def value(j, i):
        if j == 0:
            return Fraction(0)
        coeffs = x[(j - 1) * width : j * width]
        return dot(coeffs, _affine_row(ws.w(i)))

    psi = []
    for i in ws.labels:
        if i in first:
            psi.append(value(first[i], i))
        else:
            psi.append(max(value(j, i) for j in range(len(cells))) + 1)
    return psi


def verify_certificate(ws: WeightSystem, cells: Cells, psi: Sequence) -> bool:
    """Direct substitution: per-cell affine fit plus strict inequality off the cell."""
    psi = [Fraction(p) for p in psi]
    if len(psi) != ws.n + 1:
        return False
    for c in cells:
        fit = solve([_affine_row(ws.w(i)) for i in c], [psi[i - 1] for i in c])
        if fit is None:
            return False
        for i in ws.labels:
            if i not in c and not dot(fit, _affine_row(ws.w(i))) < psi[i - 1]:
                return False
    return True


def _check_rank(ws: WeightSystem) -> None:
    if ws.k > MAX_RANK:
        raise UnsupportedRankError(f"subdivisions are implemented for rank <= {MAX_RANK}, got {ws.k}")
    if ws.n > MAX_N:
        raise ScaleCapError(f"n = {ws.n} exceeds the enumeration cap n <= {MAX_N}")


def _top_cover(ws: WeightSystem, s: Support) -> frozenset[int]:
    cc = build_chambers(ws)
    poly = orbit_polytope(ws, s)
    return frozenset(
        ch.id for ch in cc.top() if contains(poly, relative_interior_point(ch.cell)) != OUTSIDE
    )


def _geometry_problem(ws: WeightSystem, cells: Cells) -> str:
    if not cells:
        return "empty cell family"
    for c in cells:
        if c[-1] > ws.n + 1:
            return f"cell {c} has labels out of range"
        if orbit_dim(ws, c) != ws.k:
            return f"cell {c} is not {ws.k}-dimensional"
    top = {ch.id for ch in build_chambers(ws).top()}
    seen: dict[int, Support] = {}
    for c in cells:
        for ch in _top_cover(ws, c):
            if ch in seen:
                return f"cells {seen[ch]} and {c} overlap"
            seen[ch] = c
    if set(seen) != top:
        return "cells do not cover the moment polytope"
    return ""


def is_coherent(ws: WeightSystem, cells) -> CoherenceResult:
    _check_rank(ws)
    cells = canonical_cells(cells)
    problem = _geometry_problem(ws, cells)
    if problem:
        return CoherenceResult(GEOMETRY_INVALID, reason=problem)
    cert = _certificate(ws, cells)
    if cert is None:
        return CoherenceResult(LP_INFEASIBLE, reason="no lifting realizes these cells")
    return CoherenceResult(COHERENT, cert)


def _certificate(ws: WeightSystem, cells: Cells) -> tuple[int, ...] | None:
    cons, nv, first = _coherence_system(ws, cells)
    res = lp_feasible(cons, nv)
    if not res:
        return None
    psi = _lift_from_affine(ws, cells, res.point, first)
    cert = primitive_integer(psi) if any(psi) else tuple(0 for _ in psi)
    if not verify_certificate(ws, cells, cert):
        raise ArithmeticError(f"certificate for {cells} failed re-verification")
    return cert


# ---------------------------------------------------------------------------
# Invariants of a single subdivision


def stratum_dim(ws: WeightSystem, cells) -> int:
    """Codimension of the liftings that are affine on every cell."""
    cells = canonical_cells(cells)
    m = ws.n + 1
    width = ws.k + 1
    nv = m + len(cells) * width
    rows = []
    for j, c in enumerate(cells):
        for i in c:
            row = [Fraction(0)] * nv
            row[i - 1] = Fraction(1)
            for t, x in enumerate(_affine_row(ws.w(i))):
                row[m + j * width + t] = -x
            rows.append(row)
    nullity = nv - rank(rows) if rows else nv
    return m - nullity


def cell_multiplicity(ws: WeightSystem, s: Support) -> int:
    """Index of the difference lattice of ``s`` in its saturation."""
    diffs = [tuple(a - b for a, b in zip(ws.weights[i - 1], ws.weights[s[0] - 1])) for i in s[1:]]
    return minors_gcd(diffs)


def own_lattice_volume(ws: WeightSystem, s: Support) -> int:
    diffs = [tuple(a - b for a, b in zip(ws.weights[i - 1], ws.weights[s[0] - 1])) for i in s[1:]]
    return lattice_volume(orbit_polytope(ws, s), lattice_basis(diffs))


@dataclass(frozen=True)
class FiberCycle:
    cells: Cells
    components: tuple[tuple[Support, int], ...]
    degree: int


def fiber_cycle(ws: WeightSystem, cells, poset: SubdivisionPoset | None = None) -> FiberCycle:
    cells = canonical_cells(cells)
    poset = poset or enumerate_subdivisions(ws)
    i = poset.index(cells)
    if i not in poset.finest():
        raise PreconditionError(f"{cells} is not a finest subdivision")
    comps = []
    degree = 0
    for s in cells:
        m = cell_multiplicity(ws, s)
        own = own_lattice_volume(ws, s)
        ambient = lattice_volume(orbit_polytope(ws, s))
        if ambient != m * own:
            raise ArithmeticError(f"multiplicity of {s} disagrees with its volume ratio")
        comps.append((s, m))
        degree += m * own
    return FiberCycle(cells, tuple(comps), degree)


# ---------------------------------------------------------------------------
# Enumeration


def _label_consistent(ws: WeightSystem, a: Support, b: Support) -> bool:
    # A label whose weight lies in both cell polytopes sits on the shared
    # face; the two affine pieces agree there, so membership must agree.
    for i in ws.labels:
        if weight_in(ws, a, i) and weight_in(ws, b, i) and ((i in a) != (i in b)):
            return False
    return True


def _candidate_cells(ws: WeightSystem):
    from .action import all_supports

    out = []
    for s in all_supports(ws):
        if len(s) > ws.k and orbit_dim(ws, s) == ws.k:
            out.append((s, _top_cover(ws, s)))
    return out


def _exact_covers(ws: WeightSystem):
    top = sorted(ch.id for ch in build_chambers(ws).top())
    cands = _candidate_cells(ws)
    by_chamber: dict[int, list] = {t: [] for t in top}
    for s, cover in cands:
        for t in cover:
            by_chamber[t].append((s, cover))

    results = []

    def extend(chosen: list, covered: frozenset):
        missing = next((t for t in top if t not in covered), None)
        if missing is None:
            results.append(tuple(sorted(s for s, _ in chosen)))
            return
        for s, cover in by_chamber[missing]:
            if cover & covered:
                continue
            if all(_label_consistent(ws, s, t) for t, _ in chosen):
                chosen.append((s, cover))
                extend(chosen, covered | cover)
                chosen.pop()

    extend([], frozenset())
    return results


def _shadow(ws: WeightSystem, cells: Cells) -> tuple:
    return tuple(sorted(orbit_polytope(ws, c).key for c in cells))


@lru_cache(maxsize=None)
def enumerate_subdivisions(ws: WeightSystem) -> SubdivisionPoset:
    """All labeled coherent subdivisions, ordered from coarse to fine."""
    _check_rank(ws)
    found = []
    for cells in _exact_covers(ws):
        cert = _certificate(ws, cells)
        if cert is not None:
            found.append(LabeledSubdivision(cells, cert, stratum_dim(ws, cells), _shadow(ws, cells)))
    found.sort(key=lambda s: (-s.stratum_dim, len(s.cells), s.cells))
    elems = tuple(found)
    order = tuple(
        (a, b)
        for a in range(len(elems))
        for b in range(len(elems))
        if a != b and refines(elems[b].cells, elems[a].cells)
    )
    return SubdivisionPoset(ws, elems, order)


# ---------------------------------------------------------------------------
# Fiber-level oracles


@dataclass(frozen=True)
class SameFiber:
    same: bool
    witness: LabeledSubdivision | None = None

    def __bool__(self) -> bool:
        return self.same


def same_chow_fiber(ws: WeightSystem, s1, s2, poset: SubdivisionPoset | None = None) -> SameFiber:
    s1, s2 = make_support(s1, ws), make_support(s2, ws)
    for s in (s1, s2):
        if orbit_dim(ws, s) != ws.k:
            raise PreconditionError(f"orbit of support {s} is not of full dimension {ws.k}")
    poset = poset or enumerate_subdivisions(ws)
    # Prefer the finest witness: its cells are the generic Chow-fiber components.
    for sub_ in reversed(poset.elements):
        if s1 in sub_.cells and s2 in sub_.cells:
            return SameFiber(True, sub_)
    return SameFiber(False)


@dataclass(frozen=True)
class InjectivityReport:
    ok: bool
    collisions: tuple[tuple[Cells, Cells], ...]


def check_support_injectivity(ws: WeightSystem, poset: SubdivisionPoset | None = None) -> InjectivityReport:
    """Distinct finest subdivisions must have distinct component supports."""
    poset = poset or enumerate_subdivisions(ws)
    finest = [poset.elements[i] for i in poset.finest()]
    cycles = [fiber_cycle(ws, s.cells, poset) for s in finest]
    collisions = tuple(
        (a.cells, b.cells)
        for a, b in combinations(cycles, 2)
        if {s for s, _ in a.components} == {s for s, _ in b.components}
    )
    return InjectivityReport(not collisions, collisions)


@dataclass(frozen=True)
class Separation:
    first: Cells
    second: Cells
    chamber: int | None
    cells: tuple[Support, Support] | None


@dataclass(frozen=True)
class SeparationReport:
    ok: bool
    pairs: tuple[Separation, ...]


def cell_over(ws: WeightSystem, cells: Cells, chamber_id: int) -> Support:
    """The unique cell whose polytope contains the given top chamber."""
    hits = [c for c in cells if chamber_id in _top_cover(ws, c)]
    if len(hits) != 1:
        raise AssertionError(f"chamber {chamber_id} is covered by {hits}")
    return hits[0]


def separation_check(
    ws: WeightSystem, cc: ChamberComplex | None = None, poset: SubdivisionPoset | None = None
) -> SeparationReport:
    cc = cc or build_chambers(ws)
    poset = poset or enumerate_subdivisions(ws)
    finest = [poset.elements[i].cells for i in poset.finest()]
    top = [ch.id for ch in cc.top()]
    pairs = []
    for a, b in combinations(finest, 2):
        sep = Separation(a, b, None, None)
        for t in top:
            ca, cb = cell_over(ws, a, t), cell_over(ws, b, t)
            if ca != cb:
                sep = Separation(a, b, t, (ca, cb))
                break
        pairs.append(sep)
    return SeparationReport(all(p.chamber is not None for p in pairs), tuple(pairs))


def polytope_volume(ws: WeightSystem) -> int:
    return lattice_volume(ws.moment_polytope)
