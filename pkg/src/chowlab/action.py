"""Torus actions on projective space given by integer weight matrices.

Label ``i`` (1-based) is the homogeneous coordinate ``x_i``; the torus
element ``lam`` acts by ``x_i -> lam^{w_i} x_i``. A *support* is a sorted
tuple of labels: the set of nonzero coordinates of a point, which fixes the
orbit type, its orbit polytope, and the orbits in its closure.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Iterator, Sequence

from .errors import InputError
from .geometry import OUTSIDE, Polytope, contains, convex_hull
from .linalg import Vector, dot, rank, rat, sub

Support = tuple[int, ...]


@dataclass(frozen=True)
class WeightSystem:
    weights: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        ws = self.weights
        if len(ws) < 2:
            raise InputError("need at least two coordinates (n >= 1)")
        k = len(ws[0])
        if k < 1 or any(len(w) != k for w in ws):
            raise InputError("weight vectors must share one positive length")
        if any(not isinstance(c, int) or isinstance(c, bool) for w in ws for c in w):
            raise InputError("weights must be integers")
        if rank([sub(w, ws[0]) for w in ws[1:]]) != k:
            raise InputError("weight differences must span Q^k (generically free action)")

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[int]]) -> "WeightSystem":
        return cls(tuple(tuple(int(c) for c in r) for r in rows))

    @classmethod
    def of(cls, *weights) -> "WeightSystem":
        """Rank-one shorthand: ``WeightSystem.of(1, -1, 0)``."""
        return cls(tuple((int(w),) for w in weights))

    @property
    def k(self) -> int:
        return len(self.weights[0])

    @property
    def n(self) -> int:
        return len(self.weights) - 1

    @property
    def labels(self) -> Support:
        return tuple(range(1, self.n + 2))

    def w(self, i: int) -> Vector:
        return tuple(Fraction(c) for c in self.weights[i - 1])

    @property
    def moment_polytope(self) -> Polytope:
        return orbit_polytope(self, self.labels)


def make_support(labels: Iterable[int], ws: WeightSystem | None = None) -> Support:
    s = tuple(sorted(set(int(i) for i in labels)))
    if not s:
        raise InputError("a support must be nonempty")
    if ws is not None and (s[0] < 1 or s[-1] > ws.n + 1):
        raise InputError(f"labels {s} out of range 1..{ws.n + 1}")
    return s


def all_supports(ws: WeightSystem) -> Iterator[Support]:
    labels = ws.labels
    for size in range(1, len(labels) + 1):
        yield from combinations(labels, size)


def proj_point(coords: Sequence) -> Vector:
    x = tuple(rat(c) for c in coords)
    if all(c == 0 for c in x):
        raise InputError("projective point with all coordinates zero")
    return x


def support_of(x: Sequence) -> Support:
    return tuple(i + 1 for i, c in enumerate(x) if c != 0)


def moment_value(ws: WeightSystem, x: Sequence) -> Vector:
    """Moment map with squared real coordinates in place of |x_i|^2."""
    x = proj_point(x)
    if len(x) != ws.n + 1:
        raise InputError("point and weight system have different lengths")
    norm = sum(c * c for c in x)
    return tuple(
        sum(x[i] * x[i] * ws.weights[i][a] for i in range(len(x))) / norm
        for a in range(ws.k)
    )


@lru_cache(maxsize=None)
def orbit_polytope(ws: WeightSystem, s: Support) -> Polytope:
    return convex_hull(ws.w(i) for i in s)


def orbit_dim(ws: WeightSystem, s: Support) -> int:
    return rank([sub(ws.w(i), ws.w(s[0])) for i in s[1:]]) if len(s) > 1 else 0


@lru_cache(maxsize=None)
def closure_supports(ws: WeightSystem, s: Support) -> frozenset[Support]:
    """Supports of the orbits lying in the closure of an orbit of support ``s``."""
    poly = orbit_polytope(ws, s)
    lat = poly.face_lattice
    out = set()
    for face in lat.faces:
        defining = [f for f, fv in zip(poly.facets, poly.facet_vertices) if face <= fv]
        out.add(tuple(i for i in s if all(dot(a, ws.w(i)) == b for a, b in defining)))
    return frozenset(out)


def weight_in(ws: WeightSystem, s: Support, i: int) -> bool:
    return contains(orbit_polytope(ws, s), ws.w(i)) != OUTSIDE
