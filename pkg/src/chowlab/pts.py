"""Perturb, translate, specialize: limits ``lim_{t->0} g(t) . phi(t)`` computed exactly.

Two settings are covered:

* configurations of points on the projective line, where a block of
  coincident points is pulled apart by an inversion-type path in PGL(2)
  and the remaining points collide (:func:`pts_block_separation`,
  :func:`check_collision_law`);
* the torus acting on projective space, where a witness pair
  ``(phi, g)`` is read off the lifting that certifies a common subdivision
  (:func:`pts_torus_witness`).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .action import Support, WeightSystem, make_support, orbit_dim, support_of
from .chow import SubdivisionPoset, _affine_row, enumerate_subdivisions, same_chow_fiber
from .errors import PreconditionError
from .linalg import dot, primitive_integer, rat, solve
from .series import (
    DEFAULT_ORDER,
    GroupPath,
    TruncSeries,
    constant,
    exp_series,
    normalize,
    projective_limit,
    proportional,
)

Point = tuple[Fraction, ...]


# ---------------------------------------------------------------------------
# Points on the projective line


@dataclass(frozen=True)
class BlockSeparation:
    limit: tuple[Point, ...]  # normalized: last nonzero coordinate 1
    expected: tuple[Point, ...]
    source: tuple[Point, ...]

    @property
    def matches(self) -> bool:
        return self.limit == self.expected

    def rows(self) -> tuple[tuple[Fraction, ...], tuple[Fraction, ...]]:
        return tuple(p[0] for p in self.limit), tuple(p[1] for p in self.limit)


def pts_block_separation(m: int, j: int, a, b, tail: Sequence[Sequence], order: int = DEFAULT_ORDER) -> BlockSeparation:
    """Separate ``j`` coincident points ``[a:b]`` and collapse the others.

    The column ``c <= j`` is perturbed to ``[e^{ct} a : b]``; the path is
    ``g(t) = [[1/t, -(a/b)/t], [0, 1]]``.
    """
    a, b = rat(a), rat(b)
    tail = [(rat(x), rat(y)) for x, y in tail]
    if b == 0:
        raise PreconditionError("b must be nonzero")
    if order < 2:
        raise PreconditionError("truncation order must be at least 2")
    if j < 1 or m != j + len(tail):
        raise PreconditionError(f"m = {m} must equal j + len(tail) = {j} + {len(tail)}")
    for p in tail:
        if p == (0, 0):
            raise PreconditionError("zero column in the tail")
        if proportional(p, (a, b)):
            raise PreconditionError(f"tail column {p} coincides with the block point [a:b]")
    for p, q in combinations(tail, 2):
        if proportional(p, q):
            raise PreconditionError(f"tail columns {p} and {q} coincide")

    t_inv = TruncSeries.monomial(1, -1, order)
    g = GroupPath(
        (
            (t_inv, t_inv * (-a / b)),
            (TruncSeries.zero(order), constant(1, order)),
        )
    )
    phi = [(exp_series(c, order) * a, constant(b, order)) for c in range(1, j + 1)]
    phi += [(constant(x, order), constant(y, order)) for x, y in tail]
    limit = tuple(normalize(projective_limit(g.apply(col))) for col in phi)
    expected = tuple(normalize((c * a, b)) for c in range(1, j + 1)) + tuple(
        (Fraction(1), Fraction(0)) for _ in tail
    )
    source = tuple([(a, b)] * j + tail)
    return BlockSeparation(limit, expected, source)


@dataclass(frozen=True)
class CollisionVerdict:
    ok: bool
    applies: bool  # False when y_J is not pairwise distinct (nothing to check)
    offending: tuple[int, int] | None
    tree: dict


def _distinct_count(points: Sequence[Point]) -> int:
    return len({normalize(p) for p in points})


def check_collision_law(x: Sequence[Sequence], y: Sequence[Sequence], J: Sequence[int]) -> CollisionVerdict:
    """If the ``J`` points of a limit are pulled apart, the others must collide.

    ``x`` is a configuration on the projective line whose ``J`` points
    coincide and whose other points are distinct; ``y`` is a limit of a
    perturbed and translated copy. Indices are 1-based.
    """
    x = [tuple(rat(c) for c in p) for p in x]
    y = [tuple(rat(c) for c in p) for p in y]
    m = len(x)
    if len(y) != m:
        raise PreconditionError("x and y have different lengths")
    J = sorted(set(J))
    if len(J) < 2 or J[0] < 1 or J[-1] > m:
        raise PreconditionError("J needs at least two indices in 1..m")
    Jc = [i for i in range(1, m + 1) if i not in J]
    if not Jc:
        raise PreconditionError("J must leave at least one index outside")
    if _distinct_count(x) < 3:
        raise PreconditionError("x needs at least three distinct points (trivial isotropy)")
    if _distinct_count([x[i - 1] for i in J]) != 1:
        raise PreconditionError("the J points of x must coincide")
    if _distinct_count([x[i - 1] for i in Jc]) != len(Jc):
        raise PreconditionError("the points of x outside J must be distinct")

    tree = {"components": {"x": Jc, "y": J}, "edges": [["x", "y"]]}
    if _distinct_count([y[i - 1] for i in J]) != len(J):
        return CollisionVerdict(True, False, None, tree)
    for p, q in combinations(Jc, 2):
        if not proportional(y[p - 1], y[q - 1]):
            return CollisionVerdict(False, True, (p, q), tree)
    return CollisionVerdict(True, True, None, tree)


# ---------------------------------------------------------------------------
# Torus on projective space


@dataclass(frozen=True)
class TorusWitness:
    s1: Support
    s2: Support
    cells: tuple[Support, ...]
    lifting: tuple[int, ...]
    phi_exponents: tuple[int, ...]  # phi(t)_i = x_i t^{e_i}
    g_exponent: tuple[int, ...]  # g(t) = t^c acting by t^{<c, w_i>}
    x: tuple[Fraction, ...]
    phi_limit_support: Support
    limit_support: Support
    limit: tuple[Fraction, ...]


def _cell_affine(ws: WeightSystem, cell: Support, psi: Sequence[Fraction]) -> tuple[Fraction, ...]:
    fit = solve([_affine_row(ws.w(i)) for i in cell], [psi[i - 1] for i in cell])
    if fit is None:
        raise AssertionError(f"lifting is not affine on cell {cell}")
    return fit


def pts_torus_witness(
    ws: WeightSystem,
    s1,
    s2,
    seed: int = 0,
    order: int = DEFAULT_ORDER,
    poset: SubdivisionPoset | None = None,
) -> TorusWitness | None:
    """A path ``g(t) . phi(t)`` with ``phi(0)`` of support ``s1`` and limit of support ``s2``."""
    s1, s2 = make_support(s1, ws), make_support(s2, ws)
    for s in (s1, s2):
        if orbit_dim(ws, s) != ws.k:
            raise PreconditionError(f"orbit of support {s} is not of full dimension {ws.k}")
    poset = poset or enumerate_subdivisions(ws)
    fiber = same_chow_fiber(ws, s1, s2, poset)
    if not fiber:
        return None
    rng = random.Random(f"witness:{seed}")
    x = tuple(Fraction(rng.choice([-1, 1]) * rng.randint(1, 9), rng.randint(1, 9)) for _ in ws.labels)
    m = ws.n + 1

    if s1 == s2:
        exps = (0,) * m
        c = (0,) * ws.k
        cells = (s1,)
        psi = (0,) * m
        x = tuple(xi if i + 1 in s1 else Fraction(0) for i, xi in enumerate(x))
    else:
        cells = fiber.witness.cells
        psi = [Fraction(p) for p in fiber.witness.certificate]
        f1 = _cell_affine(ws, s1, psi)
        f2 = _cell_affine(ws, s2, psi)
        e = [psi[i - 1] - dot(f1, _affine_row(ws.w(i))) for i in ws.labels]
        cvec = [f1[a] - f2[a] for a in range(ws.k)]
        ints = primitive_integer(e + cvec)
        exps, c = ints[:m], ints[m:]
        psi = tuple(fiber.witness.certificate)

    phi = [TruncSeries.monomial(xi, ei, order) for xi, ei in zip(x, exps)]
    g = GroupPath.diagonal([sum(ca * wa for ca, wa in zip(c, ws.weights[i])) for i in range(m)], order)
    start = projective_limit(phi)
    limit = projective_limit(g.apply(phi))
    w = TorusWitness(
        s1, s2, tuple(cells), tuple(psi), tuple(exps), tuple(c), x,
        support_of(start), support_of(limit), limit,
    )
    if w.phi_limit_support != s1 or w.limit_support != s2:
        raise AssertionError(f"witness limits have supports {w.phi_limit_support}, {w.limit_support}")
    return w
