from __future__ import annotations

from fractions import Fraction

import pytest

from families import P2, P3, RANK_TWO

from chowlab.action import support_of
from chowlab.errors import PreconditionError
from chowlab.pts import check_collision_law, pts_block_separation, pts_torus_witness
from chowlab.series import GroupPath, TruncSeries, projective_limit

F = Fraction


def test_block_separation_instance():
    res = pts_block_separation(4, 2, 1, 1, [(2, 1), (3, 1)], order=3)
    assert res.rows() == ((1, 2, 1, 1), (1, 1, 0, 0))
    assert res.matches


def test_single_column_block_is_unchanged():
    res = pts_block_separation(3, 1, 2, 3, [(2, 1), (3, 1)])
    assert res.limit[0] == (F(2, 3), 1)
    assert res.limit[1:] == ((1, 0), (1, 0))


@pytest.mark.parametrize(
    "args",
    [
        (4, 2, 1, 1, [(2, 2), (3, 1)]),  # tail column on the block point
        (4, 2, 1, 0, [(2, 1), (3, 1)]),  # b = 0
        (5, 2, 1, 1, [(2, 1), (3, 1)]),  # m does not match
        (4, 2, 1, 1, [(2, 1), (4, 2)]),  # tail columns coincide
        (4, 2, 1, 1, [(0, 0), (3, 1)]),  # zero column
    ],
)
def test_block_separation_preconditions(args):
    with pytest.raises(PreconditionError):
        pts_block_separation(*args)


def test_collision_law_passes_on_the_instance():
    res = pts_block_separation(4, 2, 1, 1, [(2, 1), (3, 1)])
    verdict = check_collision_law(res.source, res.limit, [1, 2])
    assert verdict.ok and verdict.applies
    assert verdict.tree["components"] == {"x": [3, 4], "y": [1, 2]}


def test_collision_law_negative_control():
    x = [(1, 1), (1, 1), (2, 1), (3, 1)]
    y = [(1, 1), (2, 1), (1, 0), (5, 1)]
    verdict = check_collision_law(x, y, [1, 2])
    assert not verdict.ok and verdict.offending == (3, 4)


def test_collision_law_not_applicable_when_block_stays_together():
    x = [(1, 1), (1, 1), (2, 1), (3, 1)]
    y = [(1, 1), (1, 1), (2, 1), (3, 1)]
    verdict = check_collision_law(x, y, [1, 2])
    assert verdict.ok and not verdict.applies


def test_collision_law_needs_trivial_isotropy():
    with pytest.raises(PreconditionError):
        check_collision_law([(1, 1), (1, 1), (2, 1), (2, 1)], [(1, 1), (2, 1), (1, 0), (1, 0)], [1, 2])


def test_torus_witness_p2():
    w = pts_torus_witness(P2, (2, 3), (1, 3))
    assert w.phi_exponents == (1, 0, 0)
    assert w.g_exponent == (-1,)
    assert w.limit_support == (1, 3)
    # Replay: phi(t) = [t x : y : z], g(t) = t^-1 acting with weights (1, -1, 0).
    order = 6
    x = w.x
    phi = [TruncSeries.monomial(x[0], 1, order), TruncSeries.monomial(x[1], 0, order), TruncSeries.monomial(x[2], 0, order)]
    g = GroupPath.diagonal([-1, 1, 0], order)
    assert support_of(projective_limit(phi)) == (2, 3)
    assert projective_limit(g.apply(phi)) == w.limit
    assert w.limit == (x[0], 0, x[2])


def test_identity_witness():
    w = pts_torus_witness(P2, (2, 3), (2, 3))
    assert set(w.phi_exponents) == {0} and set(w.g_exponent) == {0}
    assert w.limit_support == (2, 3)


def test_no_witness_across_fibers():
    assert pts_torus_witness(P2, (1, 2), (2, 3)) is None


def test_p3_witness_uses_a_certified_lifting():
    from chowlab.chow import canonical_cells, verify_certificate

    w = pts_torus_witness(P3, (3, 4), (1, 4))
    assert w.cells == ((1, 4), (3, 4))
    assert verify_certificate(P3, canonical_cells(w.cells), w.lifting)
    assert (w.phi_limit_support, w.limit_support) == ((3, 4), (1, 4))


@pytest.mark.parametrize("ws", RANK_TWO[:4], ids=lambda ws: str(ws.weights))
def test_rank_two_witnesses_both_ways(ws):
    from itertools import combinations

    from chowlab.chow import enumerate_subdivisions

    poset = enumerate_subdivisions(ws)
    for i in poset.finest():
        for a, b in combinations(poset.elements[i].cells, 2):
            assert pts_torus_witness(ws, a, b, poset=poset).limit_support == b
            assert pts_torus_witness(ws, b, a, poset=poset).limit_support == a
