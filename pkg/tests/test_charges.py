from __future__ import annotations

from fractions import Fraction

import pytest

from families import P1, P2, P3, RANK_TWO

from chowlab.charges import (
    COMPATIBILITY,
    LOCAL_MAIN,
    PRINCIPAL,
    assign_charges,
    forgetful_to_principal,
    geometric_poset,
    stable_orbit_types,
    validate_charges,
)
from chowlab.errors import ChargeAssignmentError, OutsidePolytopeError
from chowlab.git import reduction_strata

F = Fraction
LEFT = ((F(-1),), (F(0),))
RIGHT = ((F(0),), (F(1),))
WHOLE = ((F(-1),), (F(1),))


def _by_cell(gamma):
    return {(len(gamma.geo.subdivisions[i]), d): p for (i, d), p in gamma.charges.items()}


@pytest.mark.parametrize("ws", [P2, P3], ids=["p2", "p3"])
def test_charges_on_the_interval(ws):
    gamma = assign_charges(ws, F(-1, 2))
    got = _by_cell(gamma)
    assert got == {
        (1, WHOLE): (F(-1, 2),),
        (2, LEFT): (F(-1, 2),),
        (2, RIGHT): (F(1, 2),),
    }
    assert validate_charges(gamma) == []


def test_trivial_only_system():
    gamma = assign_charges(P1, F(1, 3))
    assert gamma.charges == {(0, ((F(0),), (F(1),))): (F(1, 3),)}
    assert len(stable_orbit_types(P1, gamma)) == 1


def test_principal_must_be_generic():
    with pytest.raises(OutsidePolytopeError):
        assign_charges(P2, 0)
    with pytest.raises(OutsidePolytopeError):
        assign_charges(P2, 2)


def test_mutations_are_caught():
    gamma = assign_charges(P2, F(-1, 2))
    split = next(i for i, s in enumerate(gamma.geo.subdivisions) if len(s) == 2)
    trivial = gamma.geo.trivial

    bad = gamma.with_charge(split, LEFT, F(-1, 4))
    assert LOCAL_MAIN in {v.clause for v in validate_charges(bad)}

    bad = gamma.with_charge(trivial, WHOLE, F(1, 4))
    assert PRINCIPAL in {v.clause for v in validate_charges(bad)}


def test_shared_cell_with_two_charges():
    from chowlab.action import WeightSystem

    ws = WeightSystem.of(-1, 0, 1, 2)
    gamma = assign_charges(ws, F(-1, 2))
    owners = {}
    for i, sub in enumerate(gamma.geo.subdivisions):
        for d in sub:
            owners.setdefault(d, []).append(i)
    cell = ((F(1),), (F(2),))
    assert len(owners[cell]) >= 2
    first, second = owners[cell][:2]
    bad = gamma.with_charge(first, cell, F(3, 2)).with_charge(second, cell, F(4, 3))
    assert COMPATIBILITY in {v.clause for v in validate_charges(bad)}


def test_stable_orbit_types_p2():
    gamma = assign_charges(P2, F(-1, 2))
    types = stable_orbit_types(P2, gamma)
    assert len(types) == 2
    trivial = next(t for t in types if len(t.cells) == 1)
    split = next(t for t in types if len(t.cells) == 2)
    assert trivial.cells[0].supports == ((1, 2, 3), (1, 2))
    assert trivial.labeled_multiplicity == 2
    assert split.principal_cell.supports == ((2, 3),)
    assert [b.supports for b in split.bubbles] == [((1, 3),)]
    assert split.bubbles[0].charge == (F(1, 2),)


def test_stable_orbit_types_p3_multiplicities():
    types = stable_orbit_types(P3, assign_charges(P3, F(-1, 2)))
    assert sorted(t.labeled_multiplicity for t in types) == [3, 6]


def test_forgetful_map():
    gamma = assign_charges(P2, F(-1, 2))
    strata = reduction_strata(P2, F(-1, 2))
    keys = {len(t.cells): forgetful_to_principal(t, strata) for t in stable_orbit_types(P2, gamma)}
    assert keys == {1: WHOLE, 2: LEFT}
    assert strata.strata[LEFT] == ((2, 3),)


def test_invalid_assignment_has_no_types():
    gamma = assign_charges(P2, F(-1, 2))
    split = next(i for i, s in enumerate(gamma.geo.subdivisions) if len(s) == 2)
    with pytest.raises(ChargeAssignmentError):
        stable_orbit_types(P2, gamma.with_charge(split, LEFT, F(-1, 4)))


def test_geometric_poset_p3():
    geo = geometric_poset(P3)
    assert len(geo.subdivisions) == 2
    assert sorted(geo.labeled_count) == [3, 6]


@pytest.mark.parametrize("ws", RANK_TWO, ids=lambda ws: str(ws.weights))
@pytest.mark.parametrize("seed", [0, 1, 7])
def test_rank_two_assignments_validate(ws, seed):
    from chowlab.chambers import build_chambers
    from chowlab.geometry import relative_interior_point

    r = relative_interior_point(build_chambers(ws).top()[-1].cell)
    gamma = assign_charges(ws, r, seed)
    assert validate_charges(gamma) == []
    types = stable_orbit_types(ws, gamma)
    assert all(sum(c.principal for c in t.cells) == 1 for t in types)


def test_seed_determinism():
    ws = RANK_TWO[-2]
    from chowlab.chambers import build_chambers
    from chowlab.geometry import relative_interior_point

    r = relative_interior_point(build_chambers(ws).top()[0].cell)
    assert assign_charges(ws, r, 3).charges == assign_charges(ws, r, 3).charges
