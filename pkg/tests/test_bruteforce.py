from __future__ import annotations

import pytest

from families import P2, P3

from chowlab.action import WeightSystem
from chowlab.bruteforce import brute_force_subdivisions, candidate_families, fm_coherent
from chowlab.chow import enumerate_subdivisions


def test_p2_oracle():
    assert brute_force_subdivisions(P2) == {((1, 2, 3),), ((1, 2),), ((1, 3), (2, 3))}


def test_p3_oracle_counts():
    assert len(brute_force_subdivisions(P3)) == 9


def test_every_rank_one_candidate_is_coherent():
    # Point configurations on a line have only regular subdivisions.
    assert candidate_families(P3) == brute_force_subdivisions(P3)


def test_fm_rejects_inconsistent_labels():
    ws = WeightSystem.of(0, 1, 1, 2)
    # Labels 2 and 3 sit at the same point but each is used on one side only.
    assert not fm_coherent(ws, ((1, 2), (3, 4)))
    assert fm_coherent(ws, ((1, 2, 3), (2, 3, 4)))
    assert fm_coherent(ws, ((1, 2), (2, 4)))


@pytest.mark.parametrize("weights", [(0, 2, 1, 3), (2, 0, 0, 1, 2), (0, 1, 3, 6, 10)])
def test_oracle_matches_enumeration(weights):
    ws = WeightSystem.of(*weights)
    assert brute_force_subdivisions(ws) == {s.cells for s in enumerate_subdivisions(ws).elements}
