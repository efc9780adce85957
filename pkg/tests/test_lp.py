from __future__ import annotations

import random
from fractions import Fraction

import pytest

from chowlab.lp import check_point, fm_feasible, lp_feasible

F = Fraction


def test_half_open_interval_is_feasible():
    system = [([1], ">=", 0), ([1], "<=", 1), ([1], ">", F(1, 2))]
    res = lp_feasible(system)
    assert res.feasible and check_point(system, res.point)
    assert F(1, 2) < res.point[0] <= 1
    assert fm_feasible(system)


def test_contradictory_strict_pair_is_infeasible():
    system = [([1], ">", 0), ([1], "<", 0)]
    assert not lp_feasible(system)
    assert not fm_feasible(system)


def test_strict_versus_weak_boundary():
    assert lp_feasible([([1], ">=", 0), ([1], "<=", 0)])
    assert not lp_feasible([([1], ">", 0), ([1], "<=", 0)])


def test_equalities_and_free_variables():
    system = [([1, 1], "==", 3), ([1, -1], "==", -1), ([0, 0, 1], "<", -5)]
    res = lp_feasible(system)
    assert res.point[:2] == (1, 2)
    assert res.point[2] < -5


def test_unknown_relation():
    with pytest.raises(ValueError):
        lp_feasible([([1], "=>", 0)])


def _random_system(rng: random.Random):
    nvars = rng.randint(1, 4)
    rows = []
    for _ in range(rng.randint(1, 7)):
        coeffs = [rng.randint(-3, 3) for _ in range(nvars)]
        rows.append((coeffs, rng.choice(["<=", ">=", "<", ">", "=="]), rng.randint(-4, 4)))
    return rows, nvars


@pytest.mark.parametrize("seed", range(300))
def test_simplex_agrees_with_elimination(seed):
    system, nvars = _random_system(random.Random(seed))
    res = lp_feasible(system, nvars)
    assert res.feasible == fm_feasible(system, nvars)
    if res.feasible:
        assert check_point(system, res.point)
