from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from chowlab.errors import InsufficientPrecisionError
from chowlab.series import (
    GroupPath,
    TruncSeries,
    constant,
    exp_series,
    normalize,
    projective_limit,
    proportional,
    series_limit,
)

F = Fraction


def test_exp_coefficients():
    e = exp_series(2, 5)
    assert [e.coefficient(i) for i in range(5)] == [1, 2, 2, F(4, 3), F(2, 3)]
    assert e.prec == 5 and e.valuation == 0


def test_precision_is_tracked():
    e = exp_series(1, 4)
    with pytest.raises(InsufficientPrecisionError):
        e.coefficient(4)
    t_inv = TruncSeries.monomial(1, -1, 4)
    assert (t_inv * e).prec == 3
    assert t_inv.prec == 3  # relative order 4 starting at t^-1
    assert (e + t_inv).prec == 3


def test_exact_constants_do_not_limit_precision():
    c = constant(3, 4)
    e = exp_series(1, 4)
    assert (c * e).prec == 4
    assert (c * e).coefficient(1) == 3


def test_inverse():
    e = exp_series(1, 6)
    one = e * e.inverse()
    assert [one.coefficient(i) for i in range(6)] == [1, 0, 0, 0, 0, 0]
    assert (e / e).coefficient(0) == 1


def test_limits_of_columns():
    t = TruncSeries.monomial(1, 1, 4)
    assert projective_limit([t, constant(1, 4)]) == (0, 1)
    shifted = TruncSeries.monomial(F(3), -1, 4)
    assert normalize(projective_limit([shifted, constant(5, 4)])) == (1, 0)


def test_zero_column_is_rejected():
    with pytest.raises(Exception):
        projective_limit([TruncSeries.zero(3), TruncSeries.zero(3)])


def test_group_path_and_series_limit():
    order = 6
    t_inv = TruncSeries.monomial(1, -1, order)
    g = GroupPath(((t_inv, t_inv * -1), (TruncSeries.zero(order), constant(1, order))))
    cols = [[exp_series(j, order), constant(1, order)] for j in (1, 2)]
    cols.append([constant(2, order), constant(1, order)])
    limits = [normalize(projective_limit(g.apply(c))) for c in cols]
    assert limits == [(1, 1), (2, 1), (1, 0)]
    assert [normalize(p) for p in series_limit([g.apply(c) for c in cols])] == limits


def test_normalize_and_proportional():
    assert normalize((2, 4)) == (F(1, 2), 1)
    assert normalize((3, 0)) == (1, 0)
    assert proportional((1, 2), (-2, -4))
    assert not proportional((1, 2), (2, 1))


small = st.fractions(min_value=-5, max_value=5, max_denominator=5)


@settings(max_examples=100, deadline=None)
@given(st.lists(small, min_size=1, max_size=6), st.lists(small, min_size=1, max_size=6))
def test_multiplication_is_commutative_and_distributive(a, b):
    x = TruncSeries.make(a)
    y = TruncSeries.make(b)
    z = x + y
    left = x * z
    right = x * x + x * y
    p = min(left.prec, right.prec)
    assert [left.coefficient(i) for i in range(p)] == [right.coefficient(i) for i in range(p)]
    u, v = x * y, y * x
    assert [u.coefficient(i) for i in range(u.prec)] == [v.coefficient(i) for i in range(v.prec)]
