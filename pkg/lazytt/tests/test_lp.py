""" Test the exact simplex against the brute-force oracle """
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from lazytt.lp import (solve, feasible_nonnegative, brute_force_feasible,
                       OPTIMAL, INFEASIBLE, UNBOUNDED)


def test_small_optimum():
    # max x + y, x + 2y <= 4, 3x + y <= 6
    res = solve([1, 1], A_ub=[[1, 2], [3, 1]], b_ub=[4, 6])
    assert res.status == OPTIMAL
    assert res.x == [Fraction(8, 5), Fraction(6, 5)]
    assert res.value == Fraction(14, 5)

    res = solve([1, 1], A_ub=[[1, 2], [3, 1]], b_ub=[4, 6], maximize=False)
    assert res.status == OPTIMAL
    assert res.value == 0


def test_infeasible_and_unbounded():
    res = solve(None, A_eq=[[1, 1]], b_eq=[-1])
    assert res.status == INFEASIBLE
    assert feasible_nonnegative(A_eq=[[1, 1]], b_eq=[-1]) is None

    res = solve([1, 0], A_eq=[[1, -1]], b_eq=[0])
    assert res.status == UNBOUNDED


def test_equalities():
    x = feasible_nonnegative(A_eq=[[1, 1, 0], [0, 1, 1]], b_eq=[2, 3])
    assert x is not None
    assert x[0] + x[1] == 2
    assert x[1] + x[2] == 3
    assert all(v >= 0 for v in x)


def test_redundant_rows():
    res = solve([1, 0], A_eq=[[1, 1], [2, 2]], b_eq=[1, 2])
    assert res.status == OPTIMAL
    assert res.x == [1, 0]


def test_oracle():
    assert brute_force_feasible(A_eq=[[1, 1]], b_eq=[2])
    assert not brute_force_feasible(A_eq=[[1, 1]], b_eq=[-2])
    assert brute_force_feasible(A_ub=[[1, -1]], b_ub=[-1])
    assert brute_force_feasible()


@settings(max_examples=40, deadline=None)
@given(st.lists(st.lists(st.integers(-3, 3), min_size=4, max_size=4), min_size=1, max_size=3),
       st.lists(st.integers(-4, 4), min_size=3, max_size=3))
def test_simplex_matches_oracle(rows, rhs):
    """ Feasibility agrees with vertex enumeration """
    rhs = rhs[:len(rows)]
    found = feasible_nonnegative(A_eq=rows, b_eq=rhs)
    assert (found is not None) == brute_force_feasible(A_eq=rows, b_eq=rhs)
    if found is not None:
        for row, b in zip(rows, rhs):
            assert sum(Fraction(a) * v for a, v in zip(row, found)) == b
