"""
Exact rational linear programming.

A dense two-phase simplex over Fractions with Bland's rule, plus a
brute-force vertex enumeration oracle built on sympy for cross-checking small
systems.
"""
import itertools as _itertools
import logging as _logging
from collections import namedtuple as _namedtuple
from fractions import Fraction as _Fraction

import sympy as _sympy

__all__ = ['LPResult', 'solve', 'feasible_nonnegative', 'brute_force_feasible']

logger = _logging.getLogger(__name__)

OPTIMAL = 'optimal'
INFEASIBLE = 'infeasible'
UNBOUNDED = 'unbounded'

LPResult = _namedtuple('LPResult', ['status', 'x', 'value', 'pivots'])


class _Tableau:
    """ Rows are [coefficients..., rhs]; basis[i] is the basic column of row i """
    def __init__(self, rows, basis):
        self.rows = rows
        self.basis = basis
        self.pivots = 0

    def pivot(self, r, c):
        row = self.rows[r]
        inv = 1 / row[c]
        row = [v * inv for v in row]
        self.rows[r] = row
        for i, other in enumerate(self.rows):
            if i != r and other[c] != 0:
                factor = other[c]
                self.rows[i] = [o - factor * v for o, v in zip(other, row)]
        self.basis[r] = c
        self.pivots += 1

    def run(self, cost, allowed):
        """
        Minimize cost . x over the current basis using Bland's rule.

        Returns True on optimality, False if unbounded.
        """
        ncol = len(cost)
        while True:
            # Reduced cost c_j - c_B B^-1 A_j
            reduced = list(cost)
            for i, b in enumerate(self.basis):
                cb = cost[b]
                if cb != 0:
                    row = self.rows[i]
                    for j in range(ncol):
                        if row[j] != 0:
                            reduced[j] -= cb * row[j]
            enter = None
            for j in range(ncol):
                if allowed[j] and reduced[j] < 0:
                    enter = j
                    break
            if enter is None:
                return True
            leave = None
            best = None
            for i, row in enumerate(self.rows):
                if row[enter] > 0:
                    ratio = row[-1] / row[enter]
                    if (best is None or ratio < best or
                            (ratio == best and self.basis[i] < self.basis[leave])):
                        best = ratio
                        leave = i
            if leave is None:
                return False
            self.pivot(leave, enter)


def solve(c=None, A_eq=(), b_eq=(), A_ub=(), b_ub=(), maximize=True):
    """
    Optimize c . x subject to A_eq x = b_eq, A_ub x <= b_ub, x >= 0.

    Parameters
    ----------
    c : sequence or None
        Objective. None means pure feasibility.

    A_eq, b_eq, A_ub, b_ub : sequences
        Exact (int or Fraction) coefficients.

    maximize : bool
        Maximize (default) or minimize.

    Returns
    -------
    LPResult
        status is 'optimal', 'infeasible' or 'unbounded'. x is a basic
        solution (list of Fraction) for 'optimal'.
    """
    A_eq = [[_Fraction(v) for v in row] for row in A_eq]
    A_ub = [[_Fraction(v) for v in row] for row in A_ub]
    b_eq = [_Fraction(v) for v in b_eq]
    b_ub = [_Fraction(v) for v in b_ub]
    n = len(A_eq[0]) if A_eq else (len(A_ub[0]) if A_ub else (len(c) if c is not None else 0))
    n_slack = len(A_ub)
    rows = []
    for row, rhs in zip(A_eq, b_eq):
        full = row + [_Fraction(0)] * n_slack
        rows.append((full, rhs))
    for k, (row, rhs) in enumerate(zip(A_ub, b_ub)):
        slack = [_Fraction(0)] * n_slack
        slack[k] = _Fraction(1)
        rows.append((row + slack, rhs))
    nvar = n + n_slack
    m = len(rows)
    if m == 0:
        if c is not None and any((v > 0) if maximize else (v < 0) for v in c):
            return LPResult(UNBOUNDED, None, None, 0)
        return LPResult(OPTIMAL, [_Fraction(0)] * n, _Fraction(0), 0)

    # Phase I: one artificial per row, rhs made nonnegative.
    tab_rows = []
    for i, (row, rhs) in enumerate(rows):
        if rhs < 0:
            row = [-v for v in row]
            rhs = -rhs
        art = [_Fraction(0)] * m
        art[i] = _Fraction(1)
        tab_rows.append(row + art + [rhs])
    tab = _Tableau(tab_rows, [nvar + i for i in range(m)])
    cost1 = [_Fraction(0)] * nvar + [_Fraction(1)] * m
    tab.run(cost1, [True] * (nvar + m))
    infeas = sum((tab.rows[i][-1] for i, b in enumerate(tab.basis) if b >= nvar), _Fraction(0))
    if infeas > 0:
        return LPResult(INFEASIBLE, None, None, tab.pivots)

    # Drive artificials out of the basis; drop redundant rows.
    keep = []
    for i in range(m):
        if tab.basis[i] >= nvar:
            col = next((j for j in range(nvar) if tab.rows[i][j] != 0), None)
            if col is None:
                continue
            tab.pivot(i, col)
        keep.append(i)
    tab.rows = [[v for j, v in enumerate(tab.rows[i]) if j < nvar or j == nvar + m] for i in keep]
    tab.basis = [tab.basis[i] for i in keep]

    if c is None:
        cost2 = [_Fraction(0)] * nvar
    else:
        sign = -1 if maximize else 1
        cost2 = [sign * _Fraction(v) for v in c] + [_Fraction(0)] * n_slack
    bounded = tab.run(cost2, [True] * nvar)
    if not bounded:
        return LPResult(UNBOUNDED, None, None, tab.pivots)
    x = [_Fraction(0)] * nvar
    for i, b in enumerate(tab.basis):
        x[b] = tab.rows[i][-1]
    x = x[:n]
    value = sum((_Fraction(ci) * xi for ci, xi in zip(c, x)), _Fraction(0)) if c is not None else _Fraction(0)
    logger.debug('simplex: %d rows, %d vars, %d pivots', m, nvar, tab.pivots)
    return LPResult(OPTIMAL, x, value, tab.pivots)


def feasible_nonnegative(A_eq=(), b_eq=(), A_ub=(), b_ub=()):
    """ A nonnegative solution, or None """
    res = solve(None, A_eq, b_eq, A_ub, b_ub)
    if res.status != OPTIMAL:
        return None
    return res.x


def brute_force_feasible(A_eq=(), b_eq=(), A_ub=(), b_ub=()):
    """
    Feasibility of {x >= 0, A_eq x = b_eq, A_ub x <= b_ub} by vertex enumeration.

    Parameters
    ----------
    A_eq, b_eq, A_ub, b_ub : sequences
        Exact coefficients.

    Returns
    -------
    bool

    Notes
    -----
    Inequalities get slack columns; every choice of rank-many independent
    columns is solved with sympy and checked for nonnegativity. Exponential;
    meant for systems with a dozen or so columns.
    """
    A_ub = [list(row) for row in A_ub]
    rows = []
    rhs = []
    for row, b in zip(A_eq, b_eq):
        rows.append(list(row) + [0] * len(A_ub))
        rhs.append(b)
    for k, (row, b) in enumerate(zip(A_ub, b_ub)):
        slack = [0] * len(A_ub)
        slack[k] = 1
        rows.append(list(row) + slack)
        rhs.append(b)
    if not rows:
        return True
    mat = _sympy.Matrix([[_sympy.Rational(_Fraction(v).numerator, _Fraction(v).denominator) for v in row]
                         for row in rows])
    vec = _sympy.Matrix([_sympy.Rational(_Fraction(v).numerator, _Fraction(v).denominator) for v in rhs])
    aug = mat.row_join(vec)
    rank = mat.rank()
    if aug.rank() != rank:
        return False
    if rank == 0:
        return True
    # Keep an independent set of rows.
    _, pivots = mat.T.rref()
    mat = mat.extract(list(pivots), list(range(mat.cols)))
    vec = vec.extract(list(pivots), [0])
    for cols in _itertools.combinations(range(mat.cols), rank):
        sub = mat.extract(list(range(rank)), list(cols))
        if sub.det() == 0:
            continue
        sol = sub.LUsolve(vec)
        if all(v >= 0 for v in sol):
            return True
    return False
