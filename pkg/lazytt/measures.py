"""
Transverse and tangential measures, and exact feasibility questions about
them: recurrence, transverse recurrence, positive subtracks and the
completeness surrogate.
"""
import logging as _logging
from collections import namedtuple as _namedtuple
from collections.abc import Mapping as _Mapping
from fractions import Fraction as _Fraction

import numpy as _np

from .errors import PreconditionError as _PreconditionError
from .lp import (solve as _solve, OPTIMAL as _OPTIMAL,
                 brute_force_feasible as _brute_force_feasible)
from .nonh5utils import (as_fraction as _as_fraction,
                         common_denominator as _common_denominator)
from .track import (TrainTrack as _TrainTrack, Switch as _Switch,
                    branch_of as _branch_of)

__all__ = ['TransverseMeasure', 'TangentialMeasure', 'GuideMeasure',
           'switch_matrix', 'switch_residuals', 'side_weight',
           'tangential_violations', 'positive_transverse',
           'positive_tangential', 'positive_subtrack', 'restrict',
           'CompletenessReport', 'completeness_surrogate',
           'transverse_system', 'tangential_system', 'oracle_feasible']

logger = _logging.getLogger(__name__)


class _WeightMap(_Mapping):
    """ Immutable branch -> Fraction map """
    def __init__(self, weights):
        self._w = {int(b): _as_fraction(v) for b, v in dict(weights).items()}
        for b, v in self._w.items():
            if v < 0:
                raise ValueError('negative weight {} on branch {}'.format(v, b))

    def __getitem__(self, b):
        return self._w[b]

    def __iter__(self):
        return iter(sorted(self._w))

    def __len__(self):
        return len(self._w)

    def __eq__(self, other):
        if isinstance(other, _Mapping):
            return dict(self._w) == {k: other[k] for k in other}
        return NotImplemented

    def __hash__(self):
        return hash(tuple(sorted(self._w.items())))

    def __repr__(self):
        body = ', '.join('{}: {}'.format(b, self._w[b]) for b in sorted(self._w))
        return '{}({{{}}})'.format(type(self).__name__, body)

    def total(self):
        return sum(self._w.values(), _Fraction(0))

    def support(self):
        return tuple(b for b in sorted(self._w) if self._w[b] > 0)

    def is_positive(self):
        return all(v > 0 for v in self._w.values())

    def is_integral(self):
        return all(v.denominator == 1 for v in self._w.values())

    def scaled(self, factor):
        factor = _as_fraction(factor)
        return type(self)({b: v * factor for b, v in self._w.items()})

    def updated(self, changes, drop=()):
        """ Copy with some weights replaced and some branches removed """
        w = dict(self._w)
        w.update(changes)
        for b in drop:
            w.pop(b, None)
        return type(self)(w)


class TransverseMeasure(_WeightMap):
    """ Branch weights meant to satisfy the switch condition """

    def residuals(self, track):
        return switch_residuals(track, self)

    def is_consistent(self, track):
        return all(r == 0 for r in self.residuals(track))


class TangentialMeasure(_WeightMap):
    """ Branch weights meant to satisfy bigon equalities and trigon inequalities """

    def violations(self, track, strict_trigons=False):
        return tangential_violations(track, self, strict_trigons=strict_trigons)


class GuideMeasure(TransverseMeasure):
    """
    Strictly positive transverse measure standing in for a carried lamination.
    """
    def __init__(self, weights):
        super().__init__(weights)
        if not self.is_positive():
            raise _PreconditionError('A guide must be positive on every branch')

    @property
    def integrality(self):
        return self.is_integral()

    def check_dual_ready(self):
        """ Integral with every weight at least 4 """
        if not self.is_integral():
            raise _PreconditionError('Guide must be integral')
        low = [b for b in self if self[b] < 4]
        if low:
            err_str1 = 'Guide weights must be at least 4; '
            raise _PreconditionError(err_str1 + 'branches {} are below'.format(low))

    @classmethod
    def from_transverse(cls, measure, minimum=4):
        """ Scale a positive rational measure to integers, all >= minimum """
        den = _common_denominator(measure.values())
        low = min(measure.values()) * den
        factor = den * max(1, -(-minimum // low)) if low < minimum else den
        return cls({b: measure[b] * factor for b in measure})


def switch_matrix(track):
    """
    Switch condition matrix.

    Returns
    -------
    rows : ndarray (n_switches, n_branches), int
        +1 per side-a dart, -1 per side-b dart.

    branches : tuple
        Column order.
    """
    branches = track.branches
    col = {b: k for k, b in enumerate(branches)}
    mat = _np.zeros((len(track.switches), len(branches)), dtype=_np.int64)
    for sid, sw in enumerate(track.switches):
        for h in sw.side_a:
            mat[sid, col[_branch_of(h)]] += 1
        for h in sw.side_b:
            mat[sid, col[_branch_of(h)]] -= 1
    return mat, branches


def switch_residuals(track, weights):
    """ Per-switch side-a total minus side-b total """
    out = []
    for sw in track.switches:
        tot = _Fraction(0)
        for h in sw.side_a:
            tot += _as_fraction(weights[_branch_of(h)])
        for h in sw.side_b:
            tot -= _as_fraction(weights[_branch_of(h)])
        out.append(tot)
    return out


def side_weight(side, weights):
    """ Weight of a region side, branches counted with multiplicity """
    return sum((_as_fraction(weights[t.branch]) for t in side), _Fraction(0))


def _constrained_regions(track):
    bigons = [reg for reg in track.regions if reg.is_bigon]
    trigons = [reg for reg in track.regions if reg.is_trigon]
    return bigons, trigons


def tangential_violations(track, weights, strict_trigons=False):
    """
    Violated tangential constraints as (kind, region index, detail) tuples.
    """
    out = []
    bigons, trigons = _constrained_regions(track)
    for reg in bigons:
        w = [side_weight(side, weights) for side in reg.sides]
        if w[0] != w[1]:
            out.append(('bigon', reg.index, '{} != {}'.format(w[0], w[1])))
    for reg in trigons:
        w = [side_weight(side, weights) for side in reg.sides]
        for i in range(3):
            lhs, rhs = w[i], w[(i + 1) % 3] + w[(i + 2) % 3]
            if lhs > rhs or (strict_trigons and lhs == rhs):
                out.append(('trigon', reg.index, '{} vs {}'.format(lhs, rhs)))
    return out


def _side_row(side, col):
    row = [0] * len(col)
    for t in side:
        row[col[t.branch]] += 1
    return row


def transverse_system(track):
    """
    Positive transverse measures as a nonnegative system.

    Substituting x = 1 + y, returns (A_eq, b_eq) in y.
    """
    mat, branches = switch_matrix(track)
    A_eq = mat.tolist()
    b_eq = [-int(v) for v in mat.sum(axis=1)]
    return A_eq, b_eq, branches


def tangential_system(track, strict_trigons=False):
    """
    Positive tangential measures as a nonnegative system in y = nu - 1.

    With strict_trigons a last column t (0 <= t <= 1) is added to every trigon
    inequality.
    """
    branches = track.branches
    col = {b: k for k, b in enumerate(branches)}
    bigons, trigons = _constrained_regions(track)
    extra = 1 if strict_trigons else 0
    A_eq, b_eq, A_ub, b_ub = [], [], [], []
    for reg in bigons:
        r0, r1 = _side_row(reg.sides[0], col), _side_row(reg.sides[1], col)
        row = [u - v for u, v in zip(r0, r1)]
        A_eq.append(row + [0] * extra)
        b_eq.append(-sum(row))
    for reg in trigons:
        rows = [_side_row(side, col) for side in reg.sides]
        for i in range(3):
            row = [u - v - w for u, v, w in zip(rows[i], rows[(i + 1) % 3], rows[(i + 2) % 3])]
            A_ub.append(row + [1] * extra)
            b_ub.append(-sum(row))
    if strict_trigons:
        A_ub.append([0] * len(branches) + [1])
        b_ub.append(1)
    return A_eq, b_eq, A_ub, b_ub, branches


def positive_transverse(track):
    """
    Strictly positive switch-consistent measure, or None.

    Parameters
    ----------
    track : TrainTrack

    Returns
    -------
    TransverseMeasure or None
        Every weight is at least 1. The witness is the basic solution found by
        the exact simplex, so it is deterministic.
    """
    if not track.branches:
        return None
    A_eq, b_eq, branches = transverse_system(track)
    res = _solve(None, A_eq, b_eq)
    if res.status != _OPTIMAL:
        logger.debug('%r is not recurrent', track)
        return None
    return TransverseMeasure({b: 1 + y for b, y in zip(branches, res.x)})


def positive_tangential(track, strict_trigons=False):
    """
    Strictly positive tangential measure, or None.

    Parameters
    ----------
    track : TrainTrack
        Train track or bigon track.

    strict_trigons : bool
        Require strict triangle inequalities on every trigon, by maximizing a
        shared slack and requiring it to be positive.

    Returns
    -------
    TangentialMeasure or None
    """
    if not track.branches:
        return None
    A_eq, b_eq, A_ub, b_ub, branches = tangential_system(track, strict_trigons)
    nvar = len(branches) + (1 if strict_trigons else 0)
    if strict_trigons:
        obj = [0] * len(branches) + [1]
        res = _solve(obj, A_eq or [], b_eq, A_ub, b_ub, maximize=True)
        if res.status != _OPTIMAL or res.x[-1] <= 0:
            return None
        xs = res.x[:-1]
    else:
        if not A_eq and not A_ub:
            xs = [_Fraction(0)] * nvar
        else:
            res = _solve(None, A_eq, b_eq, A_ub, b_ub)
            if res.status != _OPTIMAL:
                return None
            xs = res.x
    return TangentialMeasure({b: 1 + y for b, y in zip(branches, xs)})


def oracle_feasible(track, kind='transverse', strict_trigons=False):
    """
    Brute-force answer to positive_transverse / positive_tangential.

    Uses sympy vertex enumeration; only for small tracks.
    """
    if kind == 'transverse':
        A_eq, b_eq, _ = transverse_system(track)
        return _brute_force_feasible(A_eq, b_eq)
    A_eq, b_eq, A_ub, b_ub, branches = tangential_system(track, strict_trigons)
    if strict_trigons:
        # t > 0 somewhere iff the slack can be pinned to a positive value:
        # scale invariance lets t be fixed to 1/2 by homogeneity of y + 1.
        n = len(branches)
        A_eq = [row for row in A_eq] + [[0] * n + [1]]
        b_eq = list(b_eq) + [_Fraction(1, 2)]
    return _brute_force_feasible(A_eq, b_eq, A_ub, b_ub)


def restrict(track, branches):
    """
    Subtrack spanned by a set of branches.

    Returns
    -------
    TrainTrack or None
        Branch ids are kept; switches touching no kept branch are dropped.
        None when some kept switch would have an empty side.
    """
    keep = set(branches)
    sws = []
    for sw in track.switches:
        sa = tuple(h for h in sw.side_a if _branch_of(h) in keep)
        sb = tuple(h for h in sw.side_b if _branch_of(h) in keep)
        if not sa and not sb:
            continue
        if not sa or not sb:
            return None
        sws.append(_Switch(sa, sb))
    return _TrainTrack(sws, track.allows_bigons)


def positive_subtrack(track, measure):
    """
    Branches of positive mass.

    Parameters
    ----------
    track : TrainTrack

    measure : TransverseMeasure
        Switch consistent.

    Returns
    -------
    tuple of int
        Sorted branch ids. They span a recurrent subtrack.
    """
    if not TransverseMeasure(measure).is_consistent(track):
        raise _PreconditionError('Measure violates a switch condition')
    support = tuple(b for b in track.branches if measure[b] > 0)
    if not support:
        raise _PreconditionError('Measure has empty support')
    return support


CompletenessReport = _namedtuple('CompletenessReport',
                                 ['maximal', 'generic', 'recurrent', 'transversely_recurrent'])
CompletenessReport.complete = property(lambda self: all(self))
CompletenessReport.surrogate = True
CompletenessReport.__doc__ = """
Checkable flags standing in for completeness (never claimed equivalent).
"""


def is_maximal(track):
    for reg in track.regions:
        if reg.is_trigon or reg.is_punctured_monogon:
            continue
        if track.allows_bigons and reg.is_bigon:
            continue
        return False
    return True


def is_generic(track):
    return all(sw.valence == 3 for sw in track.switches)


def completeness_surrogate(track):
    """ maximal, generic, recurrent and transversely recurrent flags """
    return CompletenessReport(is_maximal(track), is_generic(track),
                              positive_transverse(track) is not None,
                              positive_tangential(track) is not None)
