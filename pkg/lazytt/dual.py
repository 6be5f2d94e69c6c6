"""
Dual bigon tracks of complete train tracks and their tangential measures.

Every branch b of the source gets a dual arc with the same identifier,
crossing b once; dart ``2*b + s`` of the arc lies in the region on side s of
b. Inside each complementary region the arc ends of one side are gathered by
a fan into a trunk (sides of a single branch need none), and the trunks of
the region meet a cycle of connectors, one outlet per side. The connector
cycle bounds a trigon for a trigon and a punctured monogon for a punctured
monogon; every other region of the dual is a bigon around a source switch.
"""
import logging as _logging
from collections import namedtuple as _namedtuple

from .errors import PreconditionError as _PreconditionError
from .measures import (GuideMeasure as _GuideMeasure, TangentialMeasure as _TangentialMeasure,
                       is_maximal as _is_maximal, is_generic as _is_generic)
from .track import TrainTrack as _TrainTrack, Switch as _Switch

__all__ = ['DualSide', 'DualityData', 'SneakUpAccounting', 'dual_track', 'census',
           'dual_branch_bound', 'induced_tangential', 'arc_pulls', 'lift_guide', 'sneak_up',
           'sneak_up_accounting']

logger = _logging.getLogger(__name__)

DualSide = _namedtuple('DualSide', ['region', 'index', 'branches', 'trunk', 'outlet'])
DualSide.__doc__ = """
One side of a source region: its branches in boundary order, the trunk
gathering their arcs (None for a single branch) and the outlet switch id.
"""

DualityData = _namedtuple('DualityData', ['source', 'track', 'arcs', 'trunks',
                                          'connectors', 'sides'])
DualityData.__doc__ = """
Source track, dual bigon track, the arc identifiers (equal to the source
branch identifiers), trunk identifiers, connector identifiers per source
region, and the list of DualSide.
"""

SneakUpAccounting = _namedtuple('SneakUpAccounting', ['pulled', 'induced_total',
                                                      'sneaked_total', 'trunks', 'connectors'])


def _balanced(self):
    pulled = sum(k * len(side.branches) for side, k in self.pulled)
    return self.sneaked_total == (self.induced_total - pulled + self.trunks
                                  + 2 * self.connectors)


SneakUpAccounting.balanced = property(_balanced)


def dual_track(track):
    """
    Dual bigon track of a maximal generic train track.

    Parameters
    ----------
    track : TrainTrack

    Returns
    -------
    DualityData
    """
    if track.allows_bigons:
        raise _PreconditionError('Source must be a train track, not a bigon track')
    if not _is_maximal(track) or not _is_generic(track):
        raise _PreconditionError('Source must be maximal and generic')
    next_id = max(track.branches) + 1
    switches, punctures, trunks, sides = [], [], [], []
    connectors = {}
    for reg in track.regions:
        incoming = []
        first_outlet = len(switches) + sum(1 for side in reg.sides if len(side) >= 2)
        for k, side in enumerate(reg.sides):
            darts = tuple(2 * t.branch + (1 if t.forward else 0) for t in side)
            trunk = None
            if len(darts) >= 2:
                trunk = next_id
                next_id += 1
                trunks.append(trunk)
                switches.append(_Switch((2 * trunk,), darts))
                incoming.append(2 * trunk + 1)
            else:
                incoming.append(darts[0])
            sides.append(DualSide(reg.index, k, tuple(t.branch for t in side), trunk,
                                  first_outlet + k))
        conns = tuple(range(next_id, next_id + len(incoming)))
        next_id += len(incoming)
        for k in range(len(conns)):
            switches.append(_Switch((2 * conns[k - 1] + 1, 2 * conns[k]), (incoming[k],)))
        if reg.punctures:
            punctures.append((conns[0], 1))
        connectors[reg.index] = conns
    dual = _TrainTrack(switches, allows_bigons=True, punctures=punctures)
    logger.info('dual of %r: %d switches, %d branches', track, len(dual.switches), len(dual.branches))
    return DualityData(track, dual, tuple(track.branches), tuple(trunks), connectors, tuple(sides))


def census(track):
    """ Region counts by kind: trigons, monogons, bigons, other """
    out = {'trigons': 0, 'monogons': 0, 'bigons': 0, 'other': 0}
    for reg in track.regions:
        if reg.is_trigon:
            out['trigons'] += 1
        elif reg.is_punctured_monogon:
            out['monogons'] += 1
        elif reg.is_bigon:
            out['bigons'] += 1
        else:
            out['other'] += 1
    return out


def dual_branch_bound(surface):
    """ Branch count of the dual of a maximal generic track on the surface """
    _, branches, trigons = surface.maximal_counts()
    return branches + 2 * (3 * trigons + surface.punctures)


def _guide(duality, guide):
    guide = _GuideMeasure(guide)
    guide.check_dual_ready()
    missing = [b for b in duality.arcs if b not in guide]
    if missing:
        raise _PreconditionError('Guide has no weight on branches {}'.format(missing))
    if not guide.is_consistent(duality.source):
        bad = [i for i, r in enumerate(guide.residuals(duality.source)) if r != 0]
        raise _PreconditionError('Guide violates the switch condition at switches {}'.format(bad))
    return guide


def induced_tangential(duality, guide):
    """
    Tangential measure on the dual giving each arc the guide weight of its
    branch and every trunk and connector zero.
    """
    guide = _guide(duality, guide)
    weights = {b: guide[b] for b in duality.arcs}
    for t in duality.trunks:
        weights[t] = 0
    for conns in duality.connectors.values():
        for c in conns:
            weights[c] = 0
    return _TangentialMeasure(weights)


def _pulled(duality):
    out = []
    for side in duality.sides:
        out.append((side, 2 if side.trunk is not None else 1))
    return out


def arc_pulls(duality):
    """
    Arcs pulled off each dual arc by sneaking up.

    Returns
    -------
    dict
        Arc id to the number of arcs its two sides pull; an arc whose
        branch sits in a multi-branch side on both sides is pulled 4.
    """
    pulled = {b: 0 for b in duality.arcs}
    for side, k in _pulled(duality):
        for b in side.branches:
            pulled[b] += k
    return pulled


def lift_guide(duality, guide):
    """
    Smallest integral multiple of the guide whose every arc weight exceeds
    the arcs pulled off it.

    Returns
    -------
    GuideMeasure
        The guide itself when it already clears every arc.
    """
    guide = _guide(duality, guide)
    factor = 1
    for b, k in arc_pulls(duality).items():
        factor = max(factor, k // guide[b] + 1)
    if factor == 1:
        return guide
    logger.info('lifting guide by %d to clear the arcs pulled', factor)
    return _GuideMeasure(guide.scaled(factor))


def sneak_up(duality, guide):
    """
    Positive integral tangential measure on the dual.

    Each source side pulls two arcs (one for a single-branch side) off every
    arc crossing it: trunks get weight 1, connectors 2, and an arc keeps the
    guide weight of its branch minus what both of its sides pulled. The
    guide weight must exceed arc_pulls for every arc (at most 4, so a guide
    of minimum 5 always works); lift_guide scales a guide that falls short.

    Raises
    ------
    PreconditionError
        An arc would be left with no positive weight.
    """
    guide = _guide(duality, guide)
    pulled = arc_pulls(duality)
    short = [b for b in duality.arcs if guide[b] <= pulled[b]]
    if short:
        b = short[0]
        err_str1 = 'Guide weight {} on branch {} '.format(guide[b], b)
        err_str2 = 'does not exceed the {} arcs pulled '.format(pulled[b])
        raise _PreconditionError(err_str1 + err_str2 + '(short on branches {})'.format(short))
    weights = {b: guide[b] - pulled[b] for b in duality.arcs}
    for t in duality.trunks:
        weights[t] = 1
    for conns in duality.connectors.values():
        for c in conns:
            weights[c] = 2
    return _TangentialMeasure(weights)


def sneak_up_accounting(duality, guide):
    """
    Totals before and after sneaking up.

    Returns
    -------
    SneakUpAccounting
        ``balanced`` states that the sneaked total equals the induced total,
        minus the pulled arcs, plus one per trunk and two per connector.
    """
    induced = induced_tangential(duality, guide)
    sneaked = sneak_up(duality, guide)
    n_conn = sum(len(c) for c in duality.connectors.values())
    return SneakUpAccounting(tuple(_pulled(duality)), induced.total(), sneaked.total(),
                             len(duality.trunks), n_conn)
