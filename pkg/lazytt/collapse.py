"""
Collapse of a bigon track carrying a lamination to a train track.

The carried lamination is stood in for by a transverse measure on the bigon
track (the carrying measure); every move transports it, so it stays
nonnegative exactly when the move carries the lamination along. Each round
works on the first bigon in region order:

1. no bigon left: stop (and comb to a generic track);
2. embedded boundary: identify the two sides by comparing prefix sums of the
   tangential measure along them;
3. both cusps on one switch: comb at that switch;
4. a switch the boundary passes twice without sharing a branch there: comb;
5. a branch the boundary passes on both sides: comb an end switch of
   valence four or more first; then split it when it avoids the cusps,
   otherwise collapse it (small) or shift along it (mixed).
"""
import logging as _logging
from collections import Counter as _Counter, namedtuple as _namedtuple

from .config import DefaultConfig
from .errors import (PreconditionError as _PreconditionError,
                     BudgetExceededError as _BudgetExceededError,
                     InvariantViolation as _InvariantViolation)
from .measures import (TransverseMeasure as _TransverseMeasure,
                       TangentialMeasure as _TangentialMeasure,
                       positive_transverse as _positive_transverse,
                       positive_tangential as _positive_tangential,
                       tangential_violations as _tangential_violations)
from .moves import (split as _split, collapse as _collapse, shift as _shift,
                    comb_step as _comb_step, transport_comb as _transport_comb,
                    transport_transverse as _transport_transverse,
                    transport_collapse as _transport_collapse,
                    transport_shift as _transport_shift, mu_direction as _mu_direction,
                    SplitRecord as _SplitRecord, COLLISION as _COLLISION, RIGHT as _RIGHT)
from .track import (Switch as _Switch, classify_branch as _classify_branch,
                    twin as _twin, LARGE as _LARGE, SMALL as _SMALL, MIXED as _MIXED)
from .dual import dual_track as _dual_track, sneak_up as _sneak_up, lift_guide as _lift_guide

__all__ = ['AlgorithmQuadruple', 'CollapseResult', 'BigonBoundary', 'bigon_boundary',
           'collapse_bigon', 'lambda_collapse', 'collapse_pipeline', 'start_quadruple']

logger = _logging.getLogger(__name__)

AlgorithmQuadruple = _namedtuple('AlgorithmQuadruple', ['track', 'carrying', 'nu', 'bigon'])
AlgorithmQuadruple.__doc__ = """
Bigon track, carrying transverse measure, positive tangential measure strict
on trigons, and the index of the bigon worked on (None without bigons).
"""

CollapseResult = _namedtuple('CollapseResult', ['track', 'tangential', 'carrying',
                                                'trace', 'steps'])

BigonBoundary = _namedtuple('BigonBoundary', ['region', 'east', 'west', 'cusps',
                                              'embedded', 'selfint', 'isolated'])
BigonBoundary.__doc__ = """
The two sides of a bigon, both listed as (branch, forward) from the first
cusp to the second; the cusp switch ids; whether the boundary is embedded;
branches it passes on both sides; switches it passes twice without such a
branch.
"""


def _bigons(track):
    return [reg for reg in track.regions if reg.is_bigon]


def bigon_boundary(track, reg):
    """ BigonBoundary of bigon region ``reg`` """
    east = [(t.branch, t.forward) for t in reg.sides[0]]
    west = [(t.branch, not t.forward) for t in reversed(reg.sides[1])]
    cusp_idx = [k for k, flag in enumerate(reg.cusp_flags) if flag]
    cusps = tuple(track.switch_of(reg.corners[k]) for k in cusp_idx)
    sw_count = _Counter(track.switch_of(c) for c in reg.corners)
    br_count = _Counter(t.branch for t in reg.traversals)
    selfint = tuple(sorted(b for b, n in br_count.items() if n > 1))
    embedded = all(n == 1 for n in sw_count.values())
    isolated = []
    for sid, n in sorted(sw_count.items()):
        if n < 2:
            continue
        sw = track.switches[sid]
        if not any(h // 2 in selfint for h in sw.side_a + sw.side_b):
            isolated.append(sid)
    return BigonBoundary(reg.index, east, west, cusps, embedded, selfint, tuple(isolated))


def _departure(step):
    b, fwd = step
    return 2 * b if fwd else 2 * b + 1


def _ccw_between(track, start, stop):
    """ Darts strictly between start and stop, counterclockwise """
    out = []
    h = track.sigma(start)
    while h != stop:
        out.append(h)
        h = track.sigma(h)
    return out


def _from_rotation(rotation, forward):
    n = len(rotation)
    start = next(i for i in range(n) if rotation[i] in forward and rotation[i - 1] not in forward)
    rot = rotation[start:] + rotation[:start]
    k = sum(1 for h in rot if h in forward)
    return _Switch(tuple(rot[:k]), tuple(reversed(rot[k:])))


def _prefix(steps, nu):
    out, tot = [], 0
    for b, _ in steps:
        tot += nu[b]
        out.append(tot)
    return out


def _replace_pair(side, pair, dart):
    out = []
    placed = False
    for h in side:
        if h in pair:
            if not placed:
                out.append(dart)
                placed = True
        else:
            out.append(h)
    return tuple(out)


def collapse_bigon(track, carrying, nu, reg):
    """
    Identify the two sides of a bigon with embedded boundary.

    The sides are cut at the prefix sums of nu along each of them; every
    piece of the common subdivision becomes one branch, reusing the smallest
    identifiers of the old side branches. Switches of either side reappear
    at their cut point (one switch where both sides are cut at the same
    point).

    Returns
    -------
    (TrainTrack, TransverseMeasure, TangentialMeasure)
        A piece carries the sum of the carrying weights of the two side
        branches over it and its length as tangential weight.
    """
    bnd = bigon_boundary(track, reg)
    if not bnd.embedded:
        raise _PreconditionError('Bigon {} does not have an embedded boundary'.format(reg.index))
    east, west = bnd.east, bnd.west
    pe, pw = _prefix(east, nu), _prefix(west, nu)
    if pe[-1] != pw[-1]:
        raise _InvariantViolation('Bigon {} sides weigh {} and {}'.format(reg.index, pe[-1], pw[-1]))
    cuts = sorted(set(pe[:-1]) | set(pw[:-1]))
    points = [0] + cuts + [pe[-1]]
    ids = sorted(set(b for b, _ in east) | set(b for b, _ in west))[:len(points) - 1]
    new_carry, new_nu = {}, {}
    for k, pid in enumerate(ids):
        hi = points[k + 1]
        be = east[next(i for i, x in enumerate(pe) if x >= hi)][0]
        bw = west[next(i for i, x in enumerate(pw) if x >= hi)][0]
        new_carry[pid] = carrying[be] + carrying[bw]
        new_nu[pid] = hi - points[k]

    interior = {}
    for i in range(len(east) - 1):
        arr, dep = _twin(_departure(east[i])), _departure(east[i + 1])
        interior.setdefault(pe[i], {})['east'] = (arr, dep)
    for j in range(len(west) - 1):
        arr, dep = _twin(_departure(west[j])), _departure(west[j + 1])
        interior.setdefault(pw[j], {})['west'] = (arr, dep)

    cut_switches = []
    for k, x in enumerate(cuts):
        arrival, departure = 2 * ids[k] + 1, 2 * ids[k + 1]
        rotation = [departure]
        forward = {departure}
        info = interior[x]
        if 'east' in info:
            arr, dep = info['east']
            extras = _ccw_between(track, dep, arr)
            rotation.extend(extras)
            forward.update(h for h in extras if track.slot(h).side == track.slot(dep).side)
        rotation.append(arrival)
        if 'west' in info:
            arr, dep = info['west']
            extras = _ccw_between(track, arr, dep)
            rotation.extend(extras)
            forward.update(h for h in extras if track.slot(h).side == track.slot(dep).side)
        cut_switches.append(_from_rotation(rotation, forward))

    start_pair = {_departure(east[0]), _departure(west[0])}
    end_pair = {_twin(_departure(east[-1])), _twin(_departure(west[-1]))}
    a_sw, b_sw = bnd.cusps
    inner = sorted(track.switch_of(c) for c in reg.corners
                   if track.switch_of(c) not in (a_sw, b_sw))
    replacement = dict(zip(inner, cut_switches))
    switches = []
    for sid, sw in enumerate(track.switches):
        if sid == a_sw:
            switches.append(_Switch(_replace_pair(sw.side_a, start_pair, 2 * ids[0]),
                                    _replace_pair(sw.side_b, start_pair, 2 * ids[0])))
        elif sid == b_sw:
            last = 2 * ids[-1] + 1
            switches.append(_Switch(_replace_pair(sw.side_a, end_pair, last),
                                    _replace_pair(sw.side_b, end_pair, last)))
        elif sid in replacement:
            switches.append(replacement[sid])
        elif sid not in inner:
            switches.append(sw)

    old = set(b for b, _ in east) | set(b for b, _ in west)
    east_set = set(b for b, _ in east)
    punctures = []
    for b, s in track.punctures:
        if b not in old:
            punctures.append((b, s))
            continue
        other = track.regions[track.region_of_side[(b, s)]]
        alt = [bs for bs in other.branch_sides() if bs[0] not in old]
        punctures.append(alt[0] if alt else (ids[0], 0 if b in east_set else 1))
    marks = [m for m in track.marked_points if m[0] not in old]
    out = track.replace(switches=switches, punctures=punctures, marked_points=marks)
    dropped = old - set(ids)
    carry = {b: carrying[b] for b in carrying if b not in old}
    carry.update(new_carry)
    tang = {b: nu[b] for b in nu if b not in old}
    tang.update(new_nu)
    logger.debug('collapsed bigon %d into %d pieces, dropped %s', reg.index, len(ids), sorted(dropped))
    return out, _TransverseMeasure(carry), _TangentialMeasure(tang)


def start_quadruple(track, carrying, nu):
    """ Check the measures and pick the first bigon """
    carrying = _TransverseMeasure(carrying)
    nu = _TangentialMeasure(nu)
    if set(carrying) != set(track.branches) or not carrying.is_consistent(track):
        raise _PreconditionError('Carrying measure must satisfy every switch condition')
    if set(nu) != set(track.branches) or not nu.is_positive():
        raise _PreconditionError('Tangential measure must be positive on every branch')
    bad = _tangential_violations(track, nu, strict_trigons=True)
    if bad:
        raise _PreconditionError('Tangential measure violates {} constraints, first {}'.format(len(bad), bad[0]))
    return AlgorithmQuadruple(track, carrying, nu, _pick_bigon(track))


def _pick_bigon(track):
    bigons = _bigons(track)
    if not bigons:
        return None
    for reg in bigons:
        if bigon_boundary(track, reg).embedded:
            return reg.index
    return bigons[0].index


def _fresh_nu(track):
    nu = _positive_tangential(track, strict_trigons=True)
    if nu is None:
        raise _InvariantViolation('{!r} lost its strict tangential measure'.format(track))
    return nu


def _comb_at(quad, sid):
    if quad.track.valence(sid) < 4:
        raise _InvariantViolation('Switch {} has valence {}; cannot comb'.format(sid, quad.track.valence(sid)))
    carrying = _transport_comb(quad.track, sid, quad.carrying)
    track, nu = _comb_step(quad.track, sid, quad.nu)
    return track, carrying, nu


def _comb_ends(quad, b):
    """ Comb the first end switch of b with valence at least four, if any """
    for sid in quad.track.endpoints(b):
        if quad.track.valence(sid) < 4:
            continue
        try:
            return _comb_at(quad, sid)
        except _PreconditionError as err:
            logger.debug('switch %d not combable: %s', sid, err)
    return None


def _split_large(quad, e):
    track = quad.track
    combed = _comb_ends(quad, e)
    if combed is not None:
        return combed, 'comb'
    direction = _mu_direction(track, quad.carrying, e)
    if direction == _COLLISION:
        direction = _RIGHT
    carrying = _transport_transverse(track, quad.carrying, _SplitRecord(e, direction))
    out, _ = _split(track, e, direction)
    return (out, carrying, _fresh_nu(out)), 'split'


def _round(quad):
    """ One action on the current bigon; returns ((track, carrying, nu), action) """
    track = quad.track
    reg = track.regions[quad.bigon]
    bnd = bigon_boundary(track, reg)
    if bnd.embedded:
        return collapse_bigon(track, quad.carrying, quad.nu, reg), 'collapse'
    if bnd.cusps[0] == bnd.cusps[1]:
        return _comb_at(quad, bnd.cusps[0]), 'comb-cusps'
    if bnd.isolated:
        return _comb_at(quad, bnd.isolated[0]), 'comb-point'
    free = [b for b in bnd.selfint if not set(track.endpoints(b)) & set(bnd.cusps)]
    if free:
        e = free[0]
        if _classify_branch(track, e) != _LARGE:
            raise _InvariantViolation('Self-intersection branch {} away from the cusps is not large'.format(e))
        return _split_large(quad, e)
    b = bnd.selfint[0]
    combed = _comb_ends(quad, b)
    if combed is not None:
        return combed, 'comb'
    kind = _classify_branch(track, b)
    if kind == _SMALL:
        res = _collapse(track, b)
        if res is None:
            raise _InvariantViolation('Small branch {} on the bigon boundary cannot be collapsed'.format(b))
        carrying = _transport_collapse(track, quad.carrying, b)
        return (res[0], carrying, _fresh_nu(res[0])), 'collapse-branch'
    if kind == _MIXED:
        carrying = _transport_shift(track, quad.carrying, b)
        out, _ = _shift(track, b)
        return (out, carrying, _fresh_nu(out)), 'shift'
    return _split_large(quad, b)


def _selfint_count(track, bigon):
    if bigon is None:
        return 0
    return len(bigon_boundary(track, track.regions[bigon]).selfint)


def lambda_collapse(quad, max_steps=None, verbose=False):
    """
    Run the collapse until no bigon is left, then comb to a generic track.

    Parameters
    ----------
    quad : AlgorithmQuadruple
        See start_quadruple.

    max_steps : int
        Default: collapse_budget_factor times the branch count.

    verbose : bool
        Print every trace line.

    Returns
    -------
    CollapseResult
        trace holds lines ``step<k> <action> bigons=<n> selfint=<n>``.
    """
    if max_steps is None:
        max_steps = DefaultConfig().collapse_budget_factor * len(quad.track.branches)
    trace = []
    steps = 0
    bigon_count = len(_bigons(quad.track))

    def record(action, track, bigon):
        line = 'step{} {} bigons={} selfint={}'.format(steps, action, len(_bigons(track)),
                                                      _selfint_count(track, bigon))
        trace.append(line)
        logger.debug(line)
        if verbose:
            print(line)

    while quad.bigon is not None:
        if steps >= max_steps:
            raise _BudgetExceededError('Collapse exceeded {} steps'.format(max_steps))
        (track, carrying, nu), action = _round(quad)
        if any(v < 0 for v in carrying.values()):
            raise _InvariantViolation('Carrying measure went negative after {}'.format(action))
        steps += 1
        if action == 'collapse':
            now = len(_bigons(track))
            if now >= bigon_count:
                raise _InvariantViolation('Bigon count did not drop: {} -> {}'.format(bigon_count, now))
            bigon_count = now
        quad = AlgorithmQuadruple(track, carrying, nu, _pick_bigon(track))
        record(action, track, quad.bigon)

    track = quad.track.replace(allows_bigons=False)
    nu, carrying = quad.nu, quad.carrying
    while True:
        target = next((sid for sid, sw in enumerate(track.switches) if sw.valence >= 4), None)
        if target is None:
            break
        if steps >= max_steps:
            raise _BudgetExceededError('Collapse exceeded {} steps'.format(max_steps))
        track, nu, carrying = _comb_once(track, nu, carrying, target)
        steps += 1
        record('comb', track, None)
    logger.info('collapse finished after %d steps', steps)
    return CollapseResult(track, nu, carrying, tuple(trace), steps)


def _comb_once(track, nu, carrying, sid):
    carrying = _transport_comb(track, sid, carrying)
    track, nu = _comb_step(track, sid, nu)
    return track, nu, carrying


def collapse_pipeline(track, guide, max_steps=None, verbose=False):
    """
    Dual bigon track, sneaked-up measure and collapse, from a complete
    track and an integral guide (weights at least 4). A guide that does
    not clear the arcs pulled by sneaking up is lifted first.

    Returns
    -------
    (DualityData, CollapseResult)
    """
    duality = _dual_track(track)
    nu = _sneak_up(duality, _lift_guide(duality, guide))
    carrying = _positive_transverse(duality.track)
    if carrying is None:
        raise _PreconditionError('Dual bigon track is not recurrent')
    quad = start_quadruple(duality.track, carrying, nu)
    return duality, lambda_collapse(quad, max_steps, verbose)
