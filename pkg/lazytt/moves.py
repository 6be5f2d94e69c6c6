"""
Elementary moves on train tracks and bigon tracks.

Branch identifiers are stable: a split keeps the identifier of the split
branch on its diagonal, a collapse keeps the identifier of the collapsed
small branch on the resulting large branch, and a shift keeps every
identifier. The natural branch bijection is therefore the identity on
identifiers (minus the removed branch for a collision).

Split geometry at a large branch e with corners (see ``track.corners``)::

    right split:  U = (a, h0, d)  V = (c, h1, b)   winners a, c
    left split:   U = (b, c, h0)  V = (d, a, h1)   winners b, d

listed as counterclockwise rotations with the winner (the lone dart) first.
"""
import logging as _logging
from collections import namedtuple as _namedtuple
from collections.abc import Mapping as _Mapping
from fractions import Fraction as _Fraction

from .errors import (PreconditionError as _PreconditionError,
                     InfeasibleError as _InfeasibleError)
from .measures import (TransverseMeasure as _TransverseMeasure,
                       TangentialMeasure as _TangentialMeasure)
from .nonh5utils import as_fraction as _as_fraction
from .track import (Switch as _Switch, LARGE as _LARGE, SMALL as _SMALL,
                    MIXED as _MIXED, classify_branch as _classify_branch,
                    corners as _corners, twin as _twin, branch_of as _branch_of,
                    end_of as _end_of)

__all__ = ['RIGHT', 'LEFT', 'COLLISION', 'SplitRecord', 'SlotBijection',
           'split', 'collide', 'collapse', 'shift', 'smoothed', 'apply_record',
           'apply_records', 'mu_direction', 'transport_transverse',
           'transport_shift', 'transport_collapse', 'comb_step',
           'transport_comb', 'comb', 'comb_switch', 'excess_valence',
           'split_branches_touch', 'parse_direction']

logger = _logging.getLogger(__name__)

RIGHT = 'R'
LEFT = 'L'
COLLISION = 'X'

_DIRECTION_NAMES = {'R': RIGHT, 'RIGHT': RIGHT, 'L': LEFT, 'LEFT': LEFT,
                    'X': COLLISION, 'COLLISION': COLLISION}

SplitRecord = _namedtuple('SplitRecord', ['slot', 'direction'])
SplitRecord.__doc__ = """ Split at branch ``slot`` in direction 'R', 'L' or 'X' """


def parse_direction(value):
    """ Normalize R, L, X (or RIGHT, LEFT, COLLISION) """
    try:
        return _DIRECTION_NAMES[str(value).upper()]
    except KeyError:
        raise _PreconditionError('Unknown direction {!r}'.format(value)) from None


class SlotBijection(_Mapping):
    """
    Natural bijection between branch identifiers of a track and its image.

    Attributes
    ----------
    diagonal : int or None
        Branch that became the diagonal of a split (or was removed by a
        collision).
    """
    def __init__(self, mapping, diagonal=None):
        self._map = dict(mapping)
        self.diagonal = diagonal

    @classmethod
    def identity(cls, branches, diagonal=None, removed=()):
        removed = set(removed)
        return cls({b: b for b in branches if b not in removed}, diagonal)

    def __getitem__(self, b):
        return self._map[b]

    def __iter__(self):
        return iter(sorted(self._map))

    def __len__(self):
        return len(self._map)

    def __repr__(self):
        return '<SlotBijection {} slots, diagonal={}>'.format(len(self._map), self.diagonal)

    def compose(self, after):
        """ Apply self, then after """
        return SlotBijection({b: after[v] for b, v in self._map.items() if v in after},
                             after.diagonal)

    def is_identity(self):
        return all(k == v for k, v in self._map.items())


def _trivalent(rotation, lone_side=0):
    """ Switch with ccw rotation (x, y, z), x alone on side lone_side """
    x, y, z = rotation
    if lone_side == 0:
        return _Switch((x,), (z, y))
    return _Switch((y, z), (x,))


def _bivalent(x, y, x_side=0):
    if x_side == 0:
        return _Switch((x,), (y,))
    return _Switch((y,), (x,))


def _relocate_marks(track, moved):
    """
    Puncture marks with those on the moved branches placed on another side
    of the same region.
    """
    moved = set(moved)
    out = []
    for b, s in track.punctures:
        if b in moved:
            reg = track.regions[track.region_of_side[(b, s)]]
            alt = [bs for bs in reg.branch_sides() if bs[0] not in moved]
            if alt:
                out.append(alt[0])
                continue
        out.append((b, s))
    return out


def _require_kind(track, b, kind, verb):
    got = _classify_branch(track, b)
    if got != kind:
        err_str1 = 'Cannot {} at branch {}: '.format(verb, b)
        raise _PreconditionError(err_str1 + 'it is {}, not {}'.format(got, kind))


def _require_trivalent_ends(track, b, verb):
    s0, s1 = track.endpoints(b)
    if s0 == s1:
        raise _PreconditionError('Cannot {} at branch {}: both ends on switch {}'.format(verb, b, s0))
    for sid in (s0, s1):
        if track.valence(sid) != 3:
            err_str1 = 'Cannot {} at branch {}: '.format(verb, b)
            raise _PreconditionError(err_str1 + 'switch {} has valence {}'.format(sid, track.valence(sid)))
    return s0, s1


def split(track, e, direction):
    """
    Split at a large branch.

    Parameters
    ----------
    track : TrainTrack

    e : int
        Large branch with trivalent end switches.

    direction : str
        'R' (winners a, c) or 'L' (winners b, d).

    Returns
    -------
    (TrainTrack, SlotBijection)
        e is the diagonal of the split track.
    """
    direction = parse_direction(direction)
    if direction == COLLISION:
        raise _PreconditionError('Use collide for collisions')
    _require_kind(track, e, _LARGE, 'split')
    s0, s1 = _require_trivalent_ends(track, e, 'split')
    h0, h1, a, b, c, d = _corners(track, e)
    k0, k1 = track.slot(h0).side, track.slot(h1).side
    if direction == RIGHT:
        u = _trivalent((a, h0, d), k0)
        v = _trivalent((c, h1, b), k1)
    else:
        u = _trivalent((b, c, h0), k0)
        v = _trivalent((d, a, h1), k1)
    sws = list(track.switches)
    sws[s0] = u
    sws[s1] = v
    punct = _relocate_marks(track, [e])
    out = track.replace(switches=sws, punctures=punct)
    logger.debug('split %s at %d', direction, e)
    return out, SlotBijection.identity(track.branches, diagonal=e)


def collide(track, e, direction=None):
    """
    Split at e followed by removal of the diagonal.

    Both split directions give the same collision; ``direction`` is accepted
    for symmetry with split and ignored. The two new switches are bivalent;
    see smoothed.

    Returns
    -------
    (TrainTrack, SlotBijection)
        The bijection omits e.
    """
    _require_kind(track, e, _LARGE, 'collide')
    s0, s1 = _require_trivalent_ends(track, e, 'collide')
    h0, h1, a, b, c, d = _corners(track, e)
    k0, k1 = track.slot(h0).side, track.slot(h1).side
    sws = list(track.switches)
    sws[s0] = _bivalent(a, d, k0)
    sws[s1] = _bivalent(c, b, k1)
    punct = _relocate_marks(track, [e])
    marks = [m for m in track.marked_points if m[0] != e]
    out = track.replace(switches=sws, punctures=punct, marked_points=marks)
    return out, SlotBijection.identity(track.branches, diagonal=e, removed=[e])


def collapse(track, b):
    """
    Reverse of a split.

    Parameters
    ----------
    track : TrainTrack

    b : int
        Small branch with trivalent end switches.

    Returns
    -------
    (TrainTrack, SlotBijection) or None
        None when the two end switches face opposite ways (the configuration
        that no split produces).
    """
    _require_kind(track, b, _SMALL, 'collapse')
    su, sv = _require_trivalent_ends(track, b, 'collapse')
    h0, h1 = 2 * b, 2 * b + 1

    def lone(sid):
        sw = track.switches[sid]
        return (sw.side_a[0], 0) if len(sw.side_a) == 1 else (sw.side_b[0], 1)

    x, kx = lone(su)
    z, kz = lone(sv)
    right_u = track.sigma(x) == h0
    right_v = track.sigma(z) == h1
    if right_u != right_v:
        logger.debug('branch %d is not collapsible', b)
        return None
    if right_u:
        # U = (a, h0, d), V = (c, h1, b)
        a, dd = x, track.sigma(h0)
        c, bb = z, track.sigma(h1)
    else:
        # U = (b, c, h0), V = (d, a, h1)
        bb, c = x, track.sigma(x)
        dd, a = z, track.sigma(z)
    sws = list(track.switches)
    sws[su] = _trivalent((h0, a, bb), kx)
    sws[sv] = _trivalent((h1, c, dd), kz)
    punct = _relocate_marks(track, [b])
    out = track.replace(switches=sws, punctures=punct)
    return out, SlotBijection.identity(track.branches)


def _shift_data(track, b):
    _require_kind(track, b, _MIXED, 'shift')
    _require_trivalent_ends(track, b, 'shift')
    if track.is_large_half(2 * b):
        hl, hs = 2 * b, 2 * b + 1
    else:
        hl, hs = 2 * b + 1, 2 * b
    q = track.switch_of(hs)
    p = track.switch_of(hl)
    sw_q = track.switches[q]
    z, kz = (sw_q.side_a[0], 0) if len(sw_q.side_a) == 1 else (sw_q.side_b[0], 1)
    y = next(h for h in track.side_of(hs) if h != hs)
    p_first = track.sigma(hl)
    p_second = track.sigma(p_first)
    case_a = track.sigma(hs) == y
    return hl, hs, p, q, z, kz, y, p_first, p_second, case_a


def shift(track, b):
    """
    Shift along a mixed branch.

    The neighbour sharing the small end of b slides along b past its large
    end; b stays mixed with its roles exchanged, so shifting twice is the
    identity.

    Returns
    -------
    (TrainTrack, SlotBijection)
    """
    hl, hs, p, q, z, kz, y, p_first, p_second, case_a = _shift_data(track, b)
    kl = track.slot(hl).side
    sws = list(track.switches)
    if case_a:
        sws[q] = _trivalent((z, p_first, hs), kz)
        sws[p] = _trivalent((hl, p_second, y), kl)
    else:
        sws[q] = _trivalent((z, hs, p_second), kz)
        sws[p] = _trivalent((hl, y, p_first), kl)
    punct = _relocate_marks(track, [b])
    out = track.replace(switches=sws, punctures=punct)
    return out, SlotBijection.identity(track.branches)


def transport_shift(track, measure, b):
    """ Transverse measure on shift(track, b) """
    hl, hs, p, q, z, kz, y, p_first, p_second, case_a = _shift_data(track, b)
    w = _TransverseMeasure(measure)
    other = p_second if case_a else p_first
    return w.updated({b: w[_branch_of(other)] + w[_branch_of(y)]})


def transport_collapse(track, measure, b):
    """ Transverse measure on collapse(track, b); None if not collapsible """
    res = collapse(track, b)
    if res is None:
        return None
    out, _ = res
    w = _TransverseMeasure(measure)
    h0 = 2 * b
    a = out.sigma(h0)
    bb = out.sigma(a)
    return w.updated({b: w[_branch_of(a)] + w[_branch_of(bb)]})


def smoothed(track):
    """
    Erase bivalent switches off closed-curve components.

    The two branches through a bivalent switch merge into the first one;
    marks on the second one follow, with their side flipped when the merged
    branch runs against it.
    """
    current = track
    while True:
        closed = set()
        for comp in current.components:
            if all(current.valence(s) == 2 for s in comp):
                closed.update(comp)
        target = next((sid for sid, sw in enumerate(current.switches)
                       if sw.valence == 2 and sid not in closed), None)
        if target is None:
            return current
        sw = current.switches[target]
        x, y = sw.side_a[0], sw.side_b[0]
        bx, by = _branch_of(x), _branch_of(y)
        if bx == by:
            return current
        flip = _end_of(x) == _end_of(y)
        far = _twin(y)
        sws = []
        for sid, other in enumerate(current.switches):
            if sid == target:
                continue
            sws.append(_Switch(tuple(x if h == far else h for h in other.side_a),
                               tuple(x if h == far else h for h in other.side_b)))

        def move(marks):
            out = []
            for b, s in marks:
                if b == by:
                    out.append((bx, 1 - s if flip else s))
                else:
                    out.append((b, s))
            return out

        current = current.replace(switches=sws, punctures=move(current.punctures),
                                  marked_points=move(current.marked_points))


def apply_record(track, record):
    """ Track after one SplitRecord """
    direction = parse_direction(record.direction)
    if direction == COLLISION:
        return collide(track, record.slot)[0]
    return split(track, record.slot, direction)[0]


def apply_records(track, records):
    for rec in records:
        track = apply_record(track, rec)
    return track


def mu_direction(track, measure, e):
    """
    Split direction chosen by a transverse measure.

    Returns
    -------
    str
        'R' if mu(a) > mu(d), 'L' if mu(a) < mu(d), 'X' if equal.
    """
    _require_kind(track, e, _LARGE, 'choose a direction')
    if _as_fraction(measure[e]) == 0:
        raise _PreconditionError('Branch {} carries no mass'.format(e))
    _, _, a, _, _, d = _corners(track, e)
    wa = _as_fraction(measure[_branch_of(a)])
    wd = _as_fraction(measure[_branch_of(d)])
    if wa > wd:
        return RIGHT
    if wa < wd:
        return LEFT
    return COLLISION


def transport_transverse(track, measure, record):
    """
    Carried transverse measure on the image of a split or collision.

    Parameters
    ----------
    track : TrainTrack

    measure : mapping branch -> rational
        Switch consistent on track.

    record : SplitRecord

    Returns
    -------
    TransverseMeasure
        Corner weights are unchanged; the diagonal gets |mu(a) - mu(d)|, a
        collision drops e.

    Raises
    ------
    PreconditionError
        When the direction is incompatible with the measure; the message
        names the violated inequality.
    """
    w = _TransverseMeasure(measure)
    e = record.slot
    direction = parse_direction(record.direction)
    _require_kind(track, e, _LARGE, 'transport')
    _, _, a, _, _, d = _corners(track, e)
    wa, wd = w[_branch_of(a)], w[_branch_of(d)]
    if direction == RIGHT:
        if wa < wd:
            raise _PreconditionError('Right split needs mu(a) >= mu(d): {} < {}'.format(wa, wd))
        return w.updated({e: wa - wd})
    if direction == LEFT:
        if wd < wa:
            raise _PreconditionError('Left split needs mu(d) >= mu(a): {} < {}'.format(wd, wa))
        return w.updated({e: wd - wa})
    if wa != wd:
        raise _PreconditionError('Collision needs mu(a) = mu(d): {} != {}'.format(wa, wd))
    return w.updated({}, drop=[e])


def split_branches_touch(track, e1, e2):
    """ Whether two branches share an end switch """
    return bool(set(track.endpoints(e1)) & set(track.endpoints(e2)))


# --- combing ---------------------------------------------------------------

def excess_valence(track):
    """ Sum over switches of max(0, valence - 3) """
    return sum(max(0, sw.valence - 3) for sw in track.switches)


def _comb_slots(track, s):
    sw = track.switches[s]
    if sw.valence < 4:
        raise _PreconditionError('Switch {} has valence {}; nothing to comb'.format(s, sw.valence))
    if len(sw.side_a) >= len(sw.side_b):
        order, k = sw.side_a, 0
    else:
        order, k = tuple(reversed(sw.side_b)), 1
    hp, hq = order[-2], order[-1]
    if _twin(hp) == hq:
        raise _PreconditionError('Switch {}: outermost slots belong to one loop'.format(s))
    new = max(track.branches) + 1
    return k, hp, hq, _branch_of(hp), new


def _combed_track(track, s):
    k, hp, hq, beta, new = _comb_slots(track, s)
    far = _twin(hp)
    c2_far = 2 * new + _end_of(far)
    c2_w = 2 * new + _end_of(hp)
    sws = []
    for sid, sw in enumerate(track.switches):
        sa = tuple(c2_far if h == far else h for h in sw.side_a if h != hq or sid != s)
        sb = tuple(c2_far if h == far else h for h in sw.side_b if h != hq or sid != s)
        sws.append(_Switch(sa, sb))
    sws.append(_Switch((far,), (hq, c2_w)))
    punct = [(new, side) if b == beta else (b, side) for b, side in track.punctures]
    out = track.replace(switches=sws, punctures=punct)
    return out, hq, beta, new


def _affine_sides(region, weights):
    out = []
    for side in region.sides:
        const, coef = _Fraction(0), _Fraction(0)
        for t in side:
            c0, c1 = weights[t.branch]
            const += c0
            coef += c1
        out.append((const, coef))
    return out


def _admissible_q(track, weights, upper):
    """ Open interval of q (or a single point) keeping tangential constraints """
    lo, hi = _Fraction(0), upper
    point = None
    for reg in track.regions:
        sides = _affine_sides(reg, weights)
        if reg.is_bigon:
            (c0, b0), (c1, b1) = sides
            if b0 == b1:
                if c0 != c1:
                    return None
            else:
                q0 = (c1 - c0) / (b0 - b1)
                if point is not None and point != q0:
                    return None
                point = q0
        elif reg.is_trigon:
            for i in range(3):
                ci, bi = sides[i]
                cj, bj = sides[(i + 1) % 3]
                ck, bk = sides[(i + 2) % 3]
                const, coef = ci - cj - ck, bi - bj - bk
                # const + coef * q < 0
                if coef == 0:
                    if const >= 0:
                        return None
                elif coef > 0:
                    hi = min(hi, -const / coef)
                else:
                    lo = max(lo, -const / coef)
    if point is not None:
        return (point, point) if lo < point < hi else None
    if lo >= hi:
        return None
    return lo, hi


def comb_step(track, s, nu):
    """
    Move the outermost branch at a switch of valence >= 4 onto its neighbour.

    Parameters
    ----------
    track : TrainTrack
        Bigon track (or train track).

    s : int
        Switch of valence at least 4.

    nu : mapping branch -> rational
        Positive tangential measure, strict on trigons.

    Returns
    -------
    (TrainTrack, TangentialMeasure)
        The neighbour branch keeps its identifier on the piece next to s and
        gets weight q; the far piece is a new branch with weight
        nu(neighbour) - q and the moved branch drops by q. q is the midpoint
        of the admissible interval.

    Raises
    ------
    InfeasibleError
        No admissible q.
    """
    k, hp, hq, beta, new = _comb_slots(track, s)
    side = track.switches[s].side(k)
    upper = min(_as_fraction(nu[_branch_of(h)]) for h in side)
    out, moved_dart, beta, new = _combed_track(track, s)
    moved = _branch_of(moved_dart)
    affine = {b: (_as_fraction(nu[b]), _Fraction(0)) for b in track.branches}
    affine[beta] = (_Fraction(0), _Fraction(1))
    affine[new] = (_as_fraction(nu[beta]), _Fraction(-1))
    c0, c1 = affine[moved]
    affine[moved] = (c0, c1 - 1)
    interval = _admissible_q(out, affine, upper)
    if interval is None:
        err_str1 = 'No admissible slack when combing switch {}; '.format(s)
        raise _InfeasibleError(err_str1 + 'measure is not strict on trigons')
    q = (interval[0] + interval[1]) / 2
    weights = {b: c0 + c1 * q for b, (c0, c1) in affine.items()}
    logger.debug('comb switch %d: moved %d onto %d with q=%s', s, moved, beta, q)
    return out, _TangentialMeasure(weights)


def transport_comb(track, s, measure):
    """ Transverse measure on the combed track of comb_step(track, s, .) """
    k, hp, hq, beta, new = _comb_slots(track, s)
    w = _TransverseMeasure(measure)
    moved = _branch_of(hq)
    return w.updated({beta: w[beta] + w[moved], new: w[beta]})


def comb(track, nu, transverse=None, verbose=False):
    """
    Comb until generic.

    Parameters
    ----------
    track : TrainTrack

    nu : mapping
        Positive tangential measure, strict on trigons.

    transverse : mapping or None
        Transverse measure carried along.

    verbose : bool
        Print one line per step.

    Returns
    -------
    (TrainTrack, TangentialMeasure, TransverseMeasure or None, int)
        Combed track, measures and the number of steps, which equals the
        initial excess valence.
    """
    steps = 0
    nu = _TangentialMeasure(nu)
    while True:
        target = next((sid for sid, sw in enumerate(track.switches) if sw.valence >= 4), None)
        if target is None:
            return track, nu, transverse, steps
        if transverse is not None:
            transverse = transport_comb(track, target, transverse)
        track, nu = comb_step(track, target, nu)
        steps += 1
        if verbose:
            print('comb step {}: switch {}, excess {}'.format(steps, target, excess_valence(track)))


def comb_switch(track, s):
    """
    One combing move at switch s without a measure.

    The outermost branch on the longer side of s is moved onto its
    neighbour, which is subdivided by a new branch.
    """
    return _combed_track(track, s)[0]
