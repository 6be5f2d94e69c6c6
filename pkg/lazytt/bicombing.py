"""
Special trainpaths, multi-splits and tight multi-sequences.

A special path alternates large and small branches (starting and ending
large) and passes its interior switches with alternating turns. Turning at
a switch means entering through dart p and leaving through dart q; the turn
is 'L' when q follows p counterclockwise and 'R' otherwise.
"""
import logging as _logging
from collections import namedtuple as _namedtuple
from concurrent.futures import ThreadPoolExecutor as _ThreadPoolExecutor
from fractions import Fraction as _Fraction

import networkx as _nx

from .canonical import canonical_label as _canonical_label
from .config import DefaultConfig
from .errors import (PreconditionError as _PreconditionError,
                     BudgetExceededError as _BudgetExceededError,
                     InvariantViolation as _InvariantViolation,
                     NotInStripError as _NotInStripError)
from .measures import TransverseMeasure as _TransverseMeasure
from .moves import (SplitRecord as _SplitRecord, split as _split,
                    transport_transverse as _transport_transverse,
                    parse_direction as _parse_direction, RIGHT as _RIGHT, LEFT as _LEFT)
from .strips import (SplittingSequence as _SplittingSequence, enumerate_strip as _enumerate_strip,
                     front_loadable as _front_loadable, project_meet as _project_meet,
                     join_theta as _join_theta, strip_meet as _strip_meet)
from .track import (classify_branch as _classify_branch, large_branches as _large_branches,
                    corners as _corners, twin as _twin, branch_of as _branch_of,
                    LARGE as _LARGE, SMALL as _SMALL)

__all__ = ['SymmetricPath', 'NonSplittable', 'RhoSplit', 'CircleSplit', 'SigmaMove',
           'TightMultiSequence', 'find_symmetric_paths', 'trace_path',
           'level_one_split', 'rho_multi_split', 'full_rho_multi_split',
           'circle_multi_split', 'dehn_twist', 'twist_connectors', 'twist_sign',
           'level_one_config', 'sigma_move', 'tight_multi_sequence', 'combing_line',
           'fellow_traveller_constant']

logger = _logging.getLogger(__name__)

SymmetricPath = _namedtuple('SymmetricPath', ['track', 'branches', 'entries', 'turns',
                                              'circle', 'direction'])
SymmetricPath.__new__.__defaults__ = (None,)
SymmetricPath.__doc__ = """
Special trainpath or circle.

``entries[i]`` is the dart through which the path enters branch i;
``turns[i]`` is the turn at the switch after branch i; ``direction`` is the
split direction used when no neighbour decides it.
"""

NonSplittable = _namedtuple('NonSplittable', ['branch'])
NonSplittable.__doc__ = """ No split at this large branch stays in the strip """

RhoSplit = _namedtuple('RhoSplit', ['track', 'records', 'residual'])
CircleSplit = _namedtuple('CircleSplit', ['track', 'records', 'measure', 'period'])
SigmaMove = _namedtuple('SigmaMove', ['track', 'phi', 'configs', 'records'])


class TightMultiSequence:
    """
    Stations from a track to a target, each one sigma-move after the last.

    Attributes
    ----------
    strip : FlatStrip
        E(track, target)

    stations : tuple of StripVertex

    moves : tuple of SigmaMove
    """
    def __init__(self, strip, stations, moves):
        self.strip = strip
        self.stations = tuple(stations)
        self.moves = tuple(moves)

    def __len__(self):
        return len(self.stations)

    def __repr__(self):
        return '<TightMultiSequence: {} stations>'.format(len(self.stations))

    @property
    def phis(self):
        return [st.phi for st in self.stations]


def _turn(track, p, q):
    return _LEFT if track.sigma(p) == q else _RIGHT


def _opposite(track, h):
    slot = track.slot(h)
    return track.switches[slot.switch].side(1 - slot.side)


def trace_path(track, branches, first, circle=False, direction=None):
    """
    Special path through ``branches`` entering the first one at dart ``first``.

    Returns
    -------
    SymmetricPath or None
        None unless the branches alternate large/small, pass every switch
        smoothly with alternating turns and visit no switch twice.
    """
    branches = tuple(branches)
    n = len(branches)
    if not n or _branch_of(first) != branches[0]:
        return None
    if circle and n % 2:
        return None
    entries = [first]
    turns = []
    switches = [track.switch_of(first)]
    for i, b in enumerate(branches):
        if _classify_branch(track, b) != (_LARGE if i % 2 == 0 else _SMALL):
            return None
        arrival = _twin(entries[-1])
        sid = track.switch_of(arrival)
        last = i == n - 1
        if last and not circle:
            if sid in switches:
                return None
            break
        if last:
            q = entries[0]
            if track.switch_of(q) != sid or sid != switches[0]:
                return None
            if q not in _opposite(track, arrival):
                return None
        else:
            if sid in switches:
                return None
            cands = [h for h in _opposite(track, arrival) if _branch_of(h) == branches[i + 1]]
            if len(cands) != 1:
                return None
            q = cands[0]
            switches.append(sid)
            entries.append(q)
        turns.append(_turn(track, arrival, q))
    cyclic = turns + turns[:1] if circle else turns
    if any(t == u for t, u in zip(cyclic[:-1], cyclic[1:])):
        return None
    return SymmetricPath(track, branches, tuple(entries), tuple(turns), bool(circle), direction)


def _grow(track, e, first):
    """ Paths and circles grown forward from large branch e entered at dart first """
    paths, circles = [], []

    def step(branches, entries, turns, switches):
        arrival = _twin(entries[-1])
        sid = track.switch_of(arrival)
        extended = False
        for q in _opposite(track, arrival):
            qb = _branch_of(q)
            if qb in branches or _classify_branch(track, qb) != _SMALL or sid in switches:
                continue
            t1 = _turn(track, arrival, q)
            if turns and turns[-1] == t1:
                continue
            arr2 = _twin(q)
            opp2 = _opposite(track, arr2)
            if len(opp2) != 1:
                continue
            q2 = opp2[0]
            t2 = _turn(track, arr2, q2)
            if t2 == t1:
                continue
            if q2 == entries[0]:
                cyc = turns + [t1, t2]
                if cyc[-1] != cyc[0]:
                    circles.append(SymmetricPath(track, tuple(branches + [qb]),
                                                 tuple(entries + [q]), tuple(cyc), True))
                continue
            sid2 = track.switch_of(arr2)
            q2b = _branch_of(q2)
            if q2b in branches or _classify_branch(track, q2b) != _LARGE:
                continue
            if sid2 in switches or sid2 == sid:
                continue
            extended = True
            step(branches + [qb, q2b], entries + [q, q2], turns + [t1, t2],
                 switches + [sid, sid2])
        if not extended:
            paths.append(SymmetricPath(track, tuple(branches), tuple(entries), tuple(turns), False))

    step([e], [first], [], [track.switch_of(first)])
    return paths, circles


def _contained(inner, outer):
    n, m = len(inner), len(outer)
    if n >= m:
        return False
    for seq in (outer, outer[::-1]):
        for k in range(m - n + 1):
            if seq[k:k + n] == inner:
                return True
    return False


def find_symmetric_paths(track):
    """
    Maximal special paths and special circles.

    Returns
    -------
    list of SymmetricPath
        Circles first, then paths; each sorted by smallest branch. A path is
        listed in the orientation whose branch tuple is smaller.
    """
    paths, circles = [], {}
    for e in _large_branches(track):
        for first in (2 * e, 2 * e + 1):
            found_paths, found_circles = _grow(track, e, first)
            paths.extend(found_paths)
            for circ in found_circles:
                circles.setdefault(frozenset(circ.branches), circ)
    unique = {}
    for path in paths:
        seq = path.branches
        if seq > seq[::-1]:
            continue
        if len(seq) == 1 and path.entries[0] % 2:
            continue
        unique.setdefault((seq, path.entries), path)
    kept = []
    for path in unique.values():
        if any(_contained(path.branches, other.branches) for other in unique.values()):
            continue
        if any(set(path.branches) <= key for key in circles):
            continue
        kept.append(path)
    kept.sort(key=lambda p: (min(p.branches), p.branches, p.entries))
    circ_list = sorted(circles.values(), key=lambda p: (min(p.branches), p.branches))
    return circ_list + kept


def twist_connectors(track):
    """ Special circles made of one large and one small branch """
    return [p for p in find_symmetric_paths(track) if p.circle and len(p.branches) == 2]


def _as_connector(track, connector):
    if isinstance(connector, SymmetricPath):
        branches = set(connector.branches)
    else:
        branches = set(connector)
    for circ in twist_connectors(track):
        if set(circ.branches) == branches:
            return circ
    raise _PreconditionError('Branches {} are not a twist connector'.format(sorted(branches)))


def twist_sign(track, connector, guide=None):
    """
    '+' or '-': the turn where the connector passes from its large to its
    small branch, 'L' giving '+'.

    A guide, when given, must put positive mass on both connector branches.
    """
    circ = _as_connector(track, connector)
    if guide is not None and any(guide[b] <= 0 for b in circ.branches):
        raise _PreconditionError('Guide does not cross the connector')
    return '+' if circ.turns[0] == _LEFT else '-'


def _neighbours(path, i):
    n = len(path.branches)
    out = set()
    if i > 0 or path.circle:
        out.add(path.branches[i - 1])
    if i < n - 1 or path.circle:
        out.add(path.branches[(i + 1) % n])
    out.discard(path.branches[i])
    return out


def _rho_direction(track, b, neighbours, default):
    h0, h1, a, bb, c, d = _corners(track, b)
    votes = set()
    for dart, vote in ((a, _RIGHT), (bb, _LEFT), (c, _RIGHT), (d, _LEFT)):
        if _branch_of(dart) in neighbours:
            votes.add(vote)
    if len(votes) > 1:
        raise _PreconditionError('Path neighbours of branch {} ask for both directions'.format(b))
    if votes:
        return votes.pop()
    if default is None:
        raise _PreconditionError('No neighbour decides the split at branch {}'.format(b))
    return _parse_direction(default)


def level_one_split(track, path, direction=None):
    """
    One split at every branch of the path, each as soon as it is large.

    Returns
    -------
    (TrainTrack, tuple of SplitRecord)
    """
    if direction is None:
        direction = path.direction
    pending = list(range(len(path.branches)))
    records = []
    current = track
    while pending:
        idx = next((i for i in pending
                    if _classify_branch(current, path.branches[i]) == _LARGE), None)
        if idx is None:
            left = [path.branches[i] for i in pending]
            raise _InvariantViolation('Multi-split stalled with branches {} pending'.format(left))
        b = path.branches[idx]
        d = _rho_direction(current, b, _neighbours(path, idx), direction)
        current, _ = _split(current, b, d)
        records.append(_SplitRecord(b, d))
        pending.remove(idx)
    return current, tuple(records)


def _residual(track, branches, direction):
    m = len(branches)
    for length in range(m - 2, 0, -1):
        for k in range(m - length + 1):
            window = branches[k:k + length]
            for first in (2 * window[0], 2 * window[0] + 1):
                path = trace_path(track, window, first, direction=direction)
                if path is not None:
                    return path
    return None


def _check_path(track, path):
    again = trace_path(track, path.branches, path.entries[0], path.circle, path.direction)
    if again is None:
        raise _PreconditionError('Branches {} are not a special path here'.format(list(path.branches)))
    return again


def rho_multi_split(track, path, direction=None):
    """
    Level-one multi-split along a special path.

    Returns
    -------
    RhoSplit
        The split track, the records, and the longest special window of the
        image of the path (None when trivial).
    """
    if path.circle:
        raise _PreconditionError('Use circle_multi_split for circles')
    path = _check_path(track, path)
    if direction is None:
        direction = path.direction
    out, records = level_one_split(track, path, direction)
    return RhoSplit(out, records, _residual(out, path.branches, direction))


def full_rho_multi_split(track, path, direction=None):
    """
    Repeat rho_multi_split on residuals until none is left.

    Returns
    -------
    (TrainTrack, tuple of SplitRecord, int)
        Final track, all records and the number of rounds.
    """
    res = rho_multi_split(track, path, direction)
    records = list(res.records)
    rounds = 1
    while res.residual is not None:
        res = rho_multi_split(res.track, res.residual, direction)
        records.extend(res.records)
        rounds += 1
        logger.debug('multi-split round %d: %d records', rounds, len(res.records))
    return res.track, tuple(records), rounds


def _circle_pass(track, circle, measure):
    out, records = level_one_split(track, circle, circle.direction)
    if measure is not None:
        current = track
        for rec in records:
            measure = _transport_transverse(current, measure, rec)
            current, _ = _split(current, rec.slot, rec.direction)
    return out, records, measure


def circle_multi_split(track, circle, measure=None, max_iterations=None):
    """
    One split at every branch of a special circle, repeated until the
    canonical form of the starting track comes back.

    Parameters
    ----------
    track : TrainTrack

    circle : SymmetricPath
        A circle of track.

    measure : mapping or None
        Transverse measure transported through the first pass.

    max_iterations : int
        Default from DefaultConfig().max_twist_iterations.

    Returns
    -------
    CircleSplit
        Image after one pass, its records and measure, and the number of
        passes after which the canonical form recurs.
    """
    if not circle.circle:
        raise _PreconditionError('Path is not a circle')
    if max_iterations is None:
        max_iterations = DefaultConfig().max_twist_iterations
    circle = _check_path(track, circle)
    if measure is not None:
        measure = _TransverseMeasure(measure)
    start = _canonical_label(track)
    first = _circle_pass(track, circle, measure)
    current = first[0]
    period = 1
    while _canonical_label(current) != start:
        if period >= max_iterations:
            raise _BudgetExceededError('No recurrence after {} circle passes'.format(period))
        again = trace_path(current, circle.branches, _first_entry(current, circle),
                           True, circle.direction)
        if again is None:
            raise _InvariantViolation('Image of the circle is no longer special')
        current = _circle_pass(current, again, None)[0]
        period += 1
    logger.info('circle %s recurs after %d passes', list(circle.branches), period)
    return CircleSplit(first[0], first[1], first[2], period)


def _first_entry(track, circle):
    for first in (2 * circle.branches[0], 2 * circle.branches[0] + 1):
        if trace_path(track, circle.branches, first, True) is not None:
            return first
    return circle.entries[0]


def dehn_twist(track, circle, measure=None):
    """
    Full twist along a special circle: as many circle passes as its period.

    Returns
    -------
    CircleSplit
        Track and measure after all passes, every record, and the period.
    """
    if not isinstance(circle, SymmetricPath):
        circle = _as_connector(track, circle)
    info = circle_multi_split(track, circle, measure)
    current = track
    records = []
    if measure is not None:
        measure = _TransverseMeasure(measure)
    for _ in range(info.period):
        path = trace_path(current, circle.branches, _first_entry(current, circle), True)
        current, recs, measure = _circle_pass(current, path, measure)
        records.extend(recs)
    return CircleSplit(current, tuple(records), measure, info.period)


def _windows(path, e):
    out = []
    n = len(path.branches)
    for start in range(0, n, 2):
        for stop in range(start + 1, n + 1, 2):
            if e in path.branches[start:stop]:
                out.append(SymmetricPath(path.track, path.branches[start:stop],
                                         path.entries[start:stop], path.turns[start:stop - 1],
                                         False))
    return out


def _residual_of(strip):
    return strip.vertex(strip.root).residual


def level_one_config(track, target, e, strip=None):
    """
    Level-one configuration through a large branch.

    Parameters
    ----------
    track : TrainTrack

    target : SplittingSequence or sequence of SplitRecord
        Witness from track to the target.

    e : int
        Large branch.

    strip : FlatStrip
        E(track, target); enumerated when omitted.

    Returns
    -------
    SymmetricPath or NonSplittable
        The longest special path or circle through e whose level-one
        multi-split stays in the strip, with ``direction`` set to the split
        at e the witness allows.
    """
    if _classify_branch(track, e) != _LARGE:
        raise _PreconditionError('Branch {} is not large'.format(e))
    if strip is None:
        strip = _enumerate_strip(track, target)
    rec = _front_loadable(track, _residual_of(strip), e)
    if rec is None:
        return NonSplittable(e)
    candidates = []
    for path in find_symmetric_paths(track):
        if e not in path.branches:
            continue
        if path.circle:
            candidates.append(path)
        else:
            candidates.extend(_windows(path, e))
    candidates = [c for c in candidates if len(c.branches) > 1]
    candidates.sort(key=lambda p: (-len(p.branches), not p.circle, p.branches))
    for cand in candidates:
        cand = cand._replace(direction=rec.direction)
        try:
            out, _ = level_one_split(track, cand)
        except (_PreconditionError, _InvariantViolation):
            continue
        if strip.contains_track(out):
            return cand
    first = 2 * e if track.is_large_half(2 * e) else 2 * e + 1
    return SymmetricPath(track, (e,), (first,), (), False, rec.direction)


def sigma_move(track, target, strip=None):
    """
    Sigma-move: act on every splittable level-one configuration at once.

    Returns
    -------
    SigmaMove
        Resulting track, its phi in E(track, target), the configurations
        acted on and a witness sequence of records from track.
    """
    if strip is None:
        strip = _enumerate_strip(track, target)
    configs = []
    seen = set()
    for e in _large_branches(track):
        conf = level_one_config(track, target, e, strip)
        if isinstance(conf, NonSplittable):
            continue
        key = frozenset(conf.branches)
        if key in seen:
            continue
        seen.add(key)
        configs.append(conf)
    phi = strip.root
    for conf in configs:
        if conf.circle:
            _, records = level_one_split(track, conf)
        else:
            _, records, _ = full_rho_multi_split(track, conf)
        reached = _project_meet(strip, records)
        phi = _join_theta(strip, phi, reached).phi
    vert = strip.vertex(phi)
    logger.debug('sigma move over %d configurations reaches %s', len(configs), phi)
    return SigmaMove(vert.track, phi, tuple(configs), strip.records_to(phi))


def tight_multi_sequence(track, target, strip=None):
    """
    Iterated sigma-moves from track to the target.

    Parameters
    ----------
    track : TrainTrack

    target : SplittingSequence or sequence of SplitRecord

    strip : FlatStrip
        E(track, target); enumerated when omitted.

    Returns
    -------
    TightMultiSequence
    """
    if strip is None:
        strip = _enumerate_strip(track, target)
    current = strip.vertex(strip.root)
    stations, moves = [current], []
    while current.residual:
        local = _enumerate_strip(current.track, current.residual)
        move = sigma_move(current.track, current.residual, local)
        if not any(move.phi):
            raise _InvariantViolation('Sigma-move made no progress at {}'.format(current.phi))
        phi = tuple(a + b for a, b in zip(current.phi, move.phi))
        current = strip.vertex(phi)
        stations.append(current)
        moves.append(move)
    logger.info('tight multi-sequence with %d stations', len(stations))
    return TightMultiSequence(strip, stations, moves)


def _vertex(strip, item):
    if hasattr(item, 'phi'):
        item = item.phi
    return strip.vertex(item)


def _gamma(strip, start, end):
    path = _nx.shortest_path(strip.graph, start.phi, end.phi)
    records = []
    for src, dst in zip(path[:-1], path[1:]):
        data = strip.graph.edges[src, dst]
        records.append(_SplitRecord(data['slot'], data['direction']))
    tms = tight_multi_sequence(start.track, _SplittingSequence(start.track, records))
    return [strip.vertex(tuple(a + b for a, b in zip(start.phi, st.phi))) for st in tms.stations]


def combing_line(strip, x, y):
    """
    Path from x to y through their meet: the reversed tight multi-sequence
    from the meet to x followed by the one from the meet to y.

    Returns
    -------
    tuple of StripVertex
    """
    x, y = _vertex(strip, x), _vertex(strip, y)
    meet = _strip_meet(strip, x, y)
    gx = _gamma(strip, meet, x)
    gy = _gamma(strip, meet, y)
    return tuple(reversed(gx)) + tuple(gy[1:])


def fellow_traveller_constant(strip, jobs=None):
    """
    Largest ratio, over vertex pairs, of the distance between the combing
    lines from the root (compared station by station) to the distance of
    the pair.

    Returns
    -------
    Fraction
    """
    if jobs is None:
        jobs = DefaultConfig().jobs
    verts = strip.ordered_vertices()
    if len(verts) < 2:
        return _Fraction(0)
    root = strip.vertex(strip.root)

    def line(v):
        return [st.phi for st in combing_line(strip, root, v)]

    if jobs > 1:
        with _ThreadPoolExecutor(max_workers=jobs) as pool:
            lines = list(pool.map(line, verts))
    else:
        lines = [line(v) for v in verts]
    dist = dict(_nx.all_pairs_shortest_path_length(strip.undirected))
    best = _Fraction(0)
    for i in range(len(verts)):
        for j in range(i + 1, len(verts)):
            lx, ly = lines[i], lines[j]
            steps = max(len(lx), len(ly))
            far = max(dist[lx[min(t, len(lx) - 1)]][ly[min(t, len(ly) - 1)]] for t in range(steps))
            best = max(best, _Fraction(far, dist[verts[i].phi][verts[j].phi]))
    return best
