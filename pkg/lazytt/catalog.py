"""
Seed tracks and guides.

The catalog holds one hand-built track per surface, read off a pants
decomposition: every pants curve carries a twist connector (a large and a
small branch forming a circle) whose outs lead into the pants pieces. The
lollipop track on S_{0,5} and the rigid track on S_{0,4} are kept as
fixtures. Other surfaces are grown from a one-switch seed by inserting
lollipops (a stem ending in a loop around a new puncture) and chords (a
branch across a region) until every region is a trigon or a punctured
monogon, keeping the first result that passes the completeness checks.
"""
import logging as _logging
import os as _os

from .bicombing import twist_connectors as _twist_connectors
from .config import DefaultConfig
from .errors import (PreconditionError as _PreconditionError,
                     BudgetExceededError as _BudgetExceededError)
from .measures import (GuideMeasure as _GuideMeasure, TransverseMeasure as _TransverseMeasure,
                       positive_transverse as _positive_transverse,
                       completeness_surrogate as _completeness_surrogate)
from .moves import comb_switch as _comb_switch
from .serialize import dump as _dump, dumps_measure as _dumps_measure
from .track import (TrainTrack as _TrainTrack, Switch as _Switch, Surface as _Surface,
                    validate as _validate)

__all__ = ['lollipop_s05', 'lollipop_guide', 'connector_s04', 'connector_measure',
           'connector_guide', 'pants_s05', 'pants_s05_guide', 'pants_s12', 'pants_s12_guide',
           'pants_s20', 'pants_s20_guide', 'pants_multicurve', 'rigid_s04', 'one_vertex_track',
           'comb_generic', 'insert_lollipop', 'insert_chord', 'grow', 'catalog_guide', 'CATALOG',
           'load_entry', 'write_catalog']

logger = _logging.getLogger(__name__)


def lollipop_s05():
    """
    Maximal track on S_{0,5}: five lollipops (loop i, stem 5+i) hanging from
    a tree with branches 10 and 11.
    """
    sws = [_Switch((2 * (5 + i),), (2 * i, 2 * i + 1)) for i in range(5)]
    sws.append(_Switch((11, 13), (20,)))
    sws.append(_Switch((21,), (15, 22)))
    sws.append(_Switch((17, 19), (23,)))
    return _TrainTrack(sws, punctures=[(i, 1) for i in range(5)])


def lollipop_guide():
    w = {0: 6, 1: 6, 2: 4, 3: 4, 4: 4, 5: 12, 6: 12, 7: 8, 8: 8, 9: 8, 10: 24, 11: 16}
    return _GuideMeasure(w)


def connector_s04():
    """
    Maximal track on S_{0,4} built around a twist connector: large branch 0
    and small branch 1 form a circle, with two lollipops (stems 2, 4; loops
    3, 5) attached on either side.
    """
    sws = [_Switch((0,), (3, 4)), _Switch((1,), (2, 8)),
           _Switch((5,), (6, 7)), _Switch((9,), (10, 11))]
    return _TrainTrack(sws, punctures=[(2, 1), (3, 1), (4, 1), (5, 1)])


def connector_measure():
    return _TransverseMeasure({0: 7, 1: 5, 2: 2, 3: 1, 4: 2, 5: 1})


def connector_guide():
    return _GuideMeasure(connector_measure().scaled(4))


def _connector(big, small, out_p, out_q):
    """ Twist connector switches: circle big/small, outs leaving on opposite sides """
    return [_Switch((2 * big,), (2 * small + 1, 2 * out_p)),
            _Switch((2 * big + 1,), (2 * small, 2 * out_q))]


def _three_curve_pants(outs, edges):
    """ Pants with three boundary curves: a triangle of edges around a trigon """
    (o1, o2, o3), (e1, e2, e3) = outs, edges
    return [_Switch((2 * o1 + 1,), (2 * e1, 2 * e3 + 1)),
            _Switch((2 * o2 + 1,), (2 * e2, 2 * e1 + 1)),
            _Switch((2 * o3 + 1,), (2 * e3, 2 * e2 + 1))]


def pants_s05():
    """
    Maximal track on S_{0,5} from a pants decomposition with two curves.

    Connectors (0, 1) and (4, 5) sit on the curves; outs 2 and 7 end in
    loops 8 and 11 around two punctures each, outs 3 and 6 meet at switch
    5 and continue along branch 9 into loop 10.
    """
    sws = _connector(0, 1, 2, 3) + _connector(4, 5, 6, 7)
    sws.append(_Switch((5,), (16, 17)))
    sws.append(_Switch((18,), (7, 13)))
    sws.append(_Switch((19,), (20, 21)))
    sws.append(_Switch((15,), (22, 23)))
    return _TrainTrack(sws, punctures=[(8, 1), (8, 0), (10, 1), (11, 1), (11, 0)])


def pants_s05_guide():
    w = {0: 25, 1: 17, 2: 8, 3: 8, 4: 31, 5: 21, 6: 10, 7: 10, 8: 4, 9: 18, 10: 9, 11: 5}
    return _GuideMeasure(w)


def pants_s12():
    """
    Maximal track on S_{1,2}: connectors (0, 1) and (4, 5); outs 2, 3, 6
    meet in a triangle of edges 8, 9, 10 and out 7 ends in loop 11 around
    both punctures.
    """
    sws = _connector(0, 1, 2, 3) + _connector(4, 5, 6, 7)
    sws.extend(_three_curve_pants((2, 3, 6), (8, 9, 10)))
    sws.append(_Switch((15,), (22, 23)))
    return _TrainTrack(sws, punctures=[(11, 1), (11, 0)])


def pants_s12_guide():
    w = {0: 34, 1: 23, 2: 11, 3: 11, 4: 31, 5: 21, 6: 10, 7: 10, 8: 6, 9: 5, 10: 5, 11: 5}
    return _GuideMeasure(w)


def pants_s20():
    """
    Maximal track on the closed genus two surface: three connectors (0, 1),
    (4, 5), (8, 9) and two triangles of edges, 12-14 on outs 2, 6, 10 and
    15-17 on outs 3, 7, 11.
    """
    sws = _connector(0, 1, 2, 3) + _connector(4, 5, 6, 7) + _connector(8, 9, 10, 11)
    sws.extend(_three_curve_pants((2, 6, 10), (12, 13, 14)))
    sws.extend(_three_curve_pants((3, 7, 11), (15, 16, 17)))
    return _TrainTrack(sws)


def pants_s20_guide():
    w = {0: 37, 1: 25, 2: 12, 3: 12, 4: 34, 5: 23, 6: 11, 7: 11, 8: 40,
         9: 27, 10: 13, 11: 13, 12: 5, 13: 6, 14: 7, 15: 5, 16: 6, 17: 7}
    return _GuideMeasure(w)


def pants_multicurve(track):
    """ Weight 1 on every twist connector branch, 0 elsewhere """
    on = {b for circ in _twist_connectors(track) for b in circ.branches}
    if not on:
        raise _PreconditionError('{!r} has no twist connectors'.format(track))
    return _TransverseMeasure({b: 1 if b in on else 0 for b in track.branches})


def rigid_s04():
    """
    Track on S_{0,4} whose only large branch 0 is rigid: colliding it leaves
    a track carrying no positive measure, and only its right split is
    complete.
    """
    sws = [_Switch((0,), (6, 4)), _Switch((1,), (2, 3)),
           _Switch((5,), (7, 8)), _Switch((9,), (10, 11))]
    return _TrainTrack(sws, punctures=[(1, 1), (5, 1), (3, 1), (1, 0)])


def one_vertex_track(genus):
    """
    One switch with 2*genus loops and a single complementary region.

    Loops 2i and 2i+1 form handle i; every loop has one end on each side.
    """
    if genus < 1:
        raise _PreconditionError('A one-switch seed needs genus at least 1')
    rotation = []
    for i in range(genus):
        rotation.extend([4 * i, 4 * i + 2, 4 * i + 1, 4 * i + 3])
    rotation = rotation[2:] + rotation[:2]
    half = len(rotation) // 2
    return _TrainTrack([_Switch(rotation[:half], tuple(reversed(rotation[half:])))],
                       allows_bigons=(genus == 1))


def comb_generic(track):
    """ Comb switches of valence four or more until every switch is trivalent """
    while True:
        target = next((sid for sid, sw in enumerate(track.switches) if sw.valence >= 4), None)
        if target is None:
            return track
        track = _comb_switch(track, target)


def _subdivide(switches, b, side, west, x, n):
    """
    Cut branch b by a new switch holding dart x on branch side ``side``.

    The part from end 1 becomes branch n; x shares its side with b's new
    end (west) or with n's start.
    """
    far, start = 2 * b + 1, 2 * n
    out = []
    for sw in switches:
        out.append(_Switch(tuple(2 * n + 1 if h == far else h for h in sw.side_a),
                           tuple(2 * n + 1 if h == far else h for h in sw.side_b)))
    if side == 1:
        new = _Switch((start,), (x, far)) if west else _Switch((far,), (start, x))
    else:
        new = _Switch((start,), (far, x)) if west else _Switch((far,), (x, start))
    out.append(new)
    return out


def insert_lollipop(track, b, side, west):
    """
    Attach a stem and a loop around a new puncture on side ``side`` of b.

    Returns
    -------
    TrainTrack
        New branches, in order: the cut-off part of b, the stem, the loop.
    """
    n = max(track.branches) + 1
    stem, loop = n + 1, n + 2
    sws = _subdivide(track.switches, b, side, west, 2 * stem, n)
    sws.append(_Switch((2 * stem + 1,), (2 * loop, 2 * loop + 1)))
    return track.replace(switches=sws, punctures=list(track.punctures) + [(loop, 1)])


def insert_chord(track, first, second):
    """
    Join two branch sides of one region by a new branch.

    Parameters
    ----------
    first, second : (branch, side, west)
        Where the chord starts and ends; the branches must differ.
    """
    b1, s1, w1 = first
    b2, s2, w2 = second
    if b1 == b2:
        raise _PreconditionError('Chord ends must lie on different branches')
    n1 = max(track.branches) + 1
    chord, n2 = n1 + 1, n1 + 2
    sws = _subdivide(track.switches, b1, s1, w1, 2 * chord, n1)
    sws = _subdivide(sws, b2, s2, w2, 2 * chord + 1, n2)
    return track.replace(switches=sws)


def _legal(track):
    return all(reg.punctures <= 1 and reg.euler_characteristic < 0 for reg in track.regions)


def _complete(track, surface):
    if not _validate(track.replace(allows_bigons=False), surface).ok:
        return False
    return _completeness_surrogate(track.replace(allows_bigons=False)).complete


def _seed(surface):
    if surface.genus == 0:
        if surface.punctures == 4:
            return connector_s04(), 4
        if surface.punctures >= 5:
            return lollipop_s05(), 5
        raise _PreconditionError('No maximal tracks on {}'.format(surface))
    if surface.genus == 1 and surface.punctures == 0:
        raise _PreconditionError('No maximal tracks on {}'.format(surface))
    return comb_generic(one_vertex_track(surface.genus)), 0


def _lollipop_options(track):
    for reg in track.regions:
        if reg.punctures:
            continue
        for b, s in reg.branch_sides():
            for west in (True, False):
                yield b, s, west


def _chord_options(track, reg):
    sides = reg.branch_sides()
    for i in range(len(sides)):
        for j in range(i + 1, len(sides)):
            if sides[i][0] == sides[j][0]:
                continue
            for w1 in (True, False):
                for w2 in (True, False):
                    yield sides[i] + (w1,), sides[j] + (w2,)


class _Search:
    def __init__(self, surface, limit):
        self.surface = surface
        self.limit = limit
        self.nodes = 0

    def visit(self, track, need):
        self.nodes += 1
        if self.nodes > self.limit:
            raise _BudgetExceededError('Catalog search for {} exceeded {} nodes'.format(self.surface, self.limit))
        if need:
            for b, s, west in _lollipop_options(track):
                nxt = insert_lollipop(track, b, s, west)
                if _legal(nxt):
                    out = self.visit(nxt, need - 1)
                    if out is not None:
                        return out
            return None
        open_regions = [reg for reg in track.regions
                        if not (reg.is_trigon or reg.is_punctured_monogon)]
        if not open_regions:
            return track if _complete(track, self.surface) else None
        for first, second in _chord_options(track, open_regions[0]):
            nxt = insert_chord(track, first, second)
            if _legal(nxt):
                out = self.visit(nxt, 0)
                if out is not None:
                    return out
        return None


_GROWN = {}


def grow(surface, limit=None):
    """
    Maximal generic track on a surface passing the completeness checks.

    Parameters
    ----------
    surface : Surface

    limit : int
        Search nodes; default from DefaultConfig().catalog_backtrack_limit.

    Returns
    -------
    TrainTrack
        Deterministic; results are cached per surface.
    """
    key = (surface.genus, surface.punctures)
    if key in _GROWN:
        return _GROWN[key]
    if limit is None:
        limit = DefaultConfig().catalog_backtrack_limit
    seed, have = _seed(surface)
    if have > surface.punctures:
        raise _PreconditionError('Seed for {} already has {} punctures'.format(surface, have))
    search = _Search(surface, limit)
    if surface.genus == 0 and have == surface.punctures:
        found = seed
    else:
        found = search.visit(seed, surface.punctures - have)
    if found is None:
        raise _BudgetExceededError('No complete track found for {}'.format(surface))
    found = found.replace(allows_bigons=False)
    logger.info('grew %r on %s after %d search nodes', found, surface, search.nodes)
    _GROWN[key] = found
    return found


def catalog_guide(track, minimum=5):
    """ Integral guide from the recurrence witness, every weight >= minimum """
    mu = _positive_transverse(track)
    if mu is None:
        raise _PreconditionError('Track is not recurrent')
    return _GuideMeasure.from_transverse(mu, minimum=minimum)


CATALOG = {
    's04-twist': (_Surface(0, 4), connector_s04, connector_guide),
    's05-pants': (_Surface(0, 5), pants_s05, pants_s05_guide),
    's12-pants': (_Surface(1, 2), pants_s12, pants_s12_guide),
    's20-pants': (_Surface(2, 0), pants_s20, pants_s20_guide),
}


def load_entry(name):
    """
    Catalog entry by name.

    Returns
    -------
    (Surface, TrainTrack, GuideMeasure)
    """
    try:
        surface, make_track, make_guide = CATALOG[name]
    except KeyError:
        raise _PreconditionError('Unknown catalog entry {!r}; known: {}'.format(name, sorted(CATALOG))) from None
    track = make_track()
    guide = make_guide() if make_guide is not None else catalog_guide(track)
    return surface, track, guide


def write_catalog(directory, names=None, verbose=False):
    """
    Write ``<name>.trk`` and ``<name>.gm`` for catalog entries.

    Returns
    -------
    list of str
        Paths written.
    """
    if names is None:
        names = sorted(CATALOG)
    _os.makedirs(directory, exist_ok=True)
    written = []
    for name in names:
        _, track, guide = load_entry(name)
        trk = _os.path.join(directory, name + '.trk')
        gm = _os.path.join(directory, name + '.gm')
        _dump(track, trk)
        with open(gm, 'w') as fid:
            fid.write(_dumps_measure(guide))
        written.extend([trk, gm])
        if verbose:
            print('Wrote {} and {}'.format(trk, gm))
    return written
