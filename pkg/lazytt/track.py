"""
Train tracks and bigon tracks as ribbon structures.

A track is stored purely combinatorially. Branch ``b`` owns the half-branches
(darts) ``2*b`` (end 0) and ``2*b + 1`` (end 1). A switch holds two ordered
sides of darts; its counterclockwise rotation is ``side_a`` followed by
``reversed(side_b)``. Complementary regions are the orbits of
``h -> twin(sigma(h))`` where ``sigma`` is the rotation; a region traverses the
branch of ``sigma(h)`` with the region on its right.
"""
import logging as _logging
from collections import Counter as _Counter, namedtuple as _namedtuple
from dataclasses import dataclass as _dataclass
from fractions import Fraction as _Fraction
from functools import cached_property as _cached_property

import networkx as _nx

from .errors import (TrackStructureError as _TrackStructureError,
                     PreconditionError as _PreconditionError)

__all__ = ['LARGE', 'SMALL', 'MIXED', 'Surface', 'Switch', 'Slot', 'Traversal',
           'Region', 'TrainTrack', 'ValidationReport', 'validate',
           'trace_regions', 'classify_branch', 'large_branches',
           'small_branches', 'mixed_branches', 'corners', 'relabel', 'mirror',
           'region_signatures', 'infer_surface', 'with_punctures_in',
           'twin', 'branch_of', 'end_of']

logger = _logging.getLogger(__name__)

LARGE = 'Large'
SMALL = 'Small'
MIXED = 'Mixed'

Slot = _namedtuple('Slot', ['switch', 'side', 'position'])
Slot.__doc__ = """ Location of a dart: switch id, side (0 = a, 1 = b), position """

Traversal = _namedtuple('Traversal', ['branch', 'forward'])
Traversal.__doc__ = """ Directed pass over a branch; forward runs end 0 to end 1 """

Corners = _namedtuple('Corners', ['h0', 'h1', 'a', 'b', 'c', 'd'])


def twin(h):
    """ Other dart of the same branch """
    return h ^ 1


def branch_of(h):
    return h // 2


def end_of(h):
    return h % 2


@_dataclass(frozen=True)
class Surface:
    """ Oriented surface of genus g with m punctures """
    genus: int
    punctures: int

    def __post_init__(self):
        if self.genus < 0 or self.punctures < 0:
            raise ValueError('genus and punctures must be nonnegative')

    @property
    def complexity(self):
        """ xi = 3g - 3 + m """
        return 3 * self.genus - 3 + self.punctures

    @property
    def euler_characteristic(self):
        return 2 - 2 * self.genus - self.punctures

    @property
    def name(self):
        return 'S_{}{}'.format(self.genus, self.punctures)

    def maximal_counts(self):
        """ (switches, branches, trigons) of a maximal generic track """
        g, m = self.genus, self.punctures
        return 12 * g - 12 + 4 * m, 18 * g - 18 + 6 * m, 4 * g - 4 + m

    def __str__(self):
        return 'S_{{{},{}}}'.format(self.genus, self.punctures)


@_dataclass(frozen=True)
class Switch:
    """ Two ordered sides of darts sharing a tangent line """
    side_a: tuple
    side_b: tuple

    def __post_init__(self):
        object.__setattr__(self, 'side_a', tuple(self.side_a))
        object.__setattr__(self, 'side_b', tuple(self.side_b))

    @property
    def rotation(self):
        """ Counterclockwise cyclic order of darts """
        return self.side_a + tuple(reversed(self.side_b))

    @property
    def valence(self):
        return len(self.side_a) + len(self.side_b)

    def side(self, index):
        return self.side_a if index == 0 else self.side_b


@_dataclass(frozen=True)
class Region:
    """
    Complementary region of a track.

    Attributes
    ----------
    index : int
        Position in the deterministic region order (by smallest corner dart)

    corners : tuple
        Darts h; corner h sits between h and sigma(h)

    traversals : tuple of Traversal
        The pass made after each corner, region on the right

    cusp_flags : tuple of bool
        Whether each corner is a cusp

    sides : tuple of tuple of Traversal
        Smooth trainpaths between consecutive cusps

    punctures : int
        Number of puncture marks inside
    """
    index: int
    corners: tuple
    traversals: tuple
    cusp_flags: tuple
    sides: tuple
    punctures: int

    @property
    def cusps(self):
        return sum(self.cusp_flags)

    @property
    def euler_characteristic(self):
        return _Fraction(1) - self.punctures - _Fraction(self.cusps, 2)

    @property
    def signature(self):
        return (self.cusps, self.punctures)

    @property
    def is_bigon(self):
        return self.cusps == 2 and self.punctures == 0

    @property
    def is_trigon(self):
        return self.cusps == 3 and self.punctures == 0

    @property
    def is_punctured_monogon(self):
        return self.cusps == 1 and self.punctures == 1

    def branch_sides(self):
        """ (branch, side) pairs facing this region, in boundary order """
        return [(t.branch, 1 if t.forward else 0) for t in self.traversals]


class TrainTrack:
    """
    Train track (or bigon track when allows_bigons is set).

    Parameters
    ----------
    switches : sequence of Switch or of (side_a, side_b) pairs
        Switch ids are positions in this sequence.

    allows_bigons : bool
        Bigon track mode

    punctures : iterable of (branch, side)
        One mark per puncture; the region containing that branch side holds
        the puncture. Several marks may share a region.

    marked_points : iterable of (branch, side)
        Optional branch-interior marks, consulted only by induced sequences.

    Notes
    -----
    Values are immutable; every move returns a new track. Derived data
    (dart locations, regions) is computed lazily and cached.
    """
    def __init__(self, switches, allows_bigons=False, punctures=(),
                 marked_points=()):
        sws = []
        for sw in switches:
            if isinstance(sw, Switch):
                sws.append(sw)
            else:
                sws.append(Switch(*sw))
        self._switches = tuple(sws)
        self._allows_bigons = bool(allows_bigons)
        self._punctures = tuple(sorted((int(b), int(s)) for b, s in punctures))
        self._marked_points = tuple(sorted(set((int(b), int(s)) for b, s in marked_points)))
        self._check_structure()

    @property
    def switches(self):
        return self._switches

    @property
    def allows_bigons(self):
        return self._allows_bigons

    @property
    def punctures(self):
        return self._punctures

    @property
    def marked_points(self):
        return self._marked_points

    def _check_structure(self):
        seen = {}
        for sid, sw in enumerate(self._switches):
            if not sw.side_a or not sw.side_b:
                err_str1 = 'Switch {} has an empty side; '.format(sid)
                raise _TrackStructureError(err_str1 + 'every side needs a slot')
            for side_idx in (0, 1):
                for pos, h in enumerate(sw.side(side_idx)):
                    if not isinstance(h, int) or h < 0:
                        raise _TrackStructureError('Bad dart {!r} at switch {}'.format(h, sid))
                    if h in seen:
                        err_str1 = 'Dart {} appears twice '.format(h)
                        raise _TrackStructureError(err_str1 + '(switches {} and {})'.format(seen[h].switch, sid))
                    seen[h] = Slot(sid, side_idx, pos)
        for h in seen:
            if twin(h) not in seen:
                err_str1 = 'Dangling dart {}: '.format(h)
                raise _TrackStructureError(err_str1 + 'branch {} has only one end'.format(branch_of(h)))
        branches = set(branch_of(h) for h in seen)
        for b, s in self._punctures + self._marked_points:
            if b not in branches or s not in (0, 1):
                raise _TrackStructureError('Mark ({}, {}) refers to no branch side'.format(b, s))
        self.__dict__['_slots'] = seen

    # Equality is exact labeled equality; isomorphism goes through canonical forms.
    def __eq__(self, other):
        if not isinstance(other, TrainTrack):
            return NotImplemented
        return (self._switches == other._switches and
                self._allows_bigons == other._allows_bigons and
                self._punctures == other._punctures and
                self._marked_points == other._marked_points)

    def __hash__(self):
        return hash((self._switches, self._allows_bigons, self._punctures,
                     self._marked_points))

    def __repr__(self):
        kind = 'BigonTrack' if self._allows_bigons else 'TrainTrack'
        return '<{}: {} switches, {} branches, {} punctures>'.format(
            kind, len(self._switches), len(self.branches), len(self._punctures))

    def replace(self, switches=None, allows_bigons=None, punctures=None,
                marked_points=None):
        """ Copy with some fields replaced """
        return TrainTrack(self._switches if switches is None else switches,
                          self._allows_bigons if allows_bigons is None else allows_bigons,
                          self._punctures if punctures is None else punctures,
                          self._marked_points if marked_points is None else marked_points)

    # --- darts and slots ---------------------------------------------------

    @property
    def darts(self):
        return sorted(self._slots)

    @_cached_property
    def branches(self):
        return tuple(sorted(set(branch_of(h) for h in self._slots)))

    def has_branch(self, b):
        return 2 * b in self._slots

    def slot(self, h):
        try:
            return self._slots[h]
        except KeyError:
            raise _TrackStructureError('Unknown dart {}'.format(h)) from None

    def switch_of(self, h):
        return self.slot(h).switch

    def endpoints(self, b):
        """ (switch of end 0, switch of end 1) """
        return self.switch_of(2 * b), self.switch_of(2 * b + 1)

    def side_of(self, h):
        """ The whole side tuple holding dart h """
        slot = self.slot(h)
        return self._switches[slot.switch].side(slot.side)

    @_cached_property
    def _sigma(self):
        out = {}
        for sw in self._switches:
            rot = sw.rotation
            for idx, h in enumerate(rot):
                out[h] = rot[(idx + 1) % len(rot)]
        return out

    def sigma(self, h):
        """ Next dart counterclockwise around its switch """
        return self._sigma[h]

    def sigma_inv(self, h):
        rot = self._switches[self.switch_of(h)].rotation
        return rot[rot.index(h) - 1]

    def is_cusp_corner(self, h):
        """ Corner (h, sigma(h)) is a cusp iff both darts share a side """
        return self.slot(h).side == self.slot(self.sigma(h)).side and self.sigma(h) != h

    def is_large_half(self, h):
        return len(self.side_of(h)) == 1

    def valence(self, sid):
        return self._switches[sid].valence

    # --- regions -------------------------------------------------------------

    @_cached_property
    def regions(self):
        return trace_regions(self)

    @_cached_property
    def region_of_side(self):
        """ Map (branch, side) -> region index """
        out = {}
        for reg in self.regions:
            for bs in reg.branch_sides():
                out[bs] = reg.index
        return out

    @_cached_property
    def components(self):
        """ Connected components as sorted tuples of switch ids """
        graph = _nx.MultiGraph()
        graph.add_nodes_from(range(len(self._switches)))
        for b in self.branches:
            graph.add_edge(*self.endpoints(b))
        comps = [tuple(sorted(c)) for c in _nx.connected_components(graph)]
        return tuple(sorted(comps))


class ValidationReport:
    """
    Result of validate.

    Attributes
    ----------
    problems : list of (clause, detail)
        Empty iff the track is legal on the surface.
    """
    def __init__(self, problems=None):
        self.problems = list(problems or [])

    @property
    def ok(self):
        return not self.problems

    def __bool__(self):
        return self.ok

    def clauses(self):
        return [clause for clause, _ in self.problems]

    def lines(self):
        if self.ok:
            return ['OK']
        return ['{} {}'.format(clause, detail) for clause, detail in self.problems]

    def __repr__(self):
        return '<ValidationReport {}>'.format('; '.join(self.lines()))


def trace_regions(track):
    """
    Trace complementary regions.

    Parameters
    ----------
    track : TrainTrack

    Returns
    -------
    tuple of Region
        Ordered by smallest corner dart. Each directed branch side appears in
        exactly one region.

    Notes
    -----
    Regions are the orbits of the face map. Their cusp and puncture counts
    are always right, but Region.euler_characteristic treats every region
    as a disc, which only holds when the track fills its surface; use
    Subtrack.fills before reading regions of a restricted track.
    """
    visited = set()
    mark_counts = _Counter()
    for b, s in track.punctures:
        mark_counts[(b, s)] += 1
    regions = []
    for start in track.darts:
        if start in visited:
            continue
        corners = []
        h = start
        while True:
            corners.append(h)
            visited.add(h)
            h = twin(track.sigma(h))
            if h == start:
                break
            if h in visited:
                raise _TrackStructureError('Ribbon structure is not a permutation at dart {}'.format(h))
        travs = tuple(Traversal(branch_of(track.sigma(c)), end_of(track.sigma(c)) == 0)
                      for c in corners)
        flags = tuple(track.is_cusp_corner(c) for c in corners)
        punct = sum(mark_counts[(t.branch, 1 if t.forward else 0)] for t in travs)
        regions.append(Region(len(regions), tuple(corners), travs, flags,
                              _split_sides(travs, flags), punct))
    return tuple(regions)


def _split_sides(travs, flags):
    n = len(travs)
    cusp_idx = [k for k in range(n) if flags[k]]
    if not cusp_idx:
        return (tuple(travs),)
    sides = []
    start = cusp_idx[0]
    current = []
    for off in range(n):
        k = (start + off) % n
        if flags[k] and current:
            sides.append(tuple(current))
            current = []
        current.append(travs[k])
    sides.append(tuple(current))
    return tuple(sides)


def classify_branch(track, b):
    """
    Large, Small or Mixed.

    A half-branch is large iff it is the only slot on its side.
    """
    if not track.has_branch(b):
        raise _PreconditionError('No branch {}'.format(b))
    big0 = track.is_large_half(2 * b)
    big1 = track.is_large_half(2 * b + 1)
    if big0 and big1:
        return LARGE
    if not big0 and not big1:
        return SMALL
    return MIXED


def large_branches(track):
    return [b for b in track.branches if classify_branch(track, b) == LARGE]


def small_branches(track):
    return [b for b in track.branches if classify_branch(track, b) == SMALL]


def mixed_branches(track):
    return [b for b in track.branches if classify_branch(track, b) == MIXED]


def corners(track, e):
    """
    Corner darts around a large branch e.

    Returns
    -------
    Corners
        h0, h1 are e's darts; a = sigma(h0), b = sigma(a) at e's end-0 switch
        and c = sigma(h1), d = sigma(c) at the end-1 switch. Under this
        convention the diagonal of a right split carries mu(a) - mu(d).
    """
    h0, h1 = 2 * e, 2 * e + 1
    a = track.sigma(h0)
    c = track.sigma(h1)
    return Corners(h0, h1, a, track.sigma(a), c, track.sigma(c))


def _closed_curve_switches(track):
    out = set()
    for comp in track.components:
        if all(track.valence(s) == 2 for s in comp):
            out.update(comp)
    return out


def validate(track, surface):
    """
    Check a track against the surface it should live on.

    Parameters
    ----------
    track : TrainTrack

    surface : Surface

    Returns
    -------
    ValidationReport
        Violations as (clause, detail). Structural problems never reach
        here: they raise TrackStructureError at construction. A track that
        does not fill (some region is not a disc) reports euler-mismatch.
    """
    problems = []
    for reg in track.regions:
        chi = reg.euler_characteristic
        legal = chi < 0 or (track.allows_bigons and reg.is_bigon)
        if not legal:
            problems.append(('forbidden-region',
                             'region {} cusps={} punctures={}'.format(reg.index, reg.cusps, reg.punctures)))
        if reg.punctures > 1:
            problems.append(('puncture-collision',
                             'region {} holds {} punctures'.format(reg.index, reg.punctures)))
    total = sum((reg.euler_characteristic for reg in track.regions), _Fraction(0))
    if total != surface.euler_characteristic:
        problems.append(('euler-mismatch',
                         'regions sum to {} but {} has {}'.format(total, surface, surface.euler_characteristic)))
    if len(track.punctures) != surface.punctures:
        problems.append(('puncture-count',
                         '{} marks for {} punctures'.format(len(track.punctures), surface.punctures)))
    closed = _closed_curve_switches(track)
    for sid, sw in enumerate(track.switches):
        if sw.valence == 2 and sid not in closed:
            problems.append(('bivalent-switch', 'switch {}'.format(sid)))
    if problems:
        logger.debug('validate %r on %s: %d problems', track, surface, len(problems))
    return ValidationReport(problems)


def infer_surface(track):
    """ Surface recovered from the Euler characteristic of a connected track """
    chi = sum((reg.euler_characteristic for reg in track.regions), _Fraction(0))
    m = len(track.punctures)
    two_g = 2 - m - chi
    if two_g.denominator != 1 or two_g.numerator % 2 or two_g < 0:
        raise _PreconditionError('Regions do not close up to a surface (chi={})'.format(chi))
    return Surface(int(two_g) // 2, m)


def region_signatures(track):
    """ Sorted multiset of (cusps, punctures) over regions """
    return tuple(sorted(reg.signature for reg in track.regions))


def with_punctures_in(track, region_indices):
    """
    Replace puncture marks: one mark in each listed region (repeats allowed).
    """
    regs = track.regions
    marks = []
    for idx in region_indices:
        marks.append(regs[idx].branch_sides()[0])
    return track.replace(punctures=marks)


def relabel(track, switch_order=None, branch_map=None, flips=()):
    """
    Rename switches and branches.

    Parameters
    ----------
    switch_order : sequence of int
        New switch k is old switch switch_order[k]. Default keeps order.

    branch_map : dict
        Old branch id -> new branch id (injective). Default identity.

    flips : iterable of int
        Old branch ids whose ends 0 and 1 are exchanged.

    Returns
    -------
    TrainTrack
        Isomorphic track; puncture and marked-point sides follow the flips.
    """
    flips = set(flips)
    if branch_map is None:
        branch_map = {b: b for b in track.branches}
    if switch_order is None:
        switch_order = range(len(track.switches))

    def new_dart(h):
        b, end = branch_of(h), end_of(h)
        if b in flips:
            end = 1 - end
        return 2 * branch_map[b] + end

    def new_side(b, s):
        return (branch_map[b], 1 - s if b in flips else s)

    sws = []
    for old in switch_order:
        sw = track.switches[old]
        sws.append(Switch(tuple(new_dart(h) for h in sw.side_a),
                          tuple(new_dart(h) for h in sw.side_b)))
    return TrainTrack(sws, track.allows_bigons,
                      [new_side(b, s) for b, s in track.punctures],
                      [new_side(b, s) for b, s in track.marked_points])


def mirror(track):
    """ Same track on the oppositely oriented surface """
    sws = [Switch(sw.side_b, sw.side_a) for sw in track.switches]
    return TrainTrack(sws, track.allows_bigons,
                      [(b, 1 - s) for b, s in track.punctures],
                      [(b, 1 - s) for b, s in track.marked_points])
