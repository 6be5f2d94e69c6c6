"""
Subtracks, tightening and rigid large branches.

A subtrack is a set of branches of a track that is itself a track. Its
branches (sigma-branches) are trainpaths of the ambient track running between
switches where the subtrack has at least three half-branches.
"""
import logging as _logging
from collections import namedtuple as _namedtuple
from functools import cached_property as _cached_property

import networkx as _nx

from .config import DefaultConfig
from .errors import (PreconditionError as _PreconditionError,
                     TighteningError as _TighteningError,
                     BudgetExceededError as _BudgetExceededError,
                     InvariantViolation as _InvariantViolation)
from .measures import (TransverseMeasure as _TransverseMeasure, GuideMeasure as _GuideMeasure,
                       positive_transverse as _positive_transverse, restrict as _restrict,
                       completeness_surrogate as _completeness_surrogate)
from .moves import (SplitRecord as _SplitRecord, split as _split, collide as _collide,
                    smoothed as _smoothed, mu_direction as _mu_direction,
                    transport_transverse as _transport_transverse,
                    parse_direction as _parse_direction,
                    RIGHT as _RIGHT, LEFT as _LEFT, COLLISION as _COLLISION)
from .strips import SplittingSequence as _SplittingSequence
from .track import (classify_branch as _classify_branch, large_branches as _large_branches,
                    twin as _twin, branch_of as _branch_of, infer_surface as _infer_surface,
                    LARGE as _LARGE)

__all__ = ['Subtrack', 'SigmaPath', 'TightenResult', 'sigma_complexity',
           'proper_subbranches', 'is_tight', 'filling_measure', 'extension_guide',
           'tighten', 'induced_step', 'is_rigid', 'rigid_large_branches',
           'split_completeness', 'normalize_rigid']

logger = _logging.getLogger(__name__)

SigmaPath = _namedtuple('SigmaPath', ['branches', 'start', 'end', 'circle'])
SigmaPath.__doc__ = """
A sigma-branch as a trainpath: ambient branches in order, the dart it leaves
from and the dart it arrives at (both None for a circle).
"""

TightenResult = _namedtuple('TightenResult', ['track', 'sequence', 'branches', 'measure',
                                              'guide', 'anchor', 'complexities'])


class Subtrack:
    """
    Subtrack of a track given by its branch set.

    Parameters
    ----------
    track : TrainTrack

    branches : iterable of int
        Must span a track (every switch it touches has darts on both sides).
    """
    def __init__(self, track, branches):
        self.track = track
        self.branches = tuple(sorted(set(int(b) for b in branches)))
        if not self.branches:
            raise _PreconditionError('A subtrack needs at least one branch')
        unknown = [b for b in self.branches if not track.has_branch(b)]
        if unknown:
            raise _PreconditionError('Branches {} are not in the track'.format(unknown))
        self.restricted = _restrict(track, self.branches)
        if self.restricted is None:
            raise _PreconditionError('Branches {} do not span a subtrack'.format(list(self.branches)))

    def __repr__(self):
        return '<Subtrack: {} of {} branches>'.format(len(self.branches), len(self.track.branches))

    def darts_at(self, sid):
        keep = set(self.branches)
        sw = self.track.switches[sid]
        return ([h for h in sw.side_a if _branch_of(h) in keep],
                [h for h in sw.side_b if _branch_of(h) in keep])

    @_cached_property
    def sigma_switches(self):
        """ Switch ids where the subtrack has at least three darts """
        out = []
        for sid in range(len(self.track.switches)):
            sa, sb = self.darts_at(sid)
            if len(sa) + len(sb) >= 3:
                out.append(sid)
        return tuple(out)

    def _through(self, arrival):
        """ Dart leaving a bivalent subtrack switch opposite the arrival """
        sa, sb = self.darts_at(self.track.switch_of(arrival))
        return sb[0] if arrival in sa else sa[0]

    @_cached_property
    def paths(self):
        """ sigma-branches, deterministic order """
        sigma = set(self.sigma_switches)
        out = []
        covered = set()
        for sid in self.sigma_switches:
            sa, sb = self.darts_at(sid)
            for h in sa + sb:
                cur, seq = h, []
                while True:
                    seq.append(_branch_of(cur))
                    covered.update((cur, _twin(cur)))
                    arrival = _twin(cur)
                    if self.track.switch_of(arrival) in sigma:
                        break
                    cur = self._through(arrival)
                if h < arrival:
                    out.append(SigmaPath(tuple(seq), h, arrival, False))
        for b in self.branches:
            h = 2 * b
            if h in covered:
                continue
            cur, seq = h, []
            while True:
                seq.append(_branch_of(cur))
                covered.update((cur, _twin(cur)))
                cur = self._through(_twin(cur))
                if cur == h:
                    break
            out.append(SigmaPath(tuple(seq), None, None, True))
        return tuple(sorted(out, key=lambda p: (min(p.branches), p.branches)))

    def path_of(self, b):
        for path in self.paths:
            if b in path.branches:
                return path
        raise _PreconditionError('Branch {} is not in the subtrack'.format(b))

    @_cached_property
    def fills(self):
        """
        Connected, with every complementary region a disc.

        Checked by comparing V - E + F of the restricted ribbon graph with
        the Euler characteristic of the closed ambient surface.
        """
        graph = _nx.MultiGraph()
        graph.add_nodes_from(range(len(self.restricted.switches)))
        for b in self.restricted.branches:
            graph.add_edge(self.restricted.switch_of(2 * b), self.restricted.switch_of(2 * b + 1))
        if not _nx.is_connected(graph):
            return False
        faces = len(self.restricted.regions)
        chi = len(self.restricted.switches) - len(self.restricted.branches) + faces
        return chi == 2 - 2 * _infer_surface(self.track).genus

    @property
    def regions(self):
        """ Complementary regions of the subtrack; it must fill """
        if not self.fills:
            err_str1 = 'Subtrack {} does not fill; '.format(list(self.branches))
            raise _PreconditionError(err_str1 + 'its complementary regions are not all discs')
        return self.restricted.regions


def sigma_complexity(track, branches):
    """ Number of ambient branches contained in the subtrack """
    return len(Subtrack(track, branches).branches)


def proper_subbranches(track, branches, b):
    """ Ambient branches making up the sigma-branch through b """
    return Subtrack(track, branches).path_of(b).branches


def is_tight(track, branches, b):
    """ The sigma-branch through b is a single ambient branch """
    return len(proper_subbranches(track, branches, b)) == 1


def filling_measure(track, branches):
    """
    Positive transverse measure on the subtrack, zero elsewhere.

    Returns
    -------
    TransverseMeasure or None
        None when the subtrack is not recurrent.
    """
    sub = Subtrack(track, branches)
    nu = _positive_transverse(sub.restricted)
    if nu is None:
        return None
    return _TransverseMeasure({b: nu[b] if b in nu else 0 for b in track.branches})


def extension_guide(track, branches):
    """
    Guide on the whole track whose split directions agree with the filling
    measure of the subtrack wherever that measure decides.
    """
    nu = filling_measure(track, branches)
    if nu is None:
        raise _PreconditionError('Subtrack is not recurrent')
    mu = _positive_transverse(track)
    if mu is None:
        raise _PreconditionError('Track is not recurrent')
    k = 2 * max(mu.values()) + 1
    return _GuideMeasure({b: k * nu[b] + mu[b] for b in track.branches})


def tighten(track, branches, branch, guide, max_steps=None):
    """
    Split until the sigma-branch through ``branch`` is a single branch.

    Parameters
    ----------
    track : TrainTrack

    branches : iterable of int
        Recurrent subtrack.

    branch : int
        Branch of the subtrack inside the sigma-branch to tighten.

    guide : mapping
        Positive transverse measure on track choosing split directions.

    max_steps : int
        Default from DefaultConfig().max_tighten_steps.

    Returns
    -------
    TightenResult
        Final track, the splitting sequence, the split subtrack, its filling
        measure, the transported guide, the branch the tight sigma-branch now
        consists of and the subtrack complexity after each split.
    """
    if max_steps is None:
        max_steps = DefaultConfig().max_tighten_steps
    sub = Subtrack(track, branches)
    if branch not in sub.branches:
        raise _PreconditionError('Branch {} is not in the subtrack'.format(branch))
    nu = filling_measure(track, sub.branches)
    if nu is None:
        raise _TighteningError('Subtrack is not recurrent')
    guide = _TransverseMeasure(guide)
    if set(guide) != set(track.branches) or not guide.is_positive():
        raise _TighteningError('Guide must be positive on every branch')
    current, anchor = track, branch
    records = []
    complexities = [len(sub.branches)]
    while True:
        path = sub.path_of(anchor)
        if len(path.branches) == 1:
            break
        if len(records) >= max_steps:
            raise _BudgetExceededError('Tightening exceeded {} splits'.format(max_steps))
        candidates = [b for b in path.branches if _classify_branch(current, b) == _LARGE]
        if not candidates:
            raise _TighteningError('No large branch inside sigma-branch {}'.format(list(path.branches)))
        e = candidates[0]
        direction = _mu_direction(current, guide, e)
        if direction == _COLLISION:
            raise _TighteningError('Guide is balanced at branch {}'.format(e))
        rec = _SplitRecord(e, direction)
        try:
            nu = _transport_transverse(current, nu, rec)
        except _PreconditionError as err:
            raise _TighteningError('Subtrack is not carried by the split: {}'.format(err)) from err
        guide = _transport_transverse(current, guide, rec)
        current, _ = _split(current, e, direction)
        records.append(rec)
        if anchor == e:
            anchor = next(b for b in path.branches if b != e)
        sub = Subtrack(current, nu.support())
        complexities.append(len(sub.branches))
        logger.debug('tighten: split %s at %d, complexity %d', direction, e, complexities[-1])
    return TightenResult(current, _SplittingSequence(track, records), sub.branches, nu,
                         guide, anchor, tuple(complexities))


def induced_step(track, branches, branch, direction, guide):
    """
    Tighten at ``branch`` and then split the tight sigma-branch.

    Returns
    -------
    TightenResult
        The sequence ends with the split in ``direction``.
    """
    direction = _parse_direction(direction)
    if direction == _COLLISION:
        raise _PreconditionError('Induced steps split; use collide for collisions')
    res = tighten(track, branches, branch, guide)
    rec = _SplitRecord(res.anchor, direction)
    out, _ = _split(res.track, res.anchor, direction)
    records = res.sequence.records + (rec,)
    guide = res.guide
    try:
        guide = _transport_transverse(res.track, guide, rec)
    except _PreconditionError:
        logger.debug('guide does not follow the induced split at %d', res.anchor)
        guide = None
    return res._replace(track=out, sequence=_SplittingSequence(track, records), guide=guide)


def is_rigid(track, e):
    """ The collision at large branch e is not recurrent """
    collided, _ = _collide(track, e)
    return _positive_transverse(_smoothed(collided)) is None


def rigid_large_branches(track):
    return [e for e in _large_branches(track) if is_rigid(track, e)]


def split_completeness(track, e):
    """ Directions whose split at e passes the completeness surrogate """
    out = set()
    for direction in (_RIGHT, _LEFT):
        if _completeness_surrogate(_split(track, e, direction)[0]).complete:
            out.add(direction)
    return out


def normalize_rigid(track, max_steps=None):
    """
    Split at rigid large branches until none is left.

    Returns
    -------
    (TrainTrack, tuple of SplitRecord)
    """
    if max_steps is None:
        max_steps = DefaultConfig().max_tighten_steps
    records = []
    while True:
        rigid = rigid_large_branches(track)
        if not rigid:
            return track, tuple(records)
        if len(records) >= max_steps:
            raise _BudgetExceededError('Rigid normalization exceeded {} splits'.format(max_steps))
        e = rigid[0]
        directions = split_completeness(track, e)
        if len(directions) != 1:
            raise _InvariantViolation('Rigid branch {} has complete splits {}'.format(e, sorted(directions)))
        direction = directions.pop()
        track, _ = _split(track, e, direction)
        records.append(_SplitRecord(e, direction))
