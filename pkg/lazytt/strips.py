"""
Splitting sequences and flat strips.

A flat strip is enumerated breadth first from a base track, either toward a
target track given by a witness sequence of splits or along the splits
chosen by a guide measure. Branch identifiers are stable under splits, so
every vertex is embedded in Z^q by counting splits per base branch.
"""
import logging as _logging
from collections import namedtuple as _namedtuple
from collections.abc import Mapping as _Mapping
from concurrent.futures import ThreadPoolExecutor as _ThreadPoolExecutor
from functools import cached_property as _cached_property

import networkx as _nx
import numpy as _np

from .config import DefaultConfig
from .errors import (PreconditionError as _PreconditionError,
                     NotInStripError as _NotInStripError,
                     InvariantViolation as _InvariantViolation)
from .measures import GuideMeasure as _GuideMeasure, TransverseMeasure as _TransverseMeasure
from .moves import (SplitRecord, SlotBijection as _SlotBijection, split as _split,
                    apply_record as _apply_record, apply_records as _apply_records,
                    mu_direction as _mu_direction,
                    transport_transverse as _transport_transverse,
                    split_branches_touch as _split_branches_touch,
                    parse_direction as _parse_direction, COLLISION as _COLLISION,
                    RIGHT as _RIGHT)
from .track import (classify_branch as _classify_branch, large_branches as _large_branches,
                    LARGE as _LARGE)

__all__ = ['SplittingSequence', 'StripVertex', 'StripEdge', 'FlatStrip',
           'strip_key', 'front_loadable', 'front_loadable_oracle',
           'enumerate_strip', 'project_meet', 'strip_meet', 'join_theta',
           'canonical_sequence', 'sublevel_sets_connected']

logger = _logging.getLogger(__name__)

StripVertex = _namedtuple('StripVertex', ['phi', 'track', 'residual', 'depth',
                                          'measure', 'parent', 'record'])
StripVertex.__doc__ = """
Strip member. ``residual`` holds the remaining witness records (track
targets), ``measure`` the transported guide (guide targets).
"""

StripEdge = _namedtuple('StripEdge', ['source', 'target', 'slot', 'direction'])


def strip_key(track):
    """
    Track with each puncture mark moved to the first traversal of its region.

    Marks relocated by different split orders end up on different sides of
    the same region; the key compares such tracks as equal.
    """
    regs = track.regions
    marks = [regs[track.region_of_side[bs]].branch_sides()[0] for bs in track.punctures]
    return track.replace(punctures=marks)


def _as_records(records):
    return tuple(SplitRecord(int(rec[0]), _parse_direction(rec[1])) for rec in records)


class SplittingSequence:
    """
    Base track and an ordered list of split records.

    Parameters
    ----------
    base : TrainTrack

    records : iterable of SplitRecord or (branch, direction) pairs
        Every record must be a legal split at its position; collisions are
        rejected since they leave the strip.

    Attributes
    ----------
    tracks : tuple of TrainTrack
        base followed by the image after each record

    bijections : tuple of SlotBijection
        Composed bijection from base to each prefix
    """
    def __init__(self, base, records=()):
        self.base = base
        self.records = _as_records(records)
        tracks = [base]
        bijections = [_SlotBijection.identity(base.branches)]
        for pos, rec in enumerate(self.records):
            if rec.direction == _COLLISION:
                raise _PreconditionError('Record {} is a collision; sequences only split'.format(pos))
            out, bij = _split(tracks[-1], rec.slot, rec.direction)
            tracks.append(out)
            bijections.append(bijections[-1].compose(bij))
        self.tracks = tuple(tracks)
        self.bijections = tuple(bijections)

    def __len__(self):
        return len(self.records)

    def __iter__(self):
        return iter(self.records)

    def __repr__(self):
        return '<SplittingSequence: {} records>'.format(len(self.records))

    @property
    def target(self):
        return self.tracks[-1]

    def suffix(self, k):
        """ Sequence from the k-th track on """
        return SplittingSequence(self.tracks[k], self.records[k:])


def front_loadable(track, residual, e):
    """
    First split of a residual sequence that can be moved to the front at e.

    Parameters
    ----------
    track : TrainTrack

    residual : sequence of SplitRecord
        Legal from track.

    e : int
        Large branch of track.

    Returns
    -------
    SplitRecord or None
        The first record at e when every earlier record sits at a branch
        sharing no switch with e at its time, and replaying the reordered
        sequence reaches the same strip key. None otherwise.
    """
    if _classify_branch(track, e) != _LARGE:
        raise _PreconditionError('Branch {} is not large'.format(e))
    residual = _as_records(residual)
    k = next((i for i, rec in enumerate(residual) if rec.slot == e), None)
    if k is None:
        return None
    current = track
    for rec in residual[:k]:
        if _split_branches_touch(current, rec.slot, e):
            return None
        current = _apply_record(current, rec)
    first = residual[k]
    moved = (first,) + residual[:k] + residual[k + 1:]
    try:
        reordered = _apply_records(track, moved)
    except _PreconditionError:
        return None
    if strip_key(reordered) != strip_key(_apply_records(track, residual)):
        return None
    return first


def front_loadable_oracle(track, residual, e):
    """
    Brute-force front_loadable: search every reordering that starts at e.

    Only meant for residuals of length at most 8.
    """
    residual = _as_records(residual)
    goal = strip_key(_apply_records(track, residual))
    failed = set()

    def reaches(current, remaining):
        if not remaining:
            return strip_key(current) == goal
        memo = (strip_key(current), remaining)
        if memo in failed:
            return False
        for idx in sorted(remaining):
            rec = residual[idx]
            if any(residual[j] == rec for j in remaining if j < idx):
                continue
            try:
                nxt = _apply_record(current, rec)
            except _PreconditionError:
                continue
            if reaches(nxt, remaining - {idx}):
                return True
        failed.add(memo)
        return False

    everything = frozenset(range(len(residual)))
    for idx, rec in enumerate(residual):
        if rec.slot != e:
            continue
        try:
            nxt = _apply_record(track, rec)
        except _PreconditionError:
            continue
        if reaches(nxt, everything - {idx}):
            return rec
    return None


def canonical_sequence(base, records):
    """
    Reordering of a witness sequence that always splits the smallest
    front-loadable large branch first.

    Returns
    -------
    SplittingSequence
        Same target strip key as the witness; idempotent.
    """
    witness = SplittingSequence(base, records)
    current = base
    residual = list(witness.records)
    ordered = []
    while residual:
        rec = None
        for e in _large_branches(current):
            rec = front_loadable(current, residual, e)
            if rec is not None:
                break
        if rec is None:
            raise _NotInStripError('Witness sequence does not replay from the base')
        residual.remove(rec)
        ordered.append(rec)
        current = _apply_record(current, rec)
    return SplittingSequence(base, ordered)


class FlatStrip:
    """
    Enumerated flat strip.

    Attributes
    ----------
    base : TrainTrack

    target : SplittingSequence or GuideMeasure

    branches : tuple
        Coordinate order of phi (the base branches)

    vertices : dict
        phi -> StripVertex

    edges : list of StripEdge

    truncated : bool
        Some vertex at the radius cap still had children.

    frontier : tuple
        phis of those vertices
    """
    def __init__(self, base, target, vertices, edges, radius=None, frontier=()):
        self.base = base
        self.target = target
        self.branches = tuple(base.branches)
        self.vertices = vertices
        self.edges = list(edges)
        self.radius = radius
        self.frontier = tuple(sorted(frontier, key=lambda p: (sum(p), p)))
        self.truncated = bool(self.frontier)
        self._keys = {strip_key(v.track): v.phi for v in vertices.values()}

    def __len__(self):
        return len(self.vertices)

    def __contains__(self, phi):
        return tuple(phi) in self.vertices

    def __repr__(self):
        return '<FlatStrip: {} vertices, {} edges{}>'.format(
            len(self.vertices), len(self.edges), ', truncated' if self.truncated else '')

    @property
    def root(self):
        return tuple([0] * len(self.branches))

    @property
    def guided(self):
        return isinstance(self.target, _TransverseMeasure)

    def ordered_vertices(self):
        """ Vertices sorted by (|phi|, phi) """
        return [self.vertices[p] for p in sorted(self.vertices, key=lambda p: (sum(p), p))]

    def vertex(self, phi):
        try:
            return self.vertices[tuple(phi)]
        except KeyError:
            raise _NotInStripError('No vertex with phi {}'.format(tuple(phi))) from None

    def find(self, track):
        """ Vertex holding a track (compared by strip key) """
        try:
            return self.vertices[self._keys[strip_key(track)]]
        except KeyError:
            raise _NotInStripError('Track is not a vertex of this strip') from None

    def contains_track(self, track):
        return strip_key(track) in self._keys

    @_cached_property
    def graph(self):
        """ Directed split graph on phis """
        graph = _nx.DiGraph()
        graph.add_nodes_from(self.vertices)
        for edge in self.edges:
            graph.add_edge(edge.source, edge.target, slot=edge.slot, direction=edge.direction)
        return graph

    @_cached_property
    def undirected(self):
        return self.graph.to_undirected()

    @property
    def phi_matrix(self):
        """ (n_vertices, q) int64 array in ordered_vertices order """
        phis = [v.phi for v in self.ordered_vertices()]
        return _np.array(phis, dtype=_np.int64).reshape(len(phis), len(self.branches))

    @property
    def edge_array(self):
        """ (n_edges, 4) int64 array: source id, target id, slot, 0 for R / 1 for L """
        index = {v.phi: k for k, v in enumerate(self.ordered_vertices())}
        rows = [(index[e.source], index[e.target], e.slot, 0 if e.direction == _RIGHT else 1)
                for e in self.edges]
        return _np.array(rows, dtype=_np.int64).reshape(len(rows), 4)

    def records_to(self, phi):
        """ Split records along a shortest directed path from the root """
        phi = self.vertex(phi).phi
        path = _nx.shortest_path(self.graph, self.root, phi)
        out = []
        for src, dst in zip(path[:-1], path[1:]):
            data = self.graph.edges[src, dst]
            out.append(SplitRecord(data['slot'], data['direction']))
        return tuple(out)

    def sequence_to(self, phi):
        return SplittingSequence(self.base, self.records_to(phi))


def _track_children(vertex):
    out = []
    for e in _large_branches(vertex.track):
        rec = front_loadable(vertex.track, vertex.residual, e)
        if rec is None:
            continue
        k = vertex.residual.index(rec)
        child, _ = _split(vertex.track, e, rec.direction)
        out.append((rec, child, vertex.residual[:k] + vertex.residual[k + 1:], None))
    return out


def _guide_children(vertex):
    out = []
    for e in _large_branches(vertex.track):
        if vertex.measure[e] == 0:
            continue
        direction = _mu_direction(vertex.track, vertex.measure, e)
        if direction == _COLLISION:
            continue
        rec = SplitRecord(e, direction)
        child, _ = _split(vertex.track, e, direction)
        out.append((rec, child, None, _transport_transverse(vertex.track, vertex.measure, rec)))
    return out


def _as_measure_target(base, target):
    """ Guide, or a nonnegative consistent measure such as a multicurve """
    if set(target) != set(base.branches):
        raise _PreconditionError('Guide does not cover every branch of the base')
    measure = _TransverseMeasure(target)
    if measure.is_positive():
        return _GuideMeasure(measure)
    if not measure.support():
        raise _PreconditionError('Measure target has empty support')
    if not measure.is_consistent(base):
        raise _PreconditionError('Measure target violates the switch condition')
    return measure


def enumerate_strip(base, target, radius=None, jobs=None, verbose=False):
    """
    Breadth-first enumeration of a flat strip.

    Parameters
    ----------
    base : TrainTrack

    target : SplittingSequence, sequence of SplitRecord, or mapping
        Track target (witness sequence from base) or measure target: a
        guide, or a nonnegative measure whose zero branches are never split.

    radius : int or None
        Cap on |phi|. Guide targets default to DefaultConfig().strip_radius;
        track targets are finite and default to no cap.

    jobs : int
        Threads expanding each BFS layer. Default from DefaultConfig.

    verbose : bool
        Print one line per layer.

    Returns
    -------
    FlatStrip
    """
    config = DefaultConfig()
    if jobs is None:
        jobs = config.jobs
    if isinstance(target, _Mapping):
        target = _as_measure_target(base, target)
        if radius is None:
            radius = config.strip_radius
        expand = _guide_children
        root = StripVertex(None, base, None, 0, target, None, None)
    else:
        if not isinstance(target, SplittingSequence):
            target = SplittingSequence(base, target)
        if strip_key(target.base) != strip_key(base):
            raise _NotInStripError('Witness sequence starts at another track')
        expand = _track_children
        root = StripVertex(None, base, target.records, 0, None, None, None)

    col = {b: k for k, b in enumerate(base.branches)}
    zero = tuple([0] * len(col))
    vertices = {zero: root._replace(phi=zero)}
    edges = []
    frontier = []
    layer = [vertices[zero]]
    pool = _ThreadPoolExecutor(max_workers=jobs) if jobs > 1 else None
    try:
        while layer:
            if pool is None:
                expansions = [expand(v) for v in layer]
            else:
                expansions = list(pool.map(expand, layer))
            nxt = []
            for vertex, children in zip(layer, expansions):
                if not children:
                    continue
                if radius is not None and vertex.depth >= radius:
                    frontier.append(vertex.phi)
                    continue
                for rec, child, residual, measure in children:
                    phi = list(vertex.phi)
                    phi[col[rec.slot]] += 1
                    phi = tuple(phi)
                    edges.append(StripEdge(vertex.phi, phi, rec.slot, rec.direction))
                    if phi in vertices:
                        if strip_key(vertices[phi].track) != strip_key(child):
                            raise _InvariantViolation('Two tracks share phi {}'.format(phi))
                        continue
                    new = StripVertex(phi, child, residual, vertex.depth + 1, measure,
                                      vertex.phi, rec)
                    vertices[phi] = new
                    nxt.append(new)
            if verbose:
                print('strip layer {}: {} vertices'.format(layer[0].depth, len(layer)))
            logger.debug('layer %d: %d vertices, %d total', layer[0].depth, len(layer), len(vertices))
            layer = nxt
    finally:
        if pool is not None:
            pool.shutdown()
    strip = FlatStrip(base, target, vertices, edges, radius, frontier)
    logger.info('enumerated %r', strip)
    return strip


def _phi(strip, item):
    if hasattr(item, 'phi'):
        item = item.phi
    return strip.vertex(item).phi


def strip_meet(strip, x, y):
    """ Common ancestor of two vertices with the largest |phi| """
    x, y = _phi(strip, x), _phi(strip, y)
    graph = strip.graph
    common = (_nx.ancestors(graph, x) | {x}) & (_nx.ancestors(graph, y) | {y})
    return strip.vertices[max(common, key=lambda p: (sum(p), p))]


def project_meet(strip, zeta):
    """
    The strip vertex splittable to zeta that is furthest from the base.

    Parameters
    ----------
    strip : FlatStrip

    zeta : SplittingSequence or sequence of SplitRecord
        Witness from strip.base to zeta.

    Returns
    -------
    StripVertex
    """
    if not isinstance(zeta, SplittingSequence):
        zeta = SplittingSequence(strip.base, zeta)
    if strip_key(zeta.base) != strip_key(strip.base):
        raise _NotInStripError('zeta is not split from the strip base')
    other = enumerate_strip(strip.base, zeta)
    common = [strip.vertices[strip._keys[strip_key(v.track)]]
              for v in other.vertices.values() if strip.contains_track(v.track)]
    return max(common, key=lambda v: (sum(v.phi), v.phi))


def join_theta(strip, x, y):
    """
    Vertex whose phi is phi(x) + phi(y) - phi(meet).

    Raises
    ------
    NotInStripError
        No such vertex, or it is not reachable from both x and y.
    """
    x, y = _phi(strip, x), _phi(strip, y)
    meet = strip_meet(strip, x, y).phi
    phi = tuple(a + b - m for a, b, m in zip(x, y, meet))
    vert = strip.vertex(phi)
    if not (_nx.has_path(strip.graph, x, phi) and _nx.has_path(strip.graph, y, phi)):
        raise _NotInStripError('phi {} is not below both vertices'.format(phi))
    return vert


def sublevel_sets_connected(strip):
    """ Whether every set {phi_i >= s} spans a connected subgraph """
    undirected = strip.undirected
    phis = list(strip.vertices)
    for i in range(len(strip.branches)):
        top = max(p[i] for p in phis)
        for level in range(1, top + 1):
            nodes = [p for p in phis if p[i] >= level]
            if not _nx.is_connected(undirected.subgraph(nodes)):
                logger.debug('coordinate %d level %d is disconnected', i, level)
                return False
    return True
