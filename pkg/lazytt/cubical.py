"""
Cube complexes spanned by embedded flat strips, their vertex links and the
flag condition.
"""
import logging as _logging
from collections import namedtuple as _namedtuple
from concurrent.futures import ThreadPoolExecutor as _ThreadPoolExecutor
from fractions import Fraction as _Fraction

import networkx as _nx
import sympy as _sympy

from .config import DefaultConfig
from .errors import PreconditionError as _PreconditionError

__all__ = ['CubicalComplex', 'LinkComplex', 'QIConstants', 'build_complex',
           'from_points', 'link', 'is_flag', 'non_flag_vertices', 'all_links_flag',
           'qi_constants', 'max_cube_dimension', 'cube_counts', 'faces_closed']

logger = _logging.getLogger(__name__)

LinkComplex = _namedtuple('LinkComplex', ['vertex', 'vertices', 'simplices'])
LinkComplex.__doc__ = """
Link of a vertex. Link vertices are (sign, coordinate) pairs for the edges at
the vertex; simplices are frozensets of link vertices, one per cube.
"""

QIConstants = _namedtuple('QIConstants', ['lower', 'upper', 'lower_squared', 'upper_squared'])
QIConstants.__doc__ = """
Extremes of graph distance over Euclidean distance of phi. The squared
ratios are exact Fractions; lower and upper are exact sympy numbers.
"""


def _shift(point, i, step=1):
    point = list(point)
    point[i] += step
    return tuple(point)


def _faces(base, dirs):
    for i in dirs:
        rest = tuple(d for d in dirs if d != i)
        yield base, rest
        yield _shift(base, i), rest


class CubicalComplex:
    """
    Cube complex in Z^q.

    Attributes
    ----------
    vertices : tuple
        Points, ordered by (|p|, p)

    cubes : dict
        dimension -> sorted list of (base point, sorted direction tuple)
    """
    def __init__(self, vertices, cubes):
        self.vertices = tuple(sorted(vertices, key=lambda p: (sum(p), p)))
        self.cubes = {dim: sorted(cubes[dim]) for dim in sorted(cubes)}
        self._cube_set = set()
        for dim in self.cubes:
            self._cube_set.update(self.cubes[dim])

    def __repr__(self):
        counts = ', '.join('{}:{}'.format(k, v) for k, v in cube_counts(self).items())
        return '<CubicalComplex {}>'.format(counts)

    def has_cube(self, base, dirs):
        return (tuple(base), tuple(sorted(dirs))) in self._cube_set

    @property
    def dimension(self):
        return max_cube_dimension(self)


def _inside(point, base, dirs):
    offset = [a - b for a, b in zip(point, base)]
    return all(x == 0 or (x == 1 and i in dirs) for i, x in enumerate(offset))


def _close(vertices, edges, excluded=()):
    """ Add every cube whose faces are all present """
    excluded = set(excluded)
    cubes = {0: [(v, ()) for v in vertices]}
    if edges:
        cubes[1] = sorted(set(edges))
    dim = 1
    while cubes.get(dim):
        present = set(cubes[dim])
        found = set()
        for base, dirs in cubes[dim]:
            for j in range(len(base)):
                if j <= dirs[-1]:
                    continue
                new_dirs = dirs + (j,)
                if excluded and any(_inside(q, base, new_dirs) for q in excluded):
                    continue
                if all(face in present for face in _faces(base, new_dirs)):
                    found.add((base, new_dirs))
        if not found:
            break
        dim += 1
        cubes[dim] = sorted(found)
        logger.debug('%d cubes of dimension %d', len(found), dim)
    return CubicalComplex(vertices, cubes)


def build_complex(strip, accept_truncated=False):
    """
    Largest cube complex whose 1-skeleton is the strip graph.

    Parameters
    ----------
    strip : FlatStrip

    accept_truncated : bool
        Allow a truncated strip; its frontier vertices then take part in no
        cube of dimension two or more.

    Returns
    -------
    CubicalComplex
    """
    if strip.truncated and not accept_truncated:
        raise _PreconditionError('Strip is truncated; pass accept_truncated to build anyway')
    col = {b: k for k, b in enumerate(strip.branches)}
    edges = [(e.source, (col[e.slot],)) for e in strip.edges]
    return _close(list(strip.vertices), edges, strip.frontier)


def from_points(points):
    """ Cube complex spanned by a set of lattice points (unit steps are edges) """
    points = set(tuple(p) for p in points)
    edges = []
    for p in points:
        for i in range(len(p)):
            if _shift(p, i) in points:
                edges.append((p, (i,)))
    return _close(points, edges)


def link(cplx, v):
    """ Link of vertex v, read off the cubes containing it """
    v = tuple(v)
    verts = set()
    simplices = set()
    for dim, cubes in cplx.cubes.items():
        if dim == 0:
            continue
        for base, dirs in cubes:
            offset = [a - b for a, b in zip(v, base)]
            if any(x not in (0, 1) for x in offset):
                continue
            if any(offset[i] for i in range(len(offset)) if i not in dirs):
                continue
            simplex = frozenset((-1, i) if offset[i] else (1, i) for i in dirs)
            simplices.add(simplex)
            if dim == 1:
                verts.update(simplex)
    return LinkComplex(v, tuple(sorted(verts)), frozenset(simplices))


def is_flag(lnk):
    """ Every clique of the link's 1-skeleton spans a simplex """
    if not lnk.vertices:
        return True
    graph = _nx.Graph()
    graph.add_nodes_from(lnk.vertices)
    graph.add_edges_from(tuple(s) for s in lnk.simplices if len(s) == 2)
    for clique in _nx.find_cliques(graph):
        if frozenset(clique) not in lnk.simplices:
            return False
    return True


def non_flag_vertices(cplx, jobs=None):
    """ Vertices whose link is not flag """
    if jobs is None:
        jobs = DefaultConfig().jobs

    def check(v):
        return is_flag(link(cplx, v))

    if jobs > 1:
        with _ThreadPoolExecutor(max_workers=jobs) as pool:
            flags = list(pool.map(check, cplx.vertices))
    else:
        flags = [check(v) for v in cplx.vertices]
    return tuple(v for v, ok in zip(cplx.vertices, flags) if not ok)


def all_links_flag(cplx, jobs=None):
    return not non_flag_vertices(cplx, jobs)


def qi_constants(strip, jobs=None):
    """
    Quasi-isometry constants of phi on a strip.

    Over all vertex pairs, the smallest and largest ratio of undirected graph
    distance to Euclidean distance of phi.

    Returns
    -------
    QIConstants
    """
    if jobs is None:
        jobs = DefaultConfig().jobs
    phis = [v.phi for v in strip.ordered_vertices()]
    if len(phis) < 2:
        one = _Fraction(1)
        return QIConstants(_sympy.Integer(1), _sympy.Integer(1), one, one)
    graph = strip.undirected

    def from_source(k):
        lengths = _nx.single_source_shortest_path_length(graph, phis[k])
        out = []
        for other in phis[k + 1:]:
            if other not in lengths:
                continue
            dist2 = sum((a - b) ** 2 for a, b in zip(phis[k], other))
            out.append(_Fraction(lengths[other] ** 2, dist2))
        return out

    if jobs > 1:
        with _ThreadPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(from_source, range(len(phis))))
    else:
        parts = [from_source(k) for k in range(len(phis))]
    ratios = [r for part in parts for r in part]
    lo, hi = min(ratios), max(ratios)
    return QIConstants(_sympy.sqrt(_sympy.Rational(lo.numerator, lo.denominator)),
                       _sympy.sqrt(_sympy.Rational(hi.numerator, hi.denominator)), lo, hi)


def max_cube_dimension(cplx):
    return max((dim for dim, cubes in cplx.cubes.items() if cubes), default=0)


def cube_counts(cplx):
    return {dim: len(cubes) for dim, cubes in cplx.cubes.items()}


def faces_closed(cplx):
    """ Every face of every cube is a cube """
    for dim, cubes in cplx.cubes.items():
        for base, dirs in cubes:
            if dim and not all(cplx.has_cube(b, d) for b, d in _faces(base, dirs)):
                return False
    return True
