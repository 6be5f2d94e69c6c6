""" Test cube complexes, links and quasi-isometry constants """
import itertools

import pytest
import sympy

from lazytt.catalog import lollipop_s05, lollipop_guide, pants_multicurve, load_entry, CATALOG
from lazytt.cubical import (build_complex, from_points, link, is_flag, non_flag_vertices,
                            all_links_flag, qi_constants, max_cube_dimension, cube_counts,
                            faces_closed)
from lazytt.errors import PreconditionError
from lazytt.moves import split, SplitRecord
from lazytt.strips import enumerate_strip


@pytest.fixture(scope="module")
def square():
    base = split(lollipop_s05(), 10, 'R')[0]
    return enumerate_strip(base, [SplitRecord(5, 'R'), SplitRecord(11, 'R')])


def test_square_complex(square):
    cplx = build_complex(square)
    assert cube_counts(cplx) == {0: 4, 1: 4, 2: 1}
    assert max_cube_dimension(cplx) == 2
    assert cplx.dimension == 2
    assert faces_closed(cplx)
    assert all_links_flag(cplx)
    assert all_links_flag(cplx, jobs=2)

    lnk = link(cplx, square.root)
    assert lnk.vertices == ((1, 5), (1, 11))
    assert frozenset([(1, 5), (1, 11)]) in lnk.simplices


def test_unit_cube():
    cplx = from_points(itertools.product((0, 1), repeat=3))
    assert cube_counts(cplx) == {0: 8, 1: 12, 2: 6, 3: 1}
    assert faces_closed(cplx)
    assert non_flag_vertices(cplx) == ()


def test_hollow_corner():
    """ Three squares around a corner with no cube are not flag """
    points = [p for p in itertools.product((0, 1), repeat=3) if p != (1, 1, 1)]
    cplx = from_points(points)
    assert cube_counts(cplx) == {0: 7, 1: 9, 2: 3}
    assert non_flag_vertices(cplx) == ((0, 0, 0),)
    assert not is_flag(link(cplx, (0, 0, 0)))
    assert is_flag(link(cplx, (1, 0, 0)))


def test_isolated_point():
    cplx = from_points([(0, 0)])
    assert max_cube_dimension(cplx) == 0
    assert is_flag(link(cplx, (0, 0)))


def test_qi_constants(square):
    qi = qi_constants(square)
    assert qi.lower_squared == 1
    assert qi.upper_squared == 2
    assert qi.lower == 1
    assert qi.upper == sympy.sqrt(2)
    assert qi_constants(square, jobs=2) == qi


def test_truncated_strip():
    strip = enumerate_strip(lollipop_s05(), lollipop_guide(), radius=1)
    assert strip.truncated
    with pytest.raises(PreconditionError):
        build_complex(strip)
    cplx = build_complex(strip, accept_truncated=True)
    assert cube_counts(cplx)[0] == len(strip)


@pytest.fixture(scope="module")
def multicurve_strips():
    """ Multicurve strips of every catalog entry at radius 4 and 6 """
    out = {}
    for name in sorted(CATALOG):
        surface, track, _ = load_entry(name)
        multi = pants_multicurve(track)
        out[name] = (surface, {r: enumerate_strip(track, multi, radius=r) for r in (4, 6)})
    return out


@pytest.mark.parametrize('name', sorted(CATALOG))
def test_rank_echo(multicurve_strips, name):
    surface, strips = multicurve_strips[name]
    cplx = build_complex(strips[6], accept_truncated=True)
    assert max_cube_dimension(cplx) == surface.complexity
    assert faces_closed(cplx)


@pytest.mark.parametrize('name', sorted(CATALOG))
def test_qi_stable(multicurve_strips, name):
    surface, strips = multicurve_strips[name]
    near, far = qi_constants(strips[4]), qi_constants(strips[6])
    assert far.upper_squared == 2 * surface.complexity
    assert near.upper_squared == far.upper_squared
    assert near.lower_squared == far.lower_squared == 1
    assert abs(float(far.upper) - float(near.upper)) <= 0.05 * float(near.upper)


@pytest.mark.parametrize('name', sorted(CATALOG))
def test_multicurve_links_flag(multicurve_strips, name):
    """ Links away from the truncation are flag """
    surface, strips = multicurve_strips[name]
    strip = strips[6]
    cplx = build_complex(strip, accept_truncated=True)
    inner = [v for v in cplx.vertices if sum(v) + surface.complexity < strip.radius]
    assert inner
    assert all(is_flag(link(cplx, v)) for v in inner)
    if surface.complexity <= 2:
        assert all_links_flag(cplx)


def test_planted_hollow_corner(multicurve_strips):
    """ Removing the top of a 3-cube from a flag complex breaks flagness """
    _, strips = multicurve_strips['s20-pants']
    cplx = build_complex(strips[6], accept_truncated=True)
    base, dirs = cplx.cubes[3][0]
    top = list(base)
    for i in dirs:
        top[i] += 1
    points = [v for v in cplx.vertices if v != tuple(top)]
    planted = from_points(points)
    assert base in non_flag_vertices(planted)
