""" Test seed tracks and the catalog """
import os
import shutil
import time

import pytest

from lazytt.bicombing import twist_connectors
from lazytt.catalog import (lollipop_s05, connector_s04, pants_s05, one_vertex_track,
                            comb_generic, insert_lollipop, insert_chord, grow, catalog_guide,
                            pants_multicurve, rigid_s04, load_entry, write_catalog, CATALOG)
from lazytt.errors import PreconditionError
from lazytt.measures import completeness_surrogate
from lazytt.serialize import load, loads_measure
from lazytt.track import Surface, validate, infer_surface


@pytest.fixture(scope="module")
def grown():
    surface = Surface(1, 2)
    return surface, grow(surface)


@pytest.fixture(scope="module")
def catalog_dir():
    """ Write two entries to a directory in the working directory """
    directory = 'temp_catalog'
    paths = write_catalog(directory, names=['s04-twist', 's05-pants'])

    yield directory, paths

    time.sleep(1)
    try:
        shutil.rmtree(directory)
    except Exception:
        print('Could not delete {}'.format(directory))


def test_one_vertex_track():
    torus = one_vertex_track(1)
    assert torus.allows_bigons
    assert infer_surface(torus) == Surface(1, 0)
    genus2 = one_vertex_track(2)
    assert len(genus2.regions) == 1
    assert genus2.switches[0].valence == 8

    with pytest.raises(PreconditionError):
        one_vertex_track(0)


def test_insertions():
    torus = comb_generic(one_vertex_track(1))
    lolly = insert_lollipop(torus, 0, 1, True)
    assert len(lolly.branches) == 6
    assert len(lolly.switches) == 4
    assert len(lolly.punctures) == 1
    assert sum(reg.is_punctured_monogon for reg in lolly.regions) == 1

    with pytest.raises(PreconditionError):
        insert_chord(torus, (0, 0, True), (0, 1, False))


def test_grow_conditions(grown):
    surface, track = grown
    assert not track.allows_bigons
    assert validate(track, surface).ok
    assert completeness_surrogate(track).complete
    assert (len(track.switches), len(track.branches)) == surface.maximal_counts()[:2]
    assert grow(surface) is track


def test_grow_small_surfaces():
    assert grow(Surface(0, 5)) == lollipop_s05()
    assert grow(Surface(0, 4)) == connector_s04()

    with pytest.raises(PreconditionError):
        grow(Surface(1, 0))

    with pytest.raises(PreconditionError):
        grow(Surface(0, 3))


def test_catalog_guide(grown):
    _, track = grown
    guide = catalog_guide(track)
    assert guide.is_integral()
    assert min(guide.values()) >= 5
    assert guide.is_consistent(track)


def test_load_entry():
    assert sorted(CATALOG) == ['s04-twist', 's05-pants', 's12-pants', 's20-pants']
    surface, track, guide = load_entry('s05-pants')
    assert surface == Surface(0, 5)
    assert validate(track, surface).ok
    assert guide.is_consistent(track)

    with pytest.raises(PreconditionError):
        load_entry('s99-z')


def test_write_catalog(catalog_dir):
    directory, paths = catalog_dir
    assert [os.path.basename(p) for p in paths] == ['s04-twist.trk', 's04-twist.gm',
                                                    's05-pants.trk', 's05-pants.gm']
    track = load(os.path.join(directory, 's05-pants.trk'))
    assert track.switches == pants_s05().switches
    with open(os.path.join(directory, 's04-twist.gm')) as fid:
        weights = loads_measure(fid.read())
    assert weights[0] == 28


@pytest.mark.parametrize('name', sorted(CATALOG))
def test_catalog_entries(name):
    surface, track, guide = load_entry(name)
    assert validate(track, surface).ok
    assert infer_surface(track) == surface
    assert (len(track.switches), len(track.branches)) == surface.maximal_counts()[:2]
    assert completeness_surrogate(track).complete
    assert guide.is_integral()
    assert guide.is_consistent(track)
    assert len(twist_connectors(track)) == surface.complexity


@pytest.mark.parametrize('name', sorted(CATALOG))
def test_pants_multicurve(name):
    _, track, _ = load_entry(name)
    multi = pants_multicurve(track)
    assert multi.is_consistent(track)
    assert len(multi.support()) == 2 * len(twist_connectors(track))
    assert set(multi.values()) == {0, 1}

    with pytest.raises(PreconditionError):
        pants_multicurve(rigid_s04())


def test_rigid_track():
    track = rigid_s04()
    surface = Surface(0, 4)
    assert validate(track, surface).ok
    assert sum(reg.is_punctured_monogon for reg in track.regions) == 4
    assert completeness_surrogate(track).complete
