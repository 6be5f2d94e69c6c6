""" Test the bigon collapse """
import pytest

from lazytt.catalog import connector_s04, lollipop_s05, lollipop_guide, load_entry, CATALOG
from lazytt.collapse import (start_quadruple, lambda_collapse, bigon_boundary,
                             collapse_pipeline, CollapseResult)
from lazytt.config import DefaultConfig
from lazytt.errors import PreconditionError
from lazytt.measures import completeness_surrogate
from lazytt.track import TrainTrack, Switch, Surface, infer_surface


@pytest.fixture(scope="module")
def doubled():
    """ Connector with a second copy of branch 0 bounding a bigon """
    sws = [Switch((0, 12), (3, 4)), Switch((13, 1), (2, 8)),
           Switch((5,), (6, 7)), Switch((9,), (10, 11))]
    return TrainTrack(sws, allows_bigons=True, punctures=[(2, 1), (3, 1), (4, 1), (5, 1)])


@pytest.fixture(scope="module")
def carrying():
    return {0: 3, 6: 2, 1: 3, 2: 2, 3: 1, 4: 2, 5: 1}


def test_bigon(doubled):
    bigons = [reg for reg in doubled.regions if reg.is_bigon]
    assert len(bigons) == 1
    boundary = bigon_boundary(doubled, bigons[0])
    assert boundary.embedded
    assert boundary.selfint == ()
    assert sorted(b for side in (boundary.east, boundary.west) for b, _ in side) == [0, 6]


def test_start_quadruple(doubled, carrying):
    ones = {b: 1 for b in doubled.branches}
    quad = start_quadruple(doubled, carrying, ones)
    assert quad.bigon is not None

    with pytest.raises(PreconditionError):
        start_quadruple(doubled, {**carrying, 0: 4}, ones)

    with pytest.raises(PreconditionError):
        start_quadruple(doubled, {**carrying, 6: 3}, ones)

    with pytest.raises(PreconditionError):
        start_quadruple(doubled, carrying, {**ones, 6: 2})


def test_lambda_collapse(doubled, carrying):
    quad = start_quadruple(doubled, carrying, {b: 1 for b in doubled.branches})
    res = lambda_collapse(quad)
    assert isinstance(res, CollapseResult)
    assert res.track == connector_s04()
    assert res.carrying[0] == 5
    assert res.carrying.is_consistent(res.track)
    assert res.trace == ('step1 collapse bigons=0 selfint=0',)
    assert res.steps == 1


def test_no_bigon():
    track = connector_s04()
    quad = start_quadruple(track, {0: 7, 1: 5, 2: 2, 3: 1, 4: 2, 5: 1},
                           {b: 1 for b in track.branches})
    assert quad.bigon is None
    res = lambda_collapse(quad)
    assert res.track == track
    assert res.steps == 0
    assert res.trace == ()


def _entry(name):
    if name == 'lollipop':
        return Surface(0, 5), lollipop_s05(), lollipop_guide()
    return load_entry(name)


@pytest.mark.parametrize('name', sorted(CATALOG) + ['lollipop'])
def test_collapse_pipeline(name):
    surface, track, guide = _entry(name)
    duality, res = collapse_pipeline(track, guide)
    budget = DefaultConfig().collapse_budget_factor * len(duality.track.branches)
    assert res.steps <= budget
    assert len(res.trace) == res.steps

    out = res.track
    assert not out.allows_bigons
    assert infer_surface(out) == surface
    assert (len(out.switches), len(out.branches)) == surface.maximal_counts()[:2]
    report = completeness_surrogate(out)
    assert report.generic
    assert report.maximal
    assert report.transversely_recurrent

    assert res.carrying.is_consistent(out)
    assert res.carrying.support()
    assert res.tangential.is_positive()

    bigons = [int(line.split('bigons=')[1].split()[0]) for line in res.trace]
    start = len([reg for reg in duality.track.regions if reg.is_bigon])
    collapsed = [start] + [n for line, n in zip(res.trace, bigons) if ' collapse ' in line]
    assert len(collapsed) > 1
    assert all(a > b for a, b in zip(collapsed, collapsed[1:]))
    assert bigons[-1] == 0
