""" Test subtracks, tightening and rigid branches """
import pytest

from lazytt.catalog import (lollipop_s05, lollipop_guide, connector_s04, connector_guide,
                            pants_s12, rigid_s04)
from lazytt.errors import PreconditionError, BudgetExceededError, TighteningError
from lazytt.subtracks import (Subtrack, sigma_complexity, proper_subbranches, is_tight,
                              filling_measure, extension_guide, tighten, induced_step,
                              split_completeness, is_rigid, rigid_large_branches,
                              normalize_rigid)
from lazytt.measures import completeness_surrogate
from lazytt.moves import split, SplitRecord
from lazytt.track import Surface, validate, large_branches


@pytest.fixture(scope="module")
def connector():
    return connector_s04()


def test_circle_subtrack(connector):
    sub = Subtrack(connector, [1, 0])
    assert sub.branches == (0, 1)
    assert sub.sigma_switches == ()
    assert len(sub.paths) == 1
    path = sub.paths[0]
    assert path.circle
    assert path.branches == (0, 1)
    assert (path.start, path.end) == (None, None)
    assert sub.path_of(1) is path

    assert sigma_complexity(connector, [0, 1]) == 2
    assert proper_subbranches(connector, [0, 1], 0) == (0, 1)
    assert not is_tight(connector, [0, 1], 0)


def test_whole_track(connector):
    sub = Subtrack(connector, connector.branches)
    assert sub.sigma_switches == (0, 1, 2, 3)
    assert all(len(p.branches) == 1 for p in sub.paths)
    assert is_tight(connector, connector.branches, 3)


def test_bad_subtracks(connector):
    with pytest.raises(PreconditionError):
        Subtrack(connector, [2, 3])

    with pytest.raises(PreconditionError):
        Subtrack(connector, [])

    with pytest.raises(PreconditionError):
        Subtrack(connector, [0, 40])

    with pytest.raises(PreconditionError):
        Subtrack(connector, [0, 1]).path_of(4)


def test_filling_measure(connector):
    nu = filling_measure(connector, [0, 1])
    assert dict(nu) == {0: 1, 1: 1, 2: 0, 3: 0, 4: 0, 5: 0}
    assert nu.is_consistent(connector)

    guide = extension_guide(connector, [0, 1])
    assert guide.is_positive()
    assert guide.is_consistent(connector)


def test_tighten_preconditions(connector):
    with pytest.raises(PreconditionError):
        tighten(connector, [0, 1], 2, connector_guide())

    with pytest.raises(PreconditionError):
        induced_step(connector, [0, 1], 0, 'X', connector_guide())


def test_tighten_twisting_circle(connector):
    """ The connector circle stays two branches long until the guide turns away from it """
    with pytest.raises(BudgetExceededError):
        tighten(connector, [0, 1], 0, connector_guide(), max_steps=1)

    with pytest.raises(TighteningError):
        tighten(connector, [0, 1], 0, connector_guide())


def test_tighten_already_tight(connector):
    res = tighten(connector, connector.branches, 3, connector_guide())
    assert res.track == connector
    assert len(res.sequence) == 0
    assert res.anchor == 3
    assert res.complexities == (6,)


def test_split_completeness():
    assert 'R' in split_completeness(lollipop_s05(), 10)


def test_tighten_lollipop():
    track = lollipop_s05()
    res = tighten(track, [0, 5, 1, 6, 10, 7, 2], 10, lollipop_guide())
    assert tuple(res.sequence) == (SplitRecord(10, 'L'),)
    assert res.anchor == 7
    assert res.complexities == (7, 7)
    assert len(Subtrack(res.track, res.branches).path_of(7).branches) == 1
    assert res.guide.is_consistent(res.track)


def test_rigid_branch():
    track = rigid_s04()
    assert large_branches(track) == [0]
    assert is_rigid(track, 0)
    assert rigid_large_branches(track) == [0]
    assert split_completeness(track, 0) == {'R'}

    out, records = normalize_rigid(track)
    assert records == (SplitRecord(0, 'R'),)
    assert out == split(track, 0, 'R')[0]
    assert rigid_large_branches(out) == []
    assert completeness_surrogate(out).complete
    assert validate(out, Surface(0, 4)).ok


def test_connector_not_rigid(connector):
    assert not is_rigid(connector, 0)
    assert normalize_rigid(connector) == (connector, ())


def _complete_split_walk(seeds, depth):
    """ (track, large branch) pairs met following complete splits only """
    found = []
    layer = list(seeds)
    for _ in range(depth):
        nxt = []
        for track in layer:
            for e in large_branches(track):
                found.append((track, e))
                for direction in sorted(split_completeness(track, e)):
                    nxt.append(split(track, e, direction)[0])
        layer = nxt[:16]
    return found


def test_rigid_iff_one_complete_split():
    """ On S_{0,4} (no trigons) a large branch is rigid iff exactly one split is complete """
    found = _complete_split_walk([connector_s04(), rigid_s04()], 6)
    assert len(found) >= 20
    for track, e in found:
        assert is_rigid(track, e) == (len(split_completeness(track, e)) == 1)


def test_subtrack_fills(connector):
    assert Subtrack(connector, connector.branches).fills
    assert len(Subtrack(connector, connector.branches).regions) == len(connector.regions)

    circle = Subtrack(pants_s12(), [0, 1])
    assert not circle.fills
    with pytest.raises(PreconditionError):
        circle.regions

    report = validate(Subtrack(connector, [0, 1]).restricted, Surface(0, 4))
    assert 'euler-mismatch' in report.clauses()
