""" Test dual bigon tracks and sneaking up """
import pytest

from lazytt.canonical import isomorphic
from lazytt.catalog import (lollipop_s05, lollipop_guide, connector_s04, connector_guide,
                            connector_measure, one_vertex_track, grow)
from lazytt.dual import (dual_track, census, dual_branch_bound, induced_tangential,
                         sneak_up, sneak_up_accounting, arc_pulls, lift_guide)
from lazytt.measures import GuideMeasure, positive_transverse
from lazytt.errors import PreconditionError
from lazytt.track import Surface, relabel


@pytest.fixture(scope="module")
def duality():
    return dual_track(lollipop_s05())


def test_dual_shape(duality):
    dual = duality.track
    assert dual.allows_bigons
    assert len(dual.switches) == 11
    assert len(dual.branches) == 23
    assert len(dual.branches) <= dual_branch_bound(Surface(0, 5))
    assert dual_branch_bound(Surface(0, 5)) == 28
    assert census(dual) == {'trigons': 1, 'monogons': 5, 'bigons': 8, 'other': 0}
    assert duality.arcs == tuple(range(12))
    assert len(dual.punctures) == 5


def test_dual_of_relabeled():
    track = lollipop_s05()
    other = relabel(track, switch_order=[7, 6, 5, 4, 3, 2, 1, 0])
    assert isomorphic(dual_track(other).track, dual_track(track).track)


def test_dual_preconditions():
    with pytest.raises(PreconditionError):
        dual_track(one_vertex_track(1))

    with pytest.raises(PreconditionError):
        dual_track(one_vertex_track(2))


def test_induced(duality):
    nu = induced_tangential(duality, lollipop_guide())
    assert all(nu[b] == lollipop_guide()[b] for b in duality.arcs)
    assert all(nu[t] == 0 for t in duality.trunks)


def test_sneak_up(duality):
    nu = sneak_up(duality, lollipop_guide())
    assert nu.is_positive()
    assert nu.violations(duality.track, strict_trigons=True) == []
    assert all(nu[t] == 1 for t in duality.trunks)

    accounting = sneak_up_accounting(duality, lollipop_guide())
    assert accounting.balanced
    assert accounting.trunks == len(duality.trunks)


def test_sneak_up_preconditions(duality):
    with pytest.raises(PreconditionError):
        sneak_up(duality, connector_measure())

    with pytest.raises(PreconditionError):
        sneak_up(duality, {b: 4 for b in range(5)})

    with pytest.raises(PreconditionError):
        sneak_up(duality, {b: 4 for b in range(12)})

    with pytest.raises(PreconditionError):
        sneak_up(duality, lollipop_guide().updated({10: 25}))


def test_sneak_up_minimum_four():
    connector = dual_track(connector_s04())
    guide = {0: 12, 1: 4, 2: 8, 3: 4, 4: 8, 5: 4}
    assert GuideMeasure(guide).is_consistent(connector_s04())

    pulled = arc_pulls(connector)
    assert pulled[1] == 4
    assert max(pulled.values()) <= 4

    with pytest.raises(PreconditionError) as excinfo:
        sneak_up(connector, guide)
    assert 'branch 1' in str(excinfo.value)

    lifted = lift_guide(connector, guide)
    assert dict(lifted) == {b: 2 * w for b, w in guide.items()}
    nu = sneak_up(connector, lifted)
    assert nu.is_positive()
    assert nu.violations(connector.track, strict_trigons=True) == []

    assert lift_guide(connector, connector_guide()) == connector_guide()


def test_lift_grown_guide():
    track = grow(Surface(1, 2))
    duality = dual_track(track)
    guide = GuideMeasure.from_transverse(positive_transverse(track), minimum=4)
    assert min(guide.values()) >= 4

    lifted = lift_guide(duality, guide)
    pulled = arc_pulls(duality)
    assert all(lifted[b] > pulled[b] for b in duality.arcs)
    nu = sneak_up(duality, lifted)
    assert nu.is_positive()
