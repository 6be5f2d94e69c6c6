""" Test splits, collisions, collapses, shifts and combing """
from fractions import Fraction

import pytest
from hypothesis import assume, given, settings, strategies as st

from lazytt.canonical import isomorphic
from lazytt.catalog import (lollipop_s05, lollipop_guide, connector_s04,
                            connector_measure, one_vertex_track, comb_generic,
                            pants_s05, pants_s12, pants_s20)
from lazytt.dual import dual_track, sneak_up, census
from lazytt.errors import PreconditionError
from lazytt.measures import positive_transverse
from lazytt.moves import (split, collide, collapse, shift, smoothed, mu_direction,
                          transport_transverse, apply_records, parse_direction,
                          excess_valence, comb_switch, comb_step, transport_comb, comb,
                          split_branches_touch,
                          SplitRecord, RIGHT, LEFT, COLLISION)
from lazytt.strips import strip_key
from lazytt.track import (Switch, Surface, validate, large_branches,
                          classify_branch, region_signatures, LARGE, MIXED)


@pytest.fixture(scope="module")
def lollipop():
    return lollipop_s05()


@pytest.fixture(scope="module")
def connector():
    return connector_s04()


def test_parse_direction():
    assert parse_direction('r') == RIGHT
    assert parse_direction('LEFT') == LEFT
    assert parse_direction('x') == COLLISION
    with pytest.raises(PreconditionError):
        parse_direction('Q')


def test_split_right_lollipop(lollipop):
    out, bij = split(lollipop, 10, 'R')
    assert bij.diagonal == 10
    assert bij.is_identity()
    assert out.switches[5] == Switch((20, 15), (11,))
    assert out.switches[6] == Switch((22,), (13, 21))
    assert validate(out, Surface(0, 5)).ok
    assert region_signatures(out) == region_signatures(lollipop)
    assert classify_branch(out, 5) == LARGE
    assert classify_branch(out, 11) == LARGE


def test_split_collapse_inverse(lollipop):
    for direction in ('R', 'L'):
        out, _ = split(lollipop, 10, direction)
        back = collapse(out, 10)
        assert back is not None
        assert back[0] == lollipop


def test_split_preconditions(connector):
    with pytest.raises(PreconditionError):
        split(connector, 1, 'R')

    with pytest.raises(PreconditionError):
        split(connector, 0, 'X')

    with pytest.raises(PreconditionError):
        collapse(connector, 0)

    with pytest.raises(PreconditionError):
        shift(connector, 0)


def test_connector_split_cycle(connector):
    """ Two left splits return the connector """
    once, _ = split(connector, 0, 'L')
    assert large_branches(once) == [1]
    twice, _ = split(once, 1, 'L')
    assert twice == connector
    assert apply_records(connector, [SplitRecord(0, 'L'), SplitRecord(1, 'L')]) == connector


def test_mu_direction_and_transport(lollipop, connector):
    guide = lollipop_guide()
    assert mu_direction(lollipop, guide, 10) == RIGHT
    out = transport_transverse(lollipop, guide, SplitRecord(10, 'R'))
    assert out[10] == 4
    assert out.is_consistent(split(lollipop, 10, 'R')[0])

    mu = connector_measure()
    assert mu_direction(connector, mu, 0) == LEFT
    mu1 = transport_transverse(connector, mu, SplitRecord(0, 'L'))
    assert mu1[0] == 3
    once = split(connector, 0, 'L')[0]
    assert mu1.is_consistent(once)
    assert mu_direction(once, mu1, 1) == LEFT
    mu2 = transport_transverse(once, mu1, SplitRecord(1, 'L'))
    assert mu2[1] == 1
    assert mu2.is_consistent(connector)


def test_transport_wrong_direction(connector):
    mu = connector_measure()
    with pytest.raises(PreconditionError):
        transport_transverse(connector, mu, SplitRecord(0, 'R'))

    with pytest.raises(PreconditionError):
        transport_transverse(connector, mu, SplitRecord(0, 'X'))


def test_collide(connector):
    out, bij = collide(connector, 0)
    assert 0 not in out.branches
    assert 0 not in bij
    assert bij.diagonal == 0
    assert sorted(sw.valence for sw in out.switches) == [2, 2, 3, 3]

    smooth = smoothed(out)
    assert all(sw.valence != 2 for sw in smooth.switches)
    assert len(smooth.switches) == 2


def test_shift_twice(connector):
    assert classify_branch(connector, 2) == MIXED
    once, _ = shift(connector, 2)
    assert classify_branch(once, 2) == MIXED
    assert once.switches[0] == Switch((0,), (4, 7))
    assert once.switches[2] == Switch((5,), (3, 6))
    twice, _ = shift(once, 2)
    assert twice.switches == connector.switches


def test_branches_touch(lollipop):
    assert split_branches_touch(lollipop, 10, 5)
    assert not split_branches_touch(lollipop, 0, 1)


def test_comb_switch():
    torus = one_vertex_track(2)
    assert excess_valence(torus) == 5
    once = comb_switch(torus, 0)
    assert excess_valence(once) == 4
    assert len(once.switches) == 2

    generic = comb_generic(one_vertex_track(1))
    assert generic.switches == (Switch((1,), (2, 4)), Switch((0,), (3, 5)))
    assert excess_valence(generic) == 0

    with pytest.raises(PreconditionError):
        comb_switch(generic, 0)


def test_comb_step_measure():
    """ The torus bigon puts no constraint on q, so q is half the smaller weight """
    torus = one_vertex_track(1)
    out, nu = comb_step(torus, 0, {0: 1, 1: Fraction(1, 2)})
    assert out == comb_switch(torus, 0)
    assert dict(nu) == {0: Fraction(1, 4), 1: Fraction(1, 4), 2: Fraction(3, 4)}
    assert nu.violations(out) == []

    carried = transport_comb(torus, 0, {0: 2, 1: 3})
    assert dict(carried) == {0: 5, 1: 3, 2: 2}
    assert carried.is_consistent(out)

    track, nu, transverse, steps = comb(torus, {0: 1, 1: Fraction(1, 2)}, {0: 2, 1: 3})
    assert steps == 1
    assert track == out
    assert transverse == carried


def test_comb_dual():
    duality = dual_track(lollipop_s05())
    dual = duality.track
    nu = sneak_up(duality, lollipop_guide())
    carrying = positive_transverse(dual)
    excess = excess_valence(dual)
    assert excess > 0

    track, combed, transverse, steps = comb(dual, nu, carrying)
    assert steps == excess
    assert excess_valence(track) == 0
    assert census(track) == census(dual)
    assert combed.is_positive()
    assert combed.violations(track, strict_trigons=True) == []
    assert transverse.is_consistent(track)


SEEDS = [lollipop_s05, connector_s04, pants_s05, pants_s12, pants_s20]


@st.composite
def split_walks(draw):
    """ A seed track after a few random splits """
    track = draw(st.sampled_from(SEEDS))()
    for _ in range(draw(st.integers(0, 4))):
        e = draw(st.sampled_from(large_branches(track)))
        track, _ = split(track, e, draw(st.sampled_from(['R', 'L'])))
    return track


@settings(max_examples=1000, deadline=None)
@given(split_walks(), st.data())
def test_collapse_undoes_split(track, data):
    e = data.draw(st.sampled_from(large_branches(track)))
    direction = data.draw(st.sampled_from(['R', 'L']))
    out, _ = split(track, e, direction)
    back = collapse(out, e)
    assert back is not None
    assert isomorphic(back[0], track)


@settings(max_examples=200, deadline=None)
@given(split_walks(), st.data())
def test_disjoint_splits_commute(track, data):
    large = large_branches(track)
    pairs = [(a, b) for a in large for b in large
             if a < b and not split_branches_touch(track, a, b)]
    assume(pairs)
    a, b = data.draw(st.sampled_from(pairs))
    da = data.draw(st.sampled_from(['R', 'L']))
    db = data.draw(st.sampled_from(['R', 'L']))
    first = split(split(track, a, da)[0], b, db)[0]
    second = split(split(track, b, db)[0], a, da)[0]
    assert strip_key(first) == strip_key(second)
