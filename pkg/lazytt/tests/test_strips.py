""" Test splitting sequences and flat strips """
import pytest

from lazytt.catalog import lollipop_s05, lollipop_guide
from lazytt.errors import PreconditionError, NotInStripError
from lazytt.moves import split, SplitRecord
from lazytt.strips import (SplittingSequence, enumerate_strip, strip_key, front_loadable,
                           front_loadable_oracle, canonical_sequence, strip_meet,
                           project_meet, join_theta, sublevel_sets_connected)


def _unit(i):
    phi = [0] * 12
    phi[i] = 1
    return tuple(phi)


E5, E11 = _unit(5), _unit(11)
CORNER = tuple(a + b for a, b in zip(E5, E11))
ROOT = tuple([0] * 12)
RECORDS = (SplitRecord(5, 'R'), SplitRecord(11, 'R'))


@pytest.fixture(scope="module")
def base():
    return split(lollipop_s05(), 10, 'R')[0]


@pytest.fixture(scope="module")
def square(base):
    """ Two independent splits span a square """
    return enumerate_strip(base, RECORDS)


def test_sequence(base):
    seq = SplittingSequence(base, [(5, 'r'), (11, 'R')])
    assert seq.records == RECORDS
    assert len(seq.tracks) == 3
    assert seq.bijections[-1].is_identity()
    assert seq.suffix(1).records == RECORDS[1:]
    assert seq.target == split(split(base, 5, 'R')[0], 11, 'R')[0]

    with pytest.raises(PreconditionError):
        SplittingSequence(base, [(5, 'X')])

    with pytest.raises(PreconditionError):
        SplittingSequence(base, [(0, 'R')])


def test_square_vertices(square):
    assert len(square) == 4
    assert set(square.vertices) == {ROOT, E5, E11, CORNER}
    assert len(square.edges) == 4
    assert not square.truncated
    assert not square.guided
    assert square.root == ROOT
    assert square.phi_matrix.shape == (4, 12)
    assert square.edge_array.shape == (4, 4)
    assert E5 in square
    assert square.vertex(CORNER).residual == ()


def test_square_lookup(base, square):
    once = split(base, 5, 'R')[0]
    assert square.find(once).phi == E5
    assert square.contains_track(base)
    assert len(square.records_to(CORNER)) == 2
    assert square.sequence_to(CORNER).target.switches == square.vertex(CORNER).track.switches

    with pytest.raises(NotInStripError):
        square.vertex(_unit(0))

    with pytest.raises(NotInStripError):
        square.find(lollipop_s05())


def test_meet_and_join(square):
    assert strip_meet(square, E5, E11).phi == ROOT
    assert strip_meet(square, E5, CORNER).phi == E5
    assert join_theta(square, E5, E11).phi == CORNER
    assert project_meet(square, [SplitRecord(5, 'R')]).phi == E5
    assert sublevel_sets_connected(square)


def test_front_loadable(base):
    residual = [SplitRecord(11, 'R'), SplitRecord(5, 'R')]
    assert front_loadable(base, residual, 5) == SplitRecord(5, 'R')
    assert front_loadable_oracle(base, residual, 5) == SplitRecord(5, 'R')
    assert front_loadable(base, [SplitRecord(5, 'R')], 11) is None

    with pytest.raises(PreconditionError):
        front_loadable(base, residual, 0)

    canon = canonical_sequence(base, residual)
    assert canon.records == RECORDS
    assert canonical_sequence(base, canon.records).records == canon.records


def test_strip_key(base):
    moved = base.replace(punctures=[(5 + i, 0) if i == 0 else (i, 1) for i in range(5)])
    assert strip_key(base) == strip_key(strip_key(base))
    assert len(strip_key(moved).punctures) == 5


def test_threads_agree(base, square):
    threaded = enumerate_strip(base, SplittingSequence(base, RECORDS), jobs=2)
    assert set(threaded.vertices) == set(square.vertices)


def test_foreign_witness(base):
    with pytest.raises(NotInStripError):
        enumerate_strip(base, SplittingSequence(lollipop_s05(), [(10, 'R')]))


def test_guided_strip():
    track = lollipop_s05()
    strip = enumerate_strip(track, lollipop_guide(), radius=2)
    assert strip.guided
    assert strip.radius == 2
    assert strip.truncated
    assert all(sum(phi) <= 2 for phi in strip.vertices)
    assert strip.vertex(_unit(10)).record == SplitRecord(10, 'R')
    for vert in strip.vertices.values():
        assert vert.measure.is_consistent(vert.track)

    with pytest.raises(PreconditionError):
        enumerate_strip(track, {0: 1})
