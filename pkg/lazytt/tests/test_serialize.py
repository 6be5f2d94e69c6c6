""" Test the track, measure and record text formats """
import os
import time
from fractions import Fraction

import pytest

from lazytt.catalog import lollipop_s05, lollipop_guide, connector_s04, one_vertex_track
from lazytt.errors import TrackParseError, TrackStructureError
from lazytt.moves import SplitRecord
from lazytt.serialize import (dumps, loads, dump, load, dumps_measure, loads_measure,
                              dumps_records, loads_records, parse_branch)
from lazytt.track import region_signatures


@pytest.fixture(scope="module")
def track_file():
    """ Write the lollipop to a track file in the working directory """
    filename = 'temp_lollipop.trk'
    dump(lollipop_s05(), filename)

    yield filename

    time.sleep(1)
    try:
        os.remove(filename)
    except Exception:
        print('Could not delete {}'.format(filename))


def test_dumps_format():
    text = dumps(connector_s04())
    lines = text.splitlines()
    assert lines[0] == 'track'
    assert lines[1] == 'sw 0 a:0.0 b:1.1,2.0'
    assert lines[5] == 'br 0 0:a:0 1:a:0'
    assert sum(line.startswith('punct') for line in lines) == 4
    assert text.endswith('\n')
    assert dumps(one_vertex_track(1)).startswith('bigontrack\n')


def test_round_trip():
    for track in (lollipop_s05(), connector_s04(), one_vertex_track(2)):
        text = dumps(track)
        again = loads(text)
        assert dumps(again) == text
        assert again.switches == track.switches
        assert region_signatures(again) == region_signatures(track)


def test_file_io(track_file):
    track = load(track_file)
    assert track.switches == lollipop_s05().switches
    with open(track_file) as fid:
        assert load(fid) == track


def test_comments_and_blank_lines():
    text = '# connector\n' + dumps(connector_s04()).replace('\n', '  # c\n\n', 1)
    assert loads(text).switches == connector_s04().switches


def test_parse_errors():
    with pytest.raises(TrackParseError) as exc:
        loads('track\nsw 0 a:0.0 b:x.1\n')
    assert (exc.value.line, exc.value.column) == (2, 12)

    with pytest.raises(TrackParseError) as exc:
        loads('')
    assert exc.value.line == 1

    with pytest.raises(TrackParseError):
        loads('tracks\n')

    with pytest.raises(TrackParseError) as exc:
        loads('track\nsw 0 a:0.0 b:0.1\nbogus 3\n')
    assert exc.value.line == 3

    with pytest.raises(TrackParseError):
        loads('track\nsw 0 a:0.0 b:0.1\nbr 0 0:b:0 0:a:0\n')

    with pytest.raises(TrackParseError):
        loads('track\nsw 0 a:0.0 b:0.1\npunct 5\n')


def test_structure_errors():
    with pytest.raises(TrackStructureError):
        loads('track\nsw 0 a:0.0 b:1.0\n')

    with pytest.raises(TrackStructureError):
        loads('track\nsw 1 a:0.0 b:0.1\n')


def test_measure_text():
    guide = lollipop_guide()
    text = dumps_measure(guide)
    assert text.splitlines()[0] == '0 6/1'
    assert loads_measure(text) == dict(guide)
    assert loads_measure('e3 1/2  # half\n\n4 7\n') == {3: Fraction(1, 2), 4: 7}

    with pytest.raises(TrackParseError) as exc:
        loads_measure('0 1\n1 x/2\n')
    assert (exc.value.line, exc.value.column) == (2, 3)


def test_records_text():
    recs = (SplitRecord(10, 'R'), SplitRecord(5, 'L'), SplitRecord(7, 'X'))
    text = dumps_records(recs)
    assert text == 'split 10 R\nsplit 5 L\nsplit 7 X\n'
    assert loads_records(text) == recs
    assert loads_records('split e10 R\n') == (SplitRecord(10, 'R'),)
    assert parse_branch(' b4 ') == 4

    with pytest.raises(TrackParseError):
        loads_records('split 10 Q\n')
