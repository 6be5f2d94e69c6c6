"""
Text formats.

Track grammar (one record per line, ``#`` starts a comment)::

    track | bigontrack
    sw <id> a:<dart>,<dart>... b:<dart>,...      dart = <branch>.<end>
    br <id> <switch>:<a|b>:<pos> <switch>:<a|b>:<pos>
    punct <region-index>
    mark <branch> <side>

Switch ids must be 0..n-1 in order. ``br`` lines must agree with the
``sw`` lines. Region indices refer to the order of ``trace_regions``.

Measures are ``<branch> <num>/<den>`` lines, split records are
``split <branch> R|L|X`` lines.
"""
import io as _io

from .errors import (TrackParseError as _TrackParseError,
                     TrackStructureError as _TrackStructureError)
from .track import TrainTrack as _TrainTrack, Switch as _Switch
from .nonh5utils import as_fraction as _as_fraction

__all__ = ['dumps', 'loads', 'dump', 'load', 'dumps_measure', 'loads_measure',
           'dumps_records', 'loads_records', 'dumps_strip', 'dumps_complex',
           'read_text', 'parse_branch']

_SIDE_NAMES = ('a', 'b')


def _dart_str(h):
    return '{}.{}'.format(h // 2, h % 2)


def dumps(track):
    """ Serialize a track (deterministic, newline terminated) """
    lines = ['bigontrack' if track.allows_bigons else 'track']
    for sid, sw in enumerate(track.switches):
        lines.append('sw {} a:{} b:{}'.format(sid, ','.join(_dart_str(h) for h in sw.side_a),
                                            ','.join(_dart_str(h) for h in sw.side_b)))
    for b in track.branches:
        ends = []
        for h in (2 * b, 2 * b + 1):
            slot = track.slot(h)
            ends.append('{}:{}:{}'.format(slot.switch, _SIDE_NAMES[slot.side], slot.position))
        lines.append('br {} {} {}'.format(b, ends[0], ends[1]))
    for idx in sorted(track.region_of_side[bs] for bs in track.punctures):
        lines.append('punct {}'.format(idx))
    for b, s in track.marked_points:
        lines.append('mark {} {}'.format(b, s))
    return '\n'.join(lines) + '\n'


def _tokens(line):
    """ (column, token) pairs, columns 1-based """
    out = []
    col = 0
    for tok in line.split():
        col = line.index(tok, col)
        out.append((col + 1, tok))
        col += len(tok)
    return out


def _int(tok, lineno, col, what):
    try:
        return int(tok)
    except ValueError:
        raise _TrackParseError('expected {} but found {!r}'.format(what, tok), lineno, col) from None


def _parse_darts(tok, lineno, col):
    side_name, _, body = tok.partition(':')
    if side_name not in _SIDE_NAMES or not body:
        raise _TrackParseError('expected a:<darts> or b:<darts>', lineno, col)
    darts = []
    for part in body.split(','):
        b, dot, end = part.partition('.')
        if not dot or end not in ('0', '1'):
            raise _TrackParseError('bad dart {!r}'.format(part), lineno, col)
        darts.append(2 * _int(b, lineno, col, 'branch') + int(end))
    return side_name, tuple(darts)


def loads(text):
    """
    Parse a track.

    Raises
    ------
    TrackParseError
        Syntax problems, with line and column.

    TrackStructureError
        Dangling or inconsistent references.
    """
    header = None
    switches = {}
    branch_lines = []
    punct = []
    marks = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split('#', 1)[0].rstrip()
        toks = _tokens(line)
        if not toks:
            continue
        col, key = toks[0]
        if header is None:
            if key not in ('track', 'bigontrack') or len(toks) != 1:
                raise _TrackParseError("expected 'track' or 'bigontrack'", lineno, col)
            header = key
            continue
        if key == 'sw':
            if len(toks) != 4:
                raise _TrackParseError('sw needs an id and two sides', lineno, col)
            sid = _int(toks[1][1], lineno, toks[1][0], 'switch id')
            sides = {}
            for c, tok in toks[2:]:
                name, darts = _parse_darts(tok, lineno, c)
                sides[name] = darts
            if set(sides) != {'a', 'b'}:
                raise _TrackParseError('sw needs both a: and b:', lineno, col)
            if sid in switches:
                raise _TrackParseError('switch {} defined twice'.format(sid), lineno, toks[1][0])
            switches[sid] = (_Switch(sides['a'], sides['b']), lineno)
        elif key == 'br':
            if len(toks) != 4:
                raise _TrackParseError('br needs an id and two slots', lineno, col)
            b = _int(toks[1][1], lineno, toks[1][0], 'branch id')
            ends = []
            for c, tok in toks[2:]:
                parts = tok.split(':')
                if len(parts) != 3 or parts[1] not in _SIDE_NAMES:
                    raise _TrackParseError('slot must be <switch>:<a|b>:<pos>', lineno, c)
                ends.append((_int(parts[0], lineno, c, 'switch id'), _SIDE_NAMES.index(parts[1]),
                             _int(parts[2], lineno, c, 'position'), c))
            branch_lines.append((b, ends, lineno))
        elif key == 'punct':
            if len(toks) != 2:
                raise _TrackParseError('punct needs a region index', lineno, col)
            punct.append((_int(toks[1][1], lineno, toks[1][0], 'region index'), lineno, toks[1][0]))
        elif key == 'mark':
            if len(toks) != 3:
                raise _TrackParseError('mark needs a branch and a side', lineno, col)
            marks.append((_int(toks[1][1], lineno, toks[1][0], 'branch'),
                          _int(toks[2][1], lineno, toks[2][0], 'side')))
        else:
            raise _TrackParseError('unknown record {!r}'.format(key), lineno, col)
    if header is None:
        raise _TrackParseError('empty input', 1, 1)
    if sorted(switches) != list(range(len(switches))):
        raise _TrackStructureError('switch ids must be 0..{}'.format(len(switches) - 1))
    track = _TrainTrack([switches[k][0] for k in range(len(switches))],
                        allows_bigons=(header == 'bigontrack'), marked_points=marks)
    for b, ends, lineno in branch_lines:
        for end, (sid, side, pos, col) in enumerate(ends):
            h = 2 * b + end
            try:
                slot = track.slot(h)
            except _TrackStructureError:
                raise _TrackParseError('branch {} is not on any switch'.format(b), lineno, col) from None
            if (slot.switch, slot.side, slot.position) != (sid, side, pos):
                raise _TrackParseError('br {} end {} disagrees with the sw records'.format(b, end),
                                       lineno, col)
    if punct:
        regs = track.regions
        marks_p = []
        for idx, lineno, col in punct:
            if not 0 <= idx < len(regs):
                raise _TrackParseError('no region {}'.format(idx), lineno, col)
            marks_p.append(regs[idx].branch_sides()[0])
        track = track.replace(punctures=marks_p)
    return track


def read_text(source):
    """ Text of a path, '-' (stdin) or an open file object """
    if hasattr(source, 'read'):
        return source.read()
    if source == '-':
        import sys as _sys
        return _sys.stdin.read()
    with open(source, 'r') as fid:
        return fid.read()


def load(source):
    return loads(read_text(source))


def dump(track, target):
    if hasattr(target, 'write'):
        target.write(dumps(track))
    else:
        with open(target, 'w') as fid:
            fid.write(dumps(track))


def parse_branch(token):
    """ '7' or 'e7' -> 7 """
    token = token.strip()
    if token[:1] in ('e', 'b'):
        token = token[1:]
    return int(token)


def dumps_measure(weights):
    """ '<branch> <num>/<den>' lines in branch order """
    out = _io.StringIO()
    for b in sorted(weights):
        val = _as_fraction(weights[b])
        out.write('{} {}/{}\n'.format(b, val.numerator, val.denominator))
    return out.getvalue()


def loads_measure(text):
    """ Parse measure lines into {branch: Fraction} """
    weights = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split('#', 1)[0].strip()
        if not line:
            continue
        toks = line.split()
        if len(toks) != 2:
            raise _TrackParseError('expected <branch> <num>/<den>', lineno, 1)
        b = parse_branch(toks[0])
        try:
            weights[b] = _as_fraction(toks[1])
        except (ValueError, ZeroDivisionError):
            raise _TrackParseError('bad weight {!r}'.format(toks[1]), lineno,
                                   raw.index(toks[1]) + 1) from None
    return weights


def dumps_records(records):
    return ''.join('split {} {}\n'.format(rec.slot, rec.direction) for rec in records)


def loads_records(text):
    """ Parse 'split <branch> R|L|X' lines into SplitRecord tuples """
    from .moves import SplitRecord as _SplitRecord
    recs = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split('#', 1)[0].strip()
        if not line:
            continue
        toks = line.split()
        if len(toks) != 3 or toks[0] != 'split' or toks[2] not in ('R', 'L', 'X'):
            raise _TrackParseError('expected split <branch> R|L|X', lineno, 1)
        recs.append(_SplitRecord(parse_branch(toks[1]), toks[2]))
    return tuple(recs)


def dumps_strip(strip):
    """ 'v <id> phi:<vector>' and 'e <id> <id> <slot> <dir>' lines """
    lines = []
    index = {}
    for vid, vert in enumerate(strip.ordered_vertices()):
        index[vert.phi] = vid
        lines.append('v {} phi:{}'.format(vid, ','.join(str(x) for x in vert.phi)))
    for edge in strip.edges:
        lines.append('e {} {} {} {}'.format(index[edge.source], index[edge.target],
                                            edge.slot, edge.direction))
    if strip.truncated:
        lines.append('truncated')
    return '\n'.join(lines) + '\n'


def dumps_complex(cplx):
    """ 'cube <dim> <base-id> <dirs>' lines """
    index = {phi: vid for vid, phi in enumerate(cplx.vertices)}
    lines = []
    for dim in sorted(cplx.cubes):
        for base, dirs in cplx.cubes[dim]:
            lines.append('cube {} {} {}'.format(dim, index[base],
                                                ','.join(str(d) for d in dirs) if dirs else '-'))
    return '\n'.join(lines) + '\n'
