""" Canonical forms of tracks up to orientation-preserving isomorphism """
from collections import deque as _deque

from .track import (TrainTrack as _TrainTrack, Switch as _Switch, twin as _twin,
                    branch_of as _branch_of)

__all__ = ['canonical_track', 'canonical_label', 'isomorphic']


def _bfs_labels(track, start):
    """ Dart labels and switch visiting order of a BFS from start """
    labels = {}
    order = []
    seen = set()
    queue = _deque()

    def visit(entry):
        sid = track.switch_of(entry)
        if sid not in seen:
            seen.add(sid)
            order.append((sid, entry))
            queue.append((sid, entry))

    visit(start)
    while queue:
        sid, entry = queue.popleft()
        rot = track.switches[sid].rotation
        k = rot.index(entry)
        for h in rot[k:] + rot[:k]:
            if h not in labels:
                labels[h] = len(labels)
            tw = _twin(h)
            if tw not in labels:
                labels[tw] = len(labels)
            visit(tw)
    return labels, order


def _rotation_from(track, sid, entry):
    rot = track.switches[sid].rotation
    k = rot.index(entry)
    return rot[k:] + rot[:k]


def _component_code(track, start, region_of_dart):
    labels, order = _bfs_labels(track, start)
    sw_code = []
    for sid, entry in order:
        sw_code.append(tuple((labels[h], labels[_twin(h)], track.is_cusp_corner(h))
                             for h in _rotation_from(track, sid, entry)))
    region_min = {}
    for h, lab in labels.items():
        reg = region_of_dart[h]
        region_min[reg] = min(lab, region_min.get(reg, lab))
    comp_branches = set(_branch_of(h) for h in labels)
    punct = []
    for b, s in track.punctures:
        if b in comp_branches:
            punct.append(region_min[track.region_of_side[(b, s)]])
    marks = []
    for b, s in track.marked_points:
        if b in comp_branches:
            l0, l1 = labels[2 * b], labels[2 * b + 1]
            marks.append((min(l0, l1), s if l0 < l1 else 1 - s))
    code = (tuple(sw_code), tuple(sorted(punct)), tuple(sorted(marks)))
    return code, labels, order


def _best_start(track, comp, region_of_dart):
    best = None
    for sid in comp:
        for h in track.switches[sid].rotation:
            cand = _component_code(track, h, region_of_dart)
            if best is None or cand[0] < best[0]:
                best = cand
    return best


def canonical_track(track):
    """
    Relabeled copy of track that depends only on its isomorphism class.

    Parameters
    ----------
    track : TrainTrack

    Returns
    -------
    TrainTrack
        Switches in breadth-first order, branches numbered by first visit,
        puncture marks moved to the first traversal of their region.

    Notes
    -----
    Every dart of every component is tried as the starting point and the
    lexicographically smallest traversal code wins. Only orientation
    preserving isomorphisms are detected.
    """
    # Corners cover every dart exactly once.
    region_of_dart = {h: reg.index for reg in track.regions for h in reg.corners}

    results = [_best_start(track, comp, region_of_dart) for comp in track.components]
    results.sort(key=lambda item: item[0])

    new_dart = {}
    switches = []
    branch_offset = 0
    for code, labels, order in results:
        pairs = sorted(set(min(labels[h], labels[_twin(h)]) for h in labels))
        rank = {lab: idx for idx, lab in enumerate(pairs)}
        for h, lab in labels.items():
            low = min(lab, labels[_twin(h)])
            new_dart[h] = 2 * (branch_offset + rank[low]) + (0 if lab == low else 1)
        branch_offset += len(pairs)
        for sid, entry in order:
            switches.append(_canonical_switch(track, sid, entry, new_dart))

    def new_side(b, s):
        nb = new_dart[2 * b] // 2
        flipped = new_dart[2 * b] % 2 == 1
        return nb, (1 - s if flipped else s)

    marks = [new_side(b, s) for b, s in track.marked_points]
    relabeled = _TrainTrack(switches, track.allows_bigons,
                            [new_side(b, s) for b, s in track.punctures], marks)
    # Move puncture marks to the first traversal of their region.
    regs = relabeled.regions
    punct = [regs[relabeled.region_of_side[bs]].branch_sides()[0] for bs in relabeled.punctures]
    return relabeled.replace(punctures=punct)


def _canonical_switch(track, sid, entry, new_dart):
    rot = _rotation_from(track, sid, entry)
    n = len(rot)
    smooth = [i for i in range(n) if not track.is_cusp_corner(rot[i])]
    i1, i2 = smooth[0], smooth[-1]
    arc_x = rot[i1 + 1:i2 + 1]
    arc_y = rot[i2 + 1:] + rot[:i1 + 1]
    return _Switch(tuple(new_dart[h] for h in arc_y),
                   tuple(new_dart[h] for h in reversed(arc_x)))


def canonical_label(track):
    """
    Canonical byte string.

    Equal for two tracks iff an orientation-preserving ribbon isomorphism
    matching puncture regions and marked points exists.
    """
    from .serialize import dumps as _dumps
    return _dumps(canonical_track(track)).encode('ascii')


def isomorphic(track_a, track_b):
    return canonical_label(track_a) == canonical_label(track_b)
