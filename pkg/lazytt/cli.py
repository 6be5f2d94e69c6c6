"""
Command-line front end.

Every subcommand reads tracks in the text format of ``serialize`` ('-' is
stdin), calls one module operation and prints line-oriented results on
stdout. Log records go to stderr.

Exit status: 0 success, 1 invariant or precondition violation (clause on
stderr), 2 usage or parse error (``line:col`` on stderr).
"""
import argparse as _argparse
import logging as _logging
import sys as _sys

from . import __version__
from . import bicombing as _bicombing
from . import canonical as _canonical
from . import catalog as _catalog
from . import collapse as _collapse
from . import create as _create
from . import cubical as _cubical
from . import dual as _dual
from . import measures as _measures
from . import moves as _moves
from . import serialize as _serialize
from . import strips as _strips
from . import track as _track
from .config import DefaultConfig
from .errors import (TrackParseError as _TrackParseError,
                     TrackStructureError as _TrackStructureError,
                     PreconditionError as _PreconditionError,
                     InfeasibleError as _InfeasibleError,
                     NotInStripError as _NotInStripError,
                     TighteningError as _TighteningError,
                     BudgetExceededError as _BudgetExceededError,
                     InvariantViolation as _InvariantViolation)
from .nonh5utils import fraction_str as _fraction_str, decimal_str as _decimal_str

logger = _logging.getLogger(__name__)

_EXIT_OK, _EXIT_VIOLATION, _EXIT_USAGE = 0, 1, 2


def _load_track(source):
    return _serialize.load(source)


def _load_measure(source):
    return _serialize.loads_measure(_serialize.read_text(source))


def _load_records(source):
    return _serialize.loads_records(_serialize.read_text(source))


def _branch(token):
    try:
        return _serialize.parse_branch(token)
    except ValueError:
        raise _argparse.ArgumentTypeError('bad branch {!r}'.format(token)) from None


def _branch_list(token):
    return tuple(_branch(tok) for tok in token.split(',') if tok.strip())


def _surface(token):
    try:
        g, m = (int(x) for x in token.split(','))
    except ValueError:
        raise _argparse.ArgumentTypeError('surface must be <genus>,<punctures>') from None
    return _track.Surface(g, m)


def _exact(value, digits):
    return '{} {}'.format(_fraction_str(value), _decimal_str(value, digits))


def _write(text):
    _sys.stdout.write(text if text.endswith('\n') else text + '\n')


def _target(track, args):
    """ SplittingSequence from --records, or GuideMeasure from --guide """
    if args.records is not None:
        return _strips.SplittingSequence(track, _load_records(args.records))
    if args.guide is not None:
        return _measures.GuideMeasure(_load_measure(args.guide))
    raise _PreconditionError('Give --records or --guide')


# --- subcommands --------------------------------------------------------


def cmd_validate(args):
    track = _load_track(args.track)
    surface = args.surface if args.surface is not None else _track.infer_surface(track)
    report = _track.validate(track, surface)
    if report.ok:
        _write('OK')
        return _EXIT_OK
    for line in report.lines():
        _write(line)
    _sys.stderr.write('violation: {}\n'.format(report.clauses()[0]))
    return _EXIT_VIOLATION


def cmd_regions(args):
    track = _load_track(args.track)
    for reg in track.regions:
        sides = ' '.join('/'.join('{}{}'.format('+' if t.forward else '-', t.branch) for t in side)
                         for side in reg.sides)
        _write('region {} cusps={} punctures={} sides={}'.format(reg.index, reg.cusps,
                                                               reg.punctures, sides or '-'))
    return _EXIT_OK


def cmd_split(args):
    track = _load_track(args.track)
    direction = _moves.parse_direction(args.direction)
    if direction == _moves.COLLISION:
        track = _moves.smoothed(_moves.collide(track, args.branch)[0])
    else:
        track = _moves.split(track, args.branch, direction)[0]
    _write(_serialize.dumps(track))
    return _EXIT_OK


def cmd_shift(args):
    _write(_serialize.dumps(_moves.shift(_load_track(args.track), args.branch)[0]))
    return _EXIT_OK


def cmd_collapse(args):
    out = _moves.collapse(_load_track(args.track), args.branch)
    if out is None:
        _sys.stderr.write('violation: collapse-orientation branch {}\n'.format(args.branch))
        return _EXIT_VIOLATION
    _write(_serialize.dumps(out[0]))
    return _EXIT_OK


def cmd_comb(args):
    track = _load_track(args.track)
    if args.nu is not None:
        nu = _load_measure(args.nu)
    else:
        nu = _measures.positive_tangential(track, strict_trigons=True)
        if nu is None:
            raise _InfeasibleError('No tangential measure strict on trigons')
    track, _, _, steps = _moves.comb(track, nu)
    logger.info('combed in %d steps', steps)
    _write(_serialize.dumps(track))
    return _EXIT_OK


def cmd_measures(args):
    track = _load_track(args.track)
    mu = _measures.positive_transverse(track)
    nu = _measures.positive_tangential(track)
    report = _measures.completeness_surrogate(track)
    for name in report._fields:
        _write('{} {}'.format(name, 'yes' if getattr(report, name) else 'no'))
    for label, meas in (('transverse', mu), ('tangential', nu)):
        if meas is None:
            _write('{} none'.format(label))
            continue
        for b in sorted(meas):
            _write('{} {} {}'.format(label, b, _exact(meas[b], args.digits)))
    return _EXIT_OK


def _strip(args):
    track = _load_track(args.track)
    return _strips.enumerate_strip(track, _target(track, args), radius=args.radius, jobs=args.jobs)


def _save_strip(args, strip, cplx=None):
    if not args.h5:
        return
    _create.save_strip(args.h5, args.group + '/strip', strip, surface=_track.infer_surface(strip.base),
               dset_overwrite=True)
    if cplx is not None:
        _create.save_complex(args.h5, args.group + '/complex', cplx, dset_overwrite=True)


def cmd_enumerate_strip(args):
    strip = _strip(args)
    _save_strip(args, strip)
    _write(_serialize.dumps_strip(strip))
    return _EXIT_OK


def cmd_complex(args):
    strip = _strip(args)
    cplx = _cubical.build_complex(strip, accept_truncated=args.accept_truncated)
    _save_strip(args, strip, cplx)
    for dim, count in _cubical.cube_counts(cplx).items():
        _write('cubes {} {}'.format(dim, count))
    _write(_serialize.dumps_complex(cplx))
    return _EXIT_OK


def cmd_links(args):
    strip = _strip(args)
    cplx = _cubical.build_complex(strip, accept_truncated=args.accept_truncated)
    bad = _cubical.non_flag_vertices(cplx, jobs=args.jobs)
    _write('flag {}'.format('yes' if not bad else 'no'))
    for phi in bad:
        _write('non-flag {}'.format(','.join(str(x) for x in phi)))
    return _EXIT_OK if not bad else _EXIT_VIOLATION


def cmd_qi(args):
    args.track = args.strip
    strip = _strip(args)
    qi = _cubical.qi_constants(strip, jobs=args.jobs)
    for name, sq, val in (('lower', qi.lower_squared, qi.lower), ('upper', qi.upper_squared, qi.upper)):
        _write('{} sqrt({}) {}'.format(name, _fraction_str(sq), _decimal_str(float(val), args.digits)))
    return _EXIT_OK


def cmd_bicombe(args):
    track = _load_track(args.track)
    target = _strips.SplittingSequence(track, _load_records(args.records))
    strip = _strips.enumerate_strip(track, target, jobs=args.jobs)
    tms = _bicombing.tight_multi_sequence(track, target, strip)
    for k, st in enumerate(tms.stations):
        _write('station {} phi:{}'.format(k, ','.join(str(x) for x in st.phi)))
    if args.to is not None:
        match = _canonical.isomorphic(tms.stations[-1].track, _load_track(args.to))
        _write('target-match {}'.format('yes' if match else 'no'))
        if not match:
            return _EXIT_VIOLATION
    if args.fellow:
        _write('fellow-traveller {}'.format(_exact(_bicombing.fellow_traveller_constant(strip, args.jobs),
                                                   args.digits)))
    return _EXIT_OK


def cmd_twist(args):
    track = _load_track(args.track)
    measure = _load_measure(args.measure) if args.measure is not None else None
    out = _bicombing.dehn_twist(track, args.connector, measure)
    match = _canonical.isomorphic(out.track, track)
    _write('period {}'.format(out.period))
    _write('sign {}'.format(_bicombing.twist_sign(track, args.connector)))
    _write('canonical-match {}'.format('yes' if match else 'no'))
    if out.measure is not None:
        for b in sorted(out.measure):
            _write('measure {} {}'.format(b, _exact(out.measure[b], args.digits)))
    return _EXIT_OK


def cmd_dual(args):
    duality = _dual.dual_track(_load_track(args.track))
    if args.census:
        for kind, count in _dual.census(duality.track).items():
            _write('{} {}'.format(kind, count))
    else:
        _write(_serialize.dumps(duality.track))
    return _EXIT_OK


def cmd_collapse_lambda(args):
    _, result = _collapse.collapse_pipeline(_load_track(args.track), _load_measure(args.guide))
    for line in result.trace:
        _write(line)
    _write('result steps={}'.format(result.steps))
    _write(_serialize.dumps(result.track))
    return _EXIT_OK


def cmd_stats(args):
    track = _load_track(args.track)
    surface = _track.infer_surface(track)
    _write('surface {}'.format(surface))
    _write('complexity {}'.format(surface.complexity))
    _write('switches {}'.format(len(track.switches)))
    _write('branches {}'.format(len(track.branches)))
    _write('large {}'.format(len(_track.large_branches(track))))
    _write('small {}'.format(len(_track.small_branches(track))))
    _write('mixed {}'.format(len(_track.mixed_branches(track))))
    _write('excess-valence {}'.format(_moves.excess_valence(track)))
    _write('regions {}'.format(' '.join('{}:{}'.format(c, p) for c, p in _track.region_signatures(track))))
    _write('canonical-bytes {}'.format(len(_canonical.canonical_label(track))))
    return _EXIT_OK


def cmd_catalog(args):
    for path in _catalog.write_catalog(args.directory, names=args.names or None):
        _write(path)
    return _EXIT_OK


# --- parser -------------------------------------------------------------


def _strip_options(sub, config):
    sub.add_argument('--records', help='split records from the track to the target track')
    sub.add_argument('--guide', help='guide measure file')
    sub.add_argument('--radius', type=int, default=None,
                     help='cap on |phi| (guides default to {})'.format(config.strip_radius))
    sub.add_argument('--accept-truncated', action='store_true',
                     help='build cubes on a truncated strip, away from its frontier')
    sub.add_argument('--h5', default=None, help='also archive arrays to this HDF5 file')
    sub.add_argument('--group', default='/lazytt', help='HDF5 group for --h5')


def build_parser():
    config = DefaultConfig()
    parser = _argparse.ArgumentParser(prog='lazytt',
                                      description='Exact train-track calculus')
    parser.add_argument('--version', action='version', version='%(prog)s ' + __version__)
    parser.add_argument('--log-level', default='WARNING',
                        choices=['DEBUG', 'INFO', 'WARNING', 'ERROR'])
    parser.add_argument('--jobs', type=int, default=config.jobs)
    parser.add_argument('--digits', type=int, default=config.decimal_digits)
    subs = parser.add_subparsers(dest='command', metavar='command')
    subs.required = True

    sub = subs.add_parser('validate', help='check a track against a surface')
    sub.add_argument('track')
    sub.add_argument('--surface', type=_surface, default=None, help='<genus>,<punctures>')
    sub.set_defaults(func=cmd_validate)

    sub = subs.add_parser('regions', help='complementary regions')
    sub.add_argument('track')
    sub.set_defaults(func=cmd_regions)

    sub = subs.add_parser('split', help='split (R, L) or collide (X) at a large branch')
    sub.add_argument('track')
    sub.add_argument('branch', type=_branch)
    sub.add_argument('direction')
    sub.set_defaults(func=cmd_split)

    for name, func, what in (('shift', cmd_shift, 'mixed'), ('collapse', cmd_collapse, 'small')):
        sub = subs.add_parser(name, help='{} along a {} branch'.format(name, what))
        sub.add_argument('track')
        sub.add_argument('branch', type=_branch)
        sub.set_defaults(func=func)

    sub = subs.add_parser('comb', help='comb a bigon track until generic')
    sub.add_argument('track')
    sub.add_argument('--nu', default=None, help='tangential measure file')
    sub.set_defaults(func=cmd_comb)

    sub = subs.add_parser('measures', help='recurrence witnesses and completeness flags')
    sub.add_argument('track')
    sub.set_defaults(func=cmd_measures)

    for name, func in (('enumerate-strip', cmd_enumerate_strip), ('complex', cmd_complex),
                       ('links', cmd_links)):
        sub = subs.add_parser(name)
        sub.add_argument('track')
        _strip_options(sub, config)
        sub.set_defaults(func=func)

    sub = subs.add_parser('qi', help='quasi-isometry constants of phi')
    sub.add_argument('--strip', required=True, help='base track of the strip')
    _strip_options(sub, config)
    sub.set_defaults(func=cmd_qi)

    sub = subs.add_parser('bicombe', help='tight multi-sequence stations')
    sub.add_argument('track')
    sub.add_argument('records')
    sub.add_argument('--to', default=None, help='expected final track')
    sub.add_argument('--fellow', action='store_true', help='also measure the fellow-traveller constant')
    sub.set_defaults(func=cmd_bicombe)

    sub = subs.add_parser('twist', help='Dehn twist along a twist connector')
    sub.add_argument('track')
    sub.add_argument('connector', type=_branch_list, help='branches, e.g. 0,1')
    sub.add_argument('--measure', default=None)
    sub.set_defaults(func=cmd_twist)

    sub = subs.add_parser('dual', help='dual bigon track')
    sub.add_argument('track')
    sub.add_argument('--census', action='store_true')
    sub.set_defaults(func=cmd_dual)

    sub = subs.add_parser('collapse-lambda', help='dual, sneak up and collapse')
    sub.add_argument('track')
    sub.add_argument('guide')
    sub.set_defaults(func=cmd_collapse_lambda)

    sub = subs.add_parser('stats', help='counts and invariants')
    sub.add_argument('track')
    sub.set_defaults(func=cmd_stats)

    sub = subs.add_parser('catalog', help='write catalog tracks and guides')
    sub.add_argument('directory')
    sub.add_argument('--names', nargs='*', default=None)
    sub.set_defaults(func=cmd_catalog)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else _EXIT_USAGE
    _logging.basicConfig(level=getattr(_logging, args.log_level), stream=_sys.stderr)
    try:
        return args.func(args)
    except _TrackParseError as exc:
        _sys.stderr.write('parse error {}\n'.format(exc))
        return _EXIT_USAGE
    except (_TrackStructureError, OSError) as exc:
        _sys.stderr.write('error: {}\n'.format(exc))
        return _EXIT_USAGE
    except (_PreconditionError, _InfeasibleError, _NotInStripError,
            _TighteningError, _BudgetExceededError, _InvariantViolation) as exc:
        _sys.stderr.write('violation: {}: {}\n'.format(type(exc).__name__, exc))
        return _EXIT_VIOLATION


if __name__ == '__main__':
    _sys.exit(main())
