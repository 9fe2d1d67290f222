#!/usr/bin/env python3
"""
dl - exact computation in Diestel-Leader graphs and lamplighter groups.
Command line interface.
"""

import argparse
import json
import logging
import sys
from typing import Any, Callable, List, Optional

from . import __version__
from .config import SCALES, ConfigManager, get_config_manager
from .dlgraph import GraphParams
from .errors import DLError, ParseError, PreconditionError
from .i18n import _, set_language

logger = logging.getLogger(__name__)

CHECK_FAILED = 1
USAGE_ERROR = 2


def create_subcommand_parser(config_manager: ConfigManager) -> argparse.ArgumentParser:
    """Create argument parser for subcommands."""
    parser = argparse.ArgumentParser(
        prog='dl',
        description=_('Exact computation in Diestel-Leader graphs and lamplighter groups'),
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog='''
examples:
  dl ball --d 2 --q 2 --radius 3 --format dot
  dl dist --d 2 --q 2 --from o --to "[(1; 0:1), (-1)]"
  dl eval --q 2 --word "t^3 (at) t^-2 (at)^-2 t^-1"
  dl dynamics --q 2 --g "(at)" --x '{"side": 0, "head": {"-1": 1}}' --n 15
  dl verify --suite all --seed 7 --scale desk
        ''')
    parser.add_argument('--version', action='version', version=f'%(prog)s {__version__}')
    parser.add_argument('--pretty', action='store_true', help=_('Pretty-print JSON output'))
    parser.add_argument('-v', '--verbose', action='store_true', help=_('Log progress to stderr'))

    subparsers = parser.add_subparsers(dest='command', help=_('Available commands'))

    def graph_options(sub, d: Optional[int] = None):
        if d is None:
            sub.add_argument('--d', type=int, default=2, help=_('Number of trees'))
        sub.add_argument('--q', type=int, default=2, help=_('Branching number (states per lamp)'))

    ball_parser = subparsers.add_parser('ball', help=_('Build the ball around a vertex'))
    graph_options(ball_parser)
    ball_parser.add_argument('--center', default='o', help=_('Center vertex (default: origin)'))
    ball_parser.add_argument('--radius', type=int, required=True, help=_('Ball radius'))
    ball_parser.add_argument('--format', choices=['json', 'dot'], default='json',
                             help=_('Output format'))

    for name, help_text in (('dist', 'Distance between two vertices'),
                            ('geodesics', 'List every geodesic between two vertices')):
        sub = subparsers.add_parser(name, help=_(help_text))
        graph_options(sub)
        sub.add_argument('--from', dest='source', required=True, help=_('Source vertex'))
        sub.add_argument('--to', dest='target', required=True, help=_('Target vertex'))

    rewrite_parser = subparsers.add_parser('rewrite', help=_('Rewrite an edge-type word'))
    graph_options(rewrite_parser)
    rewrite_parser.add_argument('--from', dest='source', default='o', help=_('Base vertex of the path'))
    rewrite_parser.add_argument('--path', required=True, help=_('Edge-type word, e.g. "0(1)-1 1(0)-0"'))
    rewrite_parser.add_argument('--op', choices=['pass', 'commute', 'shorten'], default='pass',
                                help=_('Rewrite operation'))
    rewrite_parser.add_argument('--index', type=int, default=0,
                                help=_('Index of the first move of the pair'))

    eval_parser = subparsers.add_parser('eval', help=_('Evaluate a generator word in the lamplighter group'))
    graph_options(eval_parser, d=2)
    eval_parser.add_argument('--word', required=True, help=_('Generator word, e.g. "t^3 (at) t^-2"'))

    mul_parser = subparsers.add_parser('mul', help=_('Multiply two generator words'))
    graph_options(mul_parser, d=2)
    mul_parser.add_argument('--g', required=True, help=_('Generator word, e.g. "t^3 (at) t^-2"'))
    mul_parser.add_argument('--h', required=True, help=_('Generator word, e.g. "t^3 (at) t^-2"'))

    order_parser = subparsers.add_parser('order', help=_('Order of a group element'))
    graph_options(order_parser, d=2)
    order_parser.add_argument('--g', required=True, help=_('Generator word, e.g. "t^3 (at) t^-2"'))

    classify_parser = subparsers.add_parser('classify', help=_('Classify a boundary point of DL_2(q)'))
    graph_options(classify_parser, d=2)
    source = classify_parser.add_mutually_exclusive_group(required=True)
    source.add_argument('--x', help=_('Boundary point JSON'))
    source.add_argument('--ray', help=_('Ray descriptor JSON or file'))

    act_parser = subparsers.add_parser('act', help=_('Act on a boundary point by a group element'))
    graph_options(act_parser, d=2)
    act_parser.add_argument('--g', required=True, help=_('Generator word, e.g. "t^3 (at) t^-2"'))
    act_parser.add_argument('--x', required=True, help=_('Boundary point JSON'))

    ginf_parser = subparsers.add_parser('ginf', help=_('Limit point g^inf of a group element'))
    graph_options(ginf_parser, d=2)
    ginf_parser.add_argument('--g', required=True, help=_('Generator word, e.g. "t^3 (at) t^-2"'))

    dynamics_parser = subparsers.add_parser('dynamics', help=_('North-south dynamics agreement radii'))
    graph_options(dynamics_parser, d=2)
    dynamics_parser.add_argument('--g', required=True, help=_('Generator word, e.g. "t^3 (at) t^-2"'))
    dynamics_parser.add_argument('--x', required=True, help=_('Boundary point JSON'))
    dynamics_parser.add_argument('--n', type=int, default=15, help=_('Number of iterations'))

    witness_parser = subparsers.add_parser('witness', help=_('Build topological witnesses'))
    witness_parser.add_argument('--kind', choices=['nonhausdorff', 't1', 'indiscrete'], required=True,
                                help=_('Witness kind'))
    witness_parser.add_argument('--d', type=int, default=None, help=_('Number of trees'))
    witness_parser.add_argument('--q', type=int, default=2, help=_('Branching number (states per lamp)'))
    witness_parser.add_argument('--x', help=_('Boundary point JSON'))
    witness_parser.add_argument('--y', help=_('Boundary point JSON'))
    witness_parser.add_argument('--k', type=int, default=1, help=_('Basis scale k'))
    witness_parser.add_argument('--eps', type=float, default=0.5, help=_('Neighborhood epsilon in (0, 1)'))
    witness_parser.add_argument('--gamma', help=_('Ray descriptor JSON or file'))
    witness_parser.add_argument('--gamma2', help=_('Ray descriptor JSON or file'))
    witness_parser.add_argument('--n', type=int, default=6, help=_('Number of iterations'))

    verify_parser = subparsers.add_parser('verify', help=_('Run the acceptance property suites'))
    verify_parser.add_argument('--suite', action='append', default=None, help=_('Suite name or "all"'))
    verify_parser.add_argument('--seed', type=int, default=None, help=_('Random seed'))
    verify_parser.add_argument('--scale', choices=list(SCALES), default=config_manager.get_scale(),
                               help=_('Verification scale'))
    verify_parser.add_argument('--timings', action='store_true', help=_('Include wall times in the report'))

    config_parser = subparsers.add_parser('config', help=_('Show or change settings'))
    config_parser.add_argument('action', choices=['show', 'set', 'reset'], help=_('Configuration action'))
    config_parser.add_argument('key', nargs='?', help=_('Setting name'))
    config_parser.add_argument('value', nargs='?', help=_('Setting value'))

    return parser


def emit(data: Any, args) -> None:
    """Write one JSON document to stdout."""
    if args.pretty:
        print(json.dumps(data, indent=2, ensure_ascii=False))
    else:
        print(json.dumps(data, separators=(',', ':'), ensure_ascii=False))


def parse_arg(flag: str, parse: Callable, *values):
    """Run a parser on a flag's value, naming the flag in any error."""
    if values and values[0] is None:
        raise ParseError(_('missing required option {}').format(flag))
    try:
        return parse(*values)
    except (DLError, ValueError, KeyError, TypeError) as e:
        raise ParseError(f'{flag}: {e}') from e


def _json(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f'invalid JSON: {e}') from e


def _graph_params(args, d: Optional[int] = None) -> GraphParams:
    d = args.d if d is None else d
    return parse_arg('--d/--q', GraphParams, d, args.q)


def _vertex(flag: str, text: str, params: GraphParams):
    from .dlgraph import parse_dl_vertex
    return parse_arg(flag, parse_dl_vertex, text, params)


def _element(flag: str, text: str, q: int):
    from .lamplighter import eval_word
    return parse_arg(flag, eval_word, text, q)


def _point(flag: str, text: Optional[str], q: int):
    from .boundary2 import BoundaryPoint
    return parse_arg(flag, lambda t: BoundaryPoint.from_dict(_json(t), q), text)


def _descriptor(flag: str, text: Optional[str], params: GraphParams):
    from .boundary_d import parse_descriptor
    return parse_arg(flag, parse_descriptor, text, params)


def handle_ball_command(args, config_manager: ConfigManager) -> int:
    """Handle the 'ball' command."""
    from .dlgraph import ball_graph, sorted_vertices, to_dot

    params = _graph_params(args)
    limit = config_manager.get_max_ball_radius()
    if not 0 <= args.radius <= limit:
        raise PreconditionError('--radius: ' + _('Ball radius {} exceeds max_ball_radius {}').format(
            args.radius, limit))
    center = _vertex('--center', args.center, params)
    graph = ball_graph(center, args.radius, params)
    if args.format == 'dot':
        print(to_dot(graph))
        return 0
    distances = dict(graph.nodes(data='dist'))
    emit({'center': center.to_dict(), 'radius': args.radius, 'size': len(distances),
          'vertices': [{'vertex': v.to_dict(), 'dist': distances[v]}
                       for v in sorted_vertices(distances)]}, args)
    return 0


def handle_dist_command(args, config_manager: ConfigManager) -> int:
    """Handle the 'dist' command."""
    from .dlgraph import bfs_distance, projection_lower_bound, projection_upper_bound
    from .errors import CapExceededError

    params = _graph_params(args)
    v = _vertex('--from', args.source, params)
    w = _vertex('--to', args.target, params)
    cap = config_manager.get_radius_cap()
    distance = bfs_distance(v, w, params, radius_cap=cap)
    if distance is None:
        raise CapExceededError('distance', cap)
    logger.debug('projection bounds %d <= %d <= %d', projection_lower_bound(v, w), distance,
                 projection_upper_bound(v, w))
    emit(distance, args)
    return 0


def handle_geodesics_command(args, config_manager: ConfigManager) -> int:
    """Handle the 'geodesics' command."""
    from .paths import enumerate_geodesics, turns_per_tree

    params = _graph_params(args)
    v = _vertex('--from', args.source, params)
    w = _vertex('--to', args.target, params)
    found = enumerate_geodesics(v, w, params, cap=config_manager.get_geodesic_cap())
    emit({'distance': len(found[0]), 'count': len(found),
          'geodesics': [{'word': p.word(), 'turns': list(turns_per_tree(p))} for p in found]}, args)
    return 0


def handle_rewrite_command(args, config_manager: ConfigManager) -> int:
    """Handle the 'rewrite' command."""
    from .paths import Path, commute_adjacent, parse_word, reducible_pairs, shorten_at, shorten_pass

    params = _graph_params(args)
    base = _vertex('--from', args.source, params)
    path = parse_arg('--path', lambda text: Path(base, parse_word(text), params), args.path)
    if args.op == 'pass':
        result = shorten_pass(path)
    else:
        rewrite = commute_adjacent if args.op == 'commute' else shorten_at
        result = parse_arg('--index', rewrite, path, args.index)
    out = {'input': path.word(), 'length': len(path),
           'reducible': [list(pair) for pair in reducible_pairs(path)]}
    if result is None:
        out.update({'output': None, 'applicable': False})
    else:
        out.update({'output': result.word(), 'output_length': len(result), 'applicable': True,
                    'endpoint_preserved': result.end == path.end, 'end': result.end.to_dict()})
    emit(out, args)
    return 0 if result is None or result.end == path.end else CHECK_FAILED


def handle_eval_command(args, config_manager: ConfigManager) -> int:
    """Handle the 'eval' command."""
    emit(_element('--word', args.word, args.q).to_dict(), args)
    return 0


def handle_mul_command(args, config_manager: ConfigManager) -> int:
    """Handle the 'mul' command."""
    from .lamplighter import multiply

    g = _element('--g', args.g, args.q)
    h = _element('--h', args.h, args.q)
    emit(multiply(g, h, args.q).to_dict(), args)
    return 0


def handle_order_command(args, config_manager: ConfigManager) -> int:
    """Handle the 'order' command."""
    from .lamplighter import format_order, order

    emit(format_order(order(_element('--g', args.g, args.q), args.q)), args)
    return 0


def handle_classify_command(args, config_manager: ConfigManager) -> int:
    """Handle the 'classify' command."""
    from .boundary2 import classify, rebase_ray

    if args.x is not None:
        emit(classify(_point('--x', args.x, args.q)).to_dict(), args)
        return 0
    params = _graph_params(args, d=2)
    ray = _descriptor('--ray', args.ray, params)
    x, certificate = parse_arg('--ray', rebase_ray, ray, config_manager.get_ray_geodesic_cap(2))
    out = classify(x).to_dict()
    out.update({'point': x.to_dict(), 'certificate': certificate.to_dict()})
    emit(out, args)
    return 0 if certificate.ok else CHECK_FAILED


def handle_act_command(args, config_manager: ConfigManager) -> int:
    """Handle the 'act' command."""
    from .boundary2 import act

    g = _element('--g', args.g, args.q)
    x = _point('--x', args.x, args.q)
    emit(act(g, x, args.q).to_dict(), args)
    return 0


def handle_ginf_command(args, config_manager: ConfigManager) -> int:
    """Handle the 'ginf' command."""
    from .boundary2 import power_infinity

    g = _element('--g', args.g, args.q)
    emit(parse_arg('--g', power_infinity, g, args.q).to_dict(), args)
    return 0


def handle_dynamics_command(args, config_manager: ConfigManager) -> int:
    """Handle the 'dynamics' command."""
    from .boundary2 import dynamics_report

    g = _element('--g', args.g, args.q)
    x = _point('--x', args.x, args.q)
    if args.n < 1:
        raise PreconditionError('--n: ' + _('{} must be positive').format('n'))
    rows = parse_arg('--g/--x', dynamics_report, g, x, args.n, args.q)
    emit({'rows': [row.to_dict() for row in rows], 'ok': all(row.holds for row in rows)}, args)
    return 0 if all(row.holds for row in rows) else CHECK_FAILED


def handle_witness_command(args, config_manager: ConfigManager) -> int:
    """Handle the 'witness' command."""
    from .boundary2 import non_hausdorff_witness, separation_witness
    from .boundary_d import indiscrete_witness

    if not 0 < args.eps < 1:
        raise PreconditionError('--eps: ' + _('epsilon must lie in (0, 1)'))
    if args.kind == 'indiscrete':
        params = _graph_params(args, d=args.d if args.d is not None else 3)
        gamma = _descriptor('--gamma', args.gamma, params)
        gamma2 = _descriptor('--gamma2', args.gamma2, params)
        witness = parse_arg('--n', indiscrete_witness, gamma, gamma2, args.n,
                            config_manager.get_ray_geodesic_cap(params.d))
        emit(witness.to_dict(), args)
        return 0 if witness.ok else CHECK_FAILED

    x = _point('--x', args.x, args.q)
    y = _point('--y', args.y, args.q)
    if args.kind == 'nonhausdorff':
        z = parse_arg('--x/--y', non_hausdorff_witness, x, y, args.k, args.q)
        emit(z.to_dict(), args)
    else:
        emit(parse_arg('--x/--y', separation_witness, x, y).to_dict(), args)
    return 0


def handle_verify_command(args, config_manager: ConfigManager) -> int:
    """Handle the 'verify' command."""
    from .verify import SUITES, run_suites

    names = args.suite or ['all']
    for name in names:
        if name != 'all' and name not in SUITES:
            raise ParseError('--suite: ' + _('Unknown suite: {}').format(name))
    seed = config_manager.get_seed(args.seed)
    reports = run_suites(names, seed, args.scale, timings=args.timings)
    ok = all(report.ok for report in reports)
    emit({'seed': seed, 'scale': args.scale, 'ok': ok,
          'suites': [report.to_dict() for report in reports]}, args)
    return 0 if ok else CHECK_FAILED


def handle_config_command(args, config_manager: ConfigManager) -> int:
    """Handle the 'config' command."""
    if args.action == 'reset':
        config_manager.reset_to_defaults()
        logger.info(_('Configuration reset to defaults'))
    elif args.action == 'set':
        if args.key is None or args.value is None:
            raise ParseError(_('missing required option {}').format('KEY VALUE'))
        try:
            config_manager.set_value(args.key, args.value)
        except KeyError:
            raise ParseError(_('Unknown setting: {}').format(args.key)) from None
        except ValueError as e:
            raise ParseError(f'{args.key}: {e}') from e
    emit(config_manager.as_dict(), args)
    return 0


HANDLERS = {
    'ball': handle_ball_command,
    'dist': handle_dist_command,
    'geodesics': handle_geodesics_command,
    'rewrite': handle_rewrite_command,
    'eval': handle_eval_command,
    'mul': handle_mul_command,
    'order': handle_order_command,
    'classify': handle_classify_command,
    'act': handle_act_command,
    'ginf': handle_ginf_command,
    'dynamics': handle_dynamics_command,
    'witness': handle_witness_command,
    'verify': handle_verify_command,
    'config': handle_config_command,
}


def run(argv: List[str], config_manager: Optional[ConfigManager] = None) -> int:
    """Run one dl command and return its exit code."""
    if config_manager is None:
        config_manager = get_config_manager()
    set_language(config_manager.get_language())

    parser = create_subcommand_parser(config_manager)
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else USAGE_ERROR

    logging.basicConfig(stream=sys.stderr, format='%(levelname)s %(name)s: %(message)s',
                        level=logging.DEBUG if args.verbose else logging.WARNING)
    if args.command is None:
        parser.print_help(sys.stderr)
        return USAGE_ERROR

    try:
        if getattr(args, 'q', None) is not None and args.q < 2:
            raise PreconditionError('--q: ' + _('q must be at least 2, got {}').format(args.q))
        return HANDLERS[args.command](args, config_manager)
    except DLError as e:
        print(f"{_('Error')}: {e}", file=sys.stderr)
        return USAGE_ERROR


def main():
    """Main entry point for dl CLI."""
    try:
        sys.exit(run(sys.argv[1:]))
    except KeyboardInterrupt:
        print(_('Operation cancelled by user.'), file=sys.stderr)
        sys.exit(1)


if __name__ == '__main__':
    main()
